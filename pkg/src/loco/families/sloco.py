"""Binary symmetric LOCO codes: no isolated runs of length <= x."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..alphabet import Word
from .base import Context, FamilyCodec, _require_int


@dataclass(eq=False)
class SLoco(FamilyCodec):
    """Forbids 0 1^k 0 and 1 0^k 1 for 1 <= k <= x."""

    x: int = 1

    name = "sloco"
    q = 2
    offset = 1
    removed = 2

    def __post_init__(self) -> None:
        if self.x < 1:
            raise ValueError("x must be >= 1")

    @property
    def context_len(self) -> int:  # type: ignore[override]
        return self.x + 1

    @property
    def bridge_len(self) -> int:  # type: ignore[override]
        return self.x

    def patterns(self) -> list[tuple[int, ...]]:
        out = []
        for k in range(1, self.x + 1):
            out.append((0,) + (1,) * k + (0,))
            out.append((1,) + (0,) * k + (1,))
        return out

    def defined_cardinalities(self) -> dict[int, Fraction]:
        return {k: Fraction(2) for k in range(1 - self.x, 2)}

    def recurse(self, m: int) -> Fraction:
        return self.N(m - 1) + self.N(m - self.x - 1)

    def merging(self, a: int, ctx: Context) -> tuple[int, int]:
        """(y1, y2) for level ``a`` after ``ctx = (c_{i+1}, c_{i+2}, ...)``."""
        y1 = 0
        if a == 1:
            # c_{i+k+1} ... c_i = 0 1^{k+1} for some 1 <= k <= x
            for k in range(1, self.x + 1):
                if all(ctx[j] == 1 for j in range(k)) and ctx[k] == 0:
                    y1 = 1
                    break
        y2 = int(a == 1 and ctx[0] == 1 and y1 == 0)
        return y1, y2

    def contribution(self, i: int, a: int, ctx: Context) -> Fraction:
        y1, y2 = self.merging(a, ctx)
        return Fraction(a - y1, 2) * self.N(i + 1 - y2 * self.x)

    def index_old_rule(self, c: Word | Sequence[int]) -> int:
        """Earlier formulation: half of a_{m-1} N(m) plus a_i N(i+1-x) for i < m-1."""
        levels = c.levels if isinstance(c, Word) else tuple(c)
        self._check(levels)
        m = len(levels)
        total = levels[0] * self.N(m) if m else Fraction(0)
        for pos, a in enumerate(levels[1:], start=1):
            total += a * self.N(m - 1 - pos + 1 - self.x)
        return _require_int(total / 2, "old-rule index")

    def bridge(self, prev_tail: Sequence[int], next_head: Sequence[int]) -> tuple[int | None, ...]:
        return (None,) * self.x

    def clocking_exclusions(self, m: int) -> tuple[list[Word], int]:
        return [Word(self.alphabet, (0,) * m), Word(self.alphabet, (1,) * m)], self.offset
