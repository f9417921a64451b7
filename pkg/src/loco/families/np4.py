"""Non-optimal plus LOCO codes over GF(4), written via GF(8) columns."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .base import Context, FamilyCodec

LOW = frozenset({0, 1})
HIGH = frozenset({2, 3})


def _at(seq: Sequence[int], k: int) -> int | None:
    return seq[k] if -len(seq) <= k < len(seq) else None


@dataclass(eq=False)
class NpLoco(FamilyCodec):
    """Forbids x alpha^2 y for x, y low and x 0 y for x, y high."""

    name = "np"
    q = 4
    context_len = 2
    rate_norm = 3.0

    def patterns(self) -> list[tuple[int, ...]]:
        low, high = sorted(LOW), sorted(HIGH)
        return [(x, 3, y) for x in low for y in low] + [(x, 0, y) for x in high for y in high]

    def defined_cardinalities(self) -> dict[int, Fraction]:
        return {0: Fraction(2), 1: Fraction(4)}

    def recurse(self, m: int) -> Fraction:
        return 3 * self.N(m - 1) + 2 * self.N(m - 2)

    @staticmethod
    def merging(a: int, ctx: Context) -> tuple[int, int]:
        c1, c2 = ctx
        y1 = int(c2 in LOW and c1 == 3 and a in (2, 3))
        y2 = int(not y1 and c1 in HIGH and a >= 1)
        return y1, y2

    def contribution(self, i: int, a: int, ctx: Context) -> Fraction:
        y1, y2 = self.merging(a, ctx)
        return Fraction(a - 2 * y1 - y2, 4) * self.N(i + 1) + Fraction(y2, 2) * self.N(i)

    def bridge(self, prev_tail: Sequence[int], next_head: Sequence[int]) -> tuple[int | None, ...]:
        p1, p0 = _at(prev_tail, -2), _at(prev_tail, -1)
        n0, n1 = _at(next_head, 0), _at(next_head, 1)
        if (p1 in LOW and p0 == 3 and n0 == 0 and n1 in HIGH) or (
            p1 in HIGH and p0 == 0 and n0 == 3 and n1 in LOW
        ):
            return (None,)
        if (
            (n0 == 0 and n1 in HIGH)
            or (p1 in HIGH and p0 == 0)
            or (p0 == 0 and n0 is not None and n0 != 3)
            or (p0 == 2 and n0 == 2)
        ):
            return (1,)
        return (2,)

    def chunk_length(self, m: int) -> int:
        """Message bits plus one selection bit per symbol; the bridge carries none."""
        return self.message_length(m) + m

    def code_rate(self, m: int) -> float:
        return (self.message_length(m) + m) / (m + 1)

    def capacity(self) -> tuple[float, float]:
        c, _ = super().capacity()
        return c + 1, (c + 1) / self.rate_norm
