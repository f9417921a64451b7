"""Non-optimal symmetric LOCO codes over GF(4), written via GF(8) columns."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .base import Context, FamilyCodec


@dataclass(eq=False)
class NsLoco(FamilyCodec):
    """Forbids alpha^2 0 alpha^2; each symbol carries one extra selection bit."""

    name = "ns"
    q = 4
    context_len = 1
    rate_norm = 3.0

    def patterns(self) -> list[tuple[int, ...]]:
        return [(3, 0, 3)]

    def defined_cardinalities(self) -> dict[int, Fraction]:
        return {-1: Fraction(1, 3), 0: Fraction(1), 1: Fraction(4)}

    def recurse(self, m: int) -> Fraction:
        return 4 * self.N(m - 1) - self.N(m - 2) + 3 * self.N(m - 3)

    @staticmethod
    def merging(a: int, ctx: Context) -> int:
        return int(ctx[0] == 3 and a >= 1)

    def contribution(self, i: int, a: int, ctx: Context) -> Fraction:
        y1 = self.merging(a, ctx)
        return (a - y1) * self.N(i) + 3 * y1 * self.N(i - 1)

    def bridge(self, prev_tail: Sequence[int], next_head: Sequence[int]) -> tuple[int | None, ...]:
        if prev_tail and next_head and prev_tail[-1] == 1 and next_head[0] == 1:
            return (2,)
        return (1,)

    def chunk_length(self, m: int) -> int:
        """Message bits, one selection bit per symbol, one for the bridge."""
        return self.message_length(m) + m + 1

    def code_rate(self, m: int) -> float:
        return self.message_length(m) / (m + 1) + 1

    def capacity(self) -> tuple[float, float]:
        c, _ = super().capacity()
        return c + 1, (c + 1) / self.rate_norm
