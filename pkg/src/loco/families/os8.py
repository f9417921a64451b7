"""Optimal-symmetric LOCO codes over GF(8) for three-track TDMR."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .base import Context, FamilyCodec


@dataclass(eq=False)
class OsLoco(FamilyCodec):
    """Forbids the two isolated-centre patterns 0 alpha 0 and alpha^6 alpha^4 alpha^6."""

    name = "os"
    q = 8
    context_len = 2
    rate_norm = 3.0

    def patterns(self) -> list[tuple[int, ...]]:
        return [(0, 2, 0), (7, 5, 7)]

    def defined_cardinalities(self) -> dict[int, Fraction]:
        return {-2: Fraction(1, 36), -1: Fraction(1, 6), 0: Fraction(1), 1: Fraction(8)}

    def recurse(self, m: int) -> Fraction:
        return 8 * self.N(m - 1) - self.N(m - 2) + 6 * self.N(m - 3)

    @staticmethod
    def merging(a: int, ctx: Context) -> tuple[int, int, int]:
        c1, c2 = ctx
        y1 = int(c2 == 0 and c1 == 2 and a != 0)
        y2 = int((c1 == 0 and a >= 3) or (c1 == 7 and a in (6, 7)))
        theta = int(a != 0)
        return y1, y2, theta

    def contribution(self, i: int, a: int, ctx: Context) -> Fraction:
        y1, y2, theta = self.merging(a, ctx)
        N = self.N
        g = (a - y1 - Fraction(y2, 2)) * N(i)
        if theta and not y1:
            g += (3 * y2 - Fraction(1, 2)) * N(i - 1) + 3 * N(i - 2)
        return g

    def bridge(self, prev_tail: Sequence[int], next_head: Sequence[int]) -> tuple[int | None, ...]:
        if prev_tail and next_head and prev_tail[-1] == 3 and next_head[0] == 3:
            return (4,)
        return (3,)
