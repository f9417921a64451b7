"""Optimal-plus LOCO codes over GF(8): symmetric plus plus-isolation patterns."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .base import Context, FamilyCodec

# Levels whose middle bit is 0 (low) or 1 (high) in the column mapping.
LOW = frozenset({0, 1, 4, 5})
HIGH = frozenset({2, 3, 6, 7})


def _at(seq: Sequence[int], k: int) -> int | None:
    return seq[k] if -len(seq) <= k < len(seq) else None


@dataclass(eq=False)
class OpLoco(FamilyCodec):
    """Forbids x alpha y for x, y low and x alpha^4 y for x, y high."""

    name = "op"
    q = 8
    context_len = 2
    rate_norm = 3.0

    def patterns(self) -> list[tuple[int, ...]]:
        low = sorted(LOW)
        high = sorted(HIGH)
        return [(x, 2, y) for x in low for y in low] + [(x, 5, y) for x in high for y in high]

    def defined_cardinalities(self) -> dict[int, Fraction]:
        return {0: Fraction(2), 1: Fraction(8)}

    def recurse(self, m: int) -> Fraction:
        return 7 * self.N(m - 1) + 4 * self.N(m - 2)

    @staticmethod
    def merging(a: int, ctx: Context) -> tuple[int, int, int]:
        c1, c2 = ctx
        y1 = int(
            (c2 in LOW and c1 == 2 and a in (2, 3))
            or (c2 in HIGH and c1 == 5 and a in (4, 5))
        )
        y2 = int(c2 in LOW and c1 == 2 and a in (6, 7))
        y3 = 0
        if not (y1 or y2):
            y3 = int((c1 in LOW and a >= 3) or (c1 in HIGH and a in (6, 7)))
        return y1, y2, y3

    def contribution(self, i: int, a: int, ctx: Context) -> Fraction:
        y1, y2, y3 = self.merging(a, ctx)
        return Fraction(a - 2 * y1 - 4 * y2 - y3, 8) * self.N(i + 1) + Fraction(y3, 2) * self.N(i)

    def bridge(self, prev_tail: Sequence[int], next_head: Sequence[int]) -> tuple[int | None, ...]:
        p1, p0 = _at(prev_tail, -2), _at(prev_tail, -1)
        n0, n1 = _at(next_head, 0), _at(next_head, 1)
        # A plus-isolation pattern would close on either side of any written column.
        if (p1 in LOW and p0 == 2 and n0 == 5 and n1 in HIGH) or (
            p1 in HIGH and p0 == 5 and n0 == 2 and n1 in LOW
        ):
            return (None,)
        if (
            (n0 == 5 and n1 in HIGH)
            or (p1 in HIGH and p0 == 5)
            or (p0 == 5 and n0 is not None and n0 != 2)
            or (p0 == 3 and n0 == 3)
        ):
            return (4,)
        return (3,)
