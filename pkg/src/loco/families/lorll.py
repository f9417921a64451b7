"""Binary (d, infinity) run-length-limited LOCO codes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..alphabet import Word
from .base import Context, FamilyCodec


@dataclass(eq=False)
class LoRll(FamilyCodec):
    """Every pair of 1s is separated by at least ``d`` zeros."""

    d: int = 1

    name = "lorll"
    q = 2
    offset = 1
    removed = 1

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("d must be >= 1")

    @property
    def bridge_len(self) -> int:  # type: ignore[override]
        return self.d

    def patterns(self) -> list[tuple[int, ...]]:
        return [(1,) + (0,) * k + (1,) for k in range(self.d)]

    def defined_cardinalities(self) -> dict[int, Fraction]:
        return {k: Fraction(1) for k in range(-self.d, 1)}

    def recurse(self, m: int) -> Fraction:
        return self.N(m - 1) + self.N(m - self.d - 1)

    def contribution(self, i: int, a: int, ctx: Context) -> Fraction:
        return a * self.N(i)

    def bridge(self, prev_tail: Sequence[int], next_head: Sequence[int]) -> tuple[int | None, ...]:
        return (0,) * self.d

    def clocking_exclusions(self, m: int) -> tuple[list[Word], int]:
        return [Word(self.alphabet, (0,) * m)], self.offset
