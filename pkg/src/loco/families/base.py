"""Shared machinery for the closed-form code families.

Each family supplies its forbidden set, its cardinality recursion with the
defined (boundary) values, and a per-symbol contribution rule.  The base
class turns those into exact indexing, greedy encoding, decoding with
frame-error detection, and rate bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import ClassVar, Sequence

from ..alphabet import Alphabet, Word
from ..generic import (
    REJECT,
    ConstraintAutomaton,
    ConstraintViolation,
    ForbiddenSet,
    build_automaton,
    capacity as generic_capacity,
)

__all__ = [
    "FamilyCodec",
    "FrameError",
    "IndexOverflow",
    "ConstraintViolation",
    "as_exact",
    "bits_to_int",
    "int_to_bits",
]

Context = tuple  # (c_{i+1}, c_{i+2}, ...) with None past the left edge


class FrameError(ValueError):
    """A read codeword cannot be turned back into a message."""


class IndexOverflow(FrameError):
    """Decoded index lies outside the message range."""


def as_exact(value: Fraction | int) -> int | Fraction:
    """Collapse integral fractions to ``int`` so the hot path stays cheap."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


def _require_int(value: int | Fraction, what: str) -> int:
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise ArithmeticError(f"{what} is not integral: {value}")
        value = int(value)
    return value


def bits_to_int(bits: Sequence[int] | str) -> int:
    """Binary to decimal with ``bits[0]`` as the most significant bit."""
    g = 0
    for b in bits:
        b = int(b)
        if b not in (0, 1):
            raise ValueError(f"bad bit {b!r}")
        g = (g << 1) | b
    return g


def int_to_bits(g: int, s: int) -> str:
    if g < 0 or g >> s:
        raise ValueError(f"{g} does not fit in {s} bits")
    return format(g, f"0{s}b") if s else ""


@dataclass(eq=False)
class FamilyCodec:
    """Base class; subclasses fill in the family-specific hooks."""

    name: ClassVar[str] = ""
    q: ClassVar[int] = 2
    # Number of preceding symbols c_{i+1}, c_{i+2}, ... a contribution depends on.
    context_len: ClassVar[int] = 0
    # Clocking-excluded codewords shift messages up by this much.
    offset: ClassVar[int] = 0
    # Codewords removed for self-clocking (r in s = floor(log2(N - r))).
    removed: ClassVar[int] = 0
    # Divisor for the normalised rate of the written stream.
    rate_norm: ClassVar[float] = 1.0

    _card: dict[int, Fraction] = field(default_factory=dict, init=False, repr=False)
    _contrib: dict[tuple, int | Fraction] = field(default_factory=dict, init=False, repr=False)
    _automaton: ConstraintAutomaton | None = field(default=None, init=False, repr=False)

    # ----- hooks -------------------------------------------------------
    def patterns(self) -> list[tuple[int, ...]]:
        raise NotImplementedError

    def defined_cardinalities(self) -> dict[int, Fraction]:
        raise NotImplementedError

    def recurse(self, m: int) -> Fraction:
        """N(m) from smaller indices, for m above the defined range."""
        raise NotImplementedError

    def contribution(self, i: int, a: int, ctx: Context) -> Fraction:
        """g_i for level ``a`` at significance ``i`` after context ``ctx``."""
        raise NotImplementedError

    def bridge(self, prev_tail: Sequence[int], next_head: Sequence[int]) -> tuple[int | None, ...]:
        raise NotImplementedError

    def clocking_exclusions(self, m: int) -> tuple[list[Word], int]:
        return [], 0

    def code_rate(self, m: int) -> float:
        """Input bits per written symbol, bridging included."""
        return self.message_length(m) / (m + self.bridge_len)

    bridge_len: ClassVar[int] = 1

    # ----- derived -----------------------------------------------------
    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.q)

    @property
    def forbidden(self) -> ForbiddenSet:
        return ForbiddenSet(self.alphabet, tuple(self.patterns()))

    @property
    def automaton(self) -> ConstraintAutomaton:
        if self._automaton is None:
            self._automaton = build_automaton(self.forbidden)
        return self._automaton

    @property
    def min_index(self) -> int:
        return min(self.defined_cardinalities())

    def N(self, m: int) -> Fraction:
        """Exact cardinality including the fractional defined values."""
        if not self._card:
            self._card.update({k: Fraction(v) for k, v in self.defined_cardinalities().items()})
        if m < self.min_index:
            raise ValueError(f"{self.name}: cardinality undefined below {self.min_index}")
        if m not in self._card:
            top = max(self._card)
            for k in range(top + 1, m + 1):
                self._card[k] = self.recurse(k)
        return self._card[m]

    def cardinality(self, m: int) -> int | Fraction:
        """N(m); integral for every m >= 1, fractional only at defined indices."""
        return as_exact(self.N(m))

    def message_length(self, m: int) -> int:
        usable = _require_int(self.N(m), f"N({m})") - self.removed
        if usable < 2:
            raise ValueError(f"{self.name}: m={m} leaves fewer than 2 usable codewords")
        return usable.bit_length() - 1

    def _g(self, i: int, a: int, ctx: Context) -> int | Fraction:
        key = (i, a, ctx)
        v = self._contrib.get(key)
        if v is None:
            v = as_exact(self.contribution(i, a, ctx))
            self._contrib[key] = v
        return v

    @staticmethod
    def _ctx(levels: Sequence[int], pos: int, k: int) -> Context:
        # levels is leftmost-first; pos is the list position of c_i.
        return tuple(levels[pos - j] if pos - j >= 0 else None for j in range(1, k + 1))

    def _check(self, levels: Sequence[int]) -> None:
        if not self.automaton.accepts(levels):
            raise ConstraintViolation(f"{self.name}: word violates the constraint")

    def index(self, c: Word | Sequence[int]) -> int:
        """Lexicographic index of a codeword, summed symbol by symbol."""
        levels = c.levels if isinstance(c, Word) else tuple(c)
        for a in levels:
            self.alphabet.check(a)
        self._check(levels)
        m = len(levels)
        g = 0
        for pos, a in enumerate(levels):
            i = m - 1 - pos
            v = self._g(i, a, self._ctx(levels, pos, self.context_len))
            v = _require_int(v, f"contribution at i={i}")
            if v < 0:
                raise ArithmeticError(f"negative contribution at i={i}")
            g += v
        return g

    def codeword(self, g: int, m: int) -> Word:
        """Greedy unranking: highest allowed level whose contribution fits."""
        total = _require_int(self.N(m), f"N({m})") if m >= 1 else 1
        if not 0 <= g < total:
            raise ValueError(f"index {g} outside [0, {total})")
        delta = self.automaton.delta
        state = self.automaton.start
        residual = g
        out: list[int] = []
        for pos in range(m):
            i = m - 1 - pos
            ctx = tuple(out[pos - j] if pos - j >= 0 else None for j in range(1, self.context_len + 1))
            row = delta[state]
            for a in range(self.q - 1, -1, -1):
                if row[a] == REJECT:
                    continue
                v = self._g(i, a, ctx)
                if v <= residual:
                    break
            else:  # pragma: no cover - contributions of the lowest level are 0
                raise ArithmeticError("no level fits the residual")
            out.append(a)
            residual -= v
            state = row[a]
        if residual != 0:
            raise ArithmeticError(f"encoding left residual {residual}")
        return Word(self.alphabet, tuple(out))

    def encode(self, bits: Sequence[int] | str, m: int) -> Word:
        s = self.message_length(m)
        if len(bits) != s:
            raise ValueError(f"{self.name}: message must have {s} bits, got {len(bits)}")
        return self.codeword(bits_to_int(bits) + self.offset, m)

    def decode(self, c: Word | Sequence[int]) -> str:
        """Message bits of a read codeword; raises on any frame error."""
        levels = c.levels if isinstance(c, Word) else tuple(c)
        s = self.message_length(len(levels))
        g = self.index(levels) - self.offset
        if g < 0 or g >> s:
            raise IndexOverflow(f"{self.name}: index outside the message range")
        return int_to_bits(g, s)

    def rate(self, m: int) -> tuple[float, float]:
        r = self.code_rate(m)
        return r, r / self.rate_norm

    def capacity(self) -> tuple[float, float]:
        """Capacity of the written stream, in the same units as ``rate``."""
        c, _ = generic_capacity(self.automaton)
        return c, c / self.rate_norm

    def adder_size(self, m: int) -> int:
        return self.message_length(m)
