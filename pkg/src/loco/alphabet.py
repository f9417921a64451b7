"""Ordered q-ary alphabets, symbols and fixed-length words.

Symbols are carried around as their integer level-equivalents
``0 .. q-1`` (0 < 1 < alpha < ... < alpha^(q-2)).  A :class:`Word` stores
its levels leftmost-first but is addressed with significance indices:
``word.symbol(i)`` is ``c_i`` where ``i = m-1`` is the leftmost symbol and
any ``i >= m`` is out of bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "Alphabet",
    "Symbol",
    "Word",
    "lex_compare",
    "level_map",
    "inverse_level",
    "parse_label",
    "format_levels",
    "parse_levels",
]


@dataclass(frozen=True)
class Alphabet:
    q: int

    def __post_init__(self) -> None:
        if not isinstance(self.q, int) or self.q < 2:
            raise ValueError(f"alphabet size must be an integer >= 2, got {self.q!r}")

    @property
    def levels(self) -> range:
        return range(self.q)

    def check(self, level: int) -> int:
        if not 0 <= level < self.q:
            raise ValueError(f"level {level} outside [0, {self.q - 1}]")
        return level

    def symbol(self, level: int) -> Symbol:
        return Symbol(self, self.check(level))


@dataclass(frozen=True, order=False)
class Symbol:
    """One GF(q) label, identified by its level-equivalent."""

    alphabet: Alphabet
    level: int

    def __post_init__(self) -> None:
        self.alphabet.check(self.level)

    @property
    def label(self) -> str:
        if self.level <= 1:
            return str(self.level)
        if self.level == 2:
            return "α"
        return f"α^{self.level - 1}"

    def __str__(self) -> str:
        return self.label


def level_map(c: Symbol) -> int:
    """Level-equivalent of a symbol: 0 for 0, gflog(c) + 1 otherwise."""
    return c.level


def inverse_level(a: int, alphabet: Alphabet) -> Symbol:
    if not 0 <= a < alphabet.q:
        raise ValueError(f"level {a} outside [0, {alphabet.q - 1}]")
    return Symbol(alphabet, a)


def parse_label(text: str, alphabet: Alphabet) -> Symbol:
    """Inverse of :attr:`Symbol.label`; accepts ``a``/``alpha`` for α too."""
    t = text.strip().replace("alpha", "α").replace("a", "α")
    if t in ("0", "1"):
        return inverse_level(int(t), alphabet)
    if t == "α":
        return inverse_level(2, alphabet)
    if t.startswith("α^"):
        power = int(t[2:])
        return inverse_level(power + 1, alphabet)
    raise ValueError(f"unrecognised symbol label {text!r}")


@dataclass(frozen=True)
class Word:
    """A length-m word over an alphabet, stored leftmost (c_{m-1}) first."""

    alphabet: Alphabet
    levels: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "levels", tuple(self.levels))
        for a in self.levels:
            self.alphabet.check(a)

    @classmethod
    def from_levels(cls, levels: Iterable[int], q: int | Alphabet) -> Word:
        alphabet = q if isinstance(q, Alphabet) else Alphabet(q)
        return cls(alphabet, tuple(levels))

    @classmethod
    def from_string(cls, text: str, q: int | Alphabet) -> Word:
        return cls.from_levels(parse_levels(text), q)

    @property
    def m(self) -> int:
        return len(self.levels)

    def __len__(self) -> int:
        return len(self.levels)

    def symbol(self, i: int) -> int | None:
        """Level of ``c_i``; ``None`` stands for the out-of-bounds marker z'."""
        if i < 0:
            raise IndexError(i)
        if i >= len(self.levels):
            return None
        return self.levels[len(self.levels) - 1 - i]

    def symbols(self) -> list[Symbol]:
        return [Symbol(self.alphabet, a) for a in self.levels]

    def __str__(self) -> str:
        return format_levels(self.levels)


def lex_compare(u: Word, v: Word) -> int:
    """Return -1, 0 or 1 as ``u`` sorts before, equal to, or after ``v``."""
    if u.alphabet != v.alphabet:
        raise ValueError("words over different alphabets")
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    for a, b in zip(u.levels, v.levels):
        if a != b:
            return -1 if a < b else 1
    return 0


def format_levels(levels: Sequence[int | None]) -> str:
    """One character per symbol; ``None`` (no-write) renders as ``z``."""
    out = []
    for a in levels:
        if a is None:
            out.append("z")
        elif 0 <= a <= 9:
            out.append(str(a))
        else:
            raise ValueError(f"level {a} has no single-character rendering")
    return "".join(out)


def parse_levels(text: str, allow_z: bool = False) -> list[int | None]:
    """Parse a symbol-stream string.  ``|`` and whitespace are ignored."""
    out: list[int | None] = []
    for ch in text:
        if ch in "| \t\r\n":
            continue
        if ch == "z":
            if not allow_z:
                raise ValueError("no-write symbol 'z' not allowed here")
            out.append(None)
        elif ch.isdigit():
            out.append(int(ch))
        else:
            raise ValueError(f"bad symbol character {ch!r}")
    return out
