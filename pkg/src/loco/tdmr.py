"""Three-track TDMR layer: columns, grids, stream assembly and pattern audits.

A GF(8) symbol is written as a 3x1 column holding the binary expansion of
its level (most significant bit on the top track).  GF(4) codes (NS, NP)
reach GF(8) through a 2-to-1 map where one extra input bit picks which of
the two preimages is written.  ``None`` stands for the no-write symbol z in
every symbol stream and for an unmagnetised column in a grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .alphabet import format_levels, parse_levels
from .families import FamilyCodec, FrameError, IndexOverflow, NpLoco, NsLoco
from .generic import ConstraintViolation, contains_pattern

__all__ = [
    "Column",
    "Grid",
    "SchemeMapping",
    "NS_MAP",
    "NP_MAP",
    "FrameResult",
    "symbol_to_column",
    "column_to_symbol",
    "scheme_for",
    "scheme_mux",
    "scheme_demux",
    "scan_sis",
    "scan_pis",
    "chunk_length",
    "frame_stride",
    "assemble_symbols",
    "assemble_stream",
    "parse_symbols",
    "parse_stream",
    "stream_violations",
    "max_no_transition_run",
]

Column = "tuple[int, int, int] | None"

STATUS_OK = "ok"
STATUS_CONSTRAINT = "constraint_violation"
STATUS_OVERFLOW = "index_overflow"


def symbol_to_column(level: int | None) -> tuple[int, int, int] | None:
    if level is None:
        return None
    if not 0 <= level < 8:
        raise ValueError(f"GF(8) level {level} out of range")
    return ((level >> 2) & 1, (level >> 1) & 1, level & 1)


def column_to_symbol(col: Sequence[int] | None) -> int:
    if col is None:
        raise ValueError("cannot demap a no-write column")
    top, mid, bot = col
    for b in col:
        if b not in (0, 1):
            raise ValueError(f"bad grid bit {b!r}")
    return (top << 2) | (mid << 1) | bot


@dataclass(frozen=True)
class SchemeMapping:
    """GF(4) level -> (preimage picked by bit 0, preimage picked by bit 1)."""

    name: str
    forward: tuple[tuple[int, int], ...]
    inverse: dict[int, tuple[int, int]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        inv: dict[int, tuple[int, int]] = {}
        for s4, pair in enumerate(self.forward):
            for bit, s8 in enumerate(pair):
                if s8 in inv:
                    raise ValueError(f"GF(8) level {s8} has two GF(4) images")
                inv[s8] = (s4, bit)
        if sorted(inv) != list(range(8)):
            raise ValueError("scheme mapping must cover every GF(8) level once")
        object.__setattr__(self, "inverse", inv)


NS_MAP = SchemeMapping("ns", ((2, 5), (1, 6), (3, 4), (0, 7)))
NP_MAP = SchemeMapping("np", ((4, 5), (0, 1), (6, 7), (2, 3)))


def scheme_for(family: FamilyCodec) -> SchemeMapping | None:
    if isinstance(family, NsLoco):
        return NS_MAP
    if isinstance(family, NpLoco):
        return NP_MAP
    return None


def scheme_mux(s4: int, bit: int, mapping: SchemeMapping) -> int:
    if bit not in (0, 1):
        raise ValueError(f"bad selection bit {bit!r}")
    return mapping.forward[s4][bit]


def scheme_demux(s8: int, mapping: SchemeMapping) -> tuple[int, int]:
    return mapping.inverse[s8]


@dataclass(frozen=True)
class Grid:
    """Three down tracks; each column is (top, middle, bottom) bits or None."""

    columns: tuple[tuple[int, int, int] | None, ...] = ()

    def __post_init__(self) -> None:
        cols = tuple(None if c is None else tuple(int(b) for b in c) for c in self.columns)
        for c in cols:
            if c is not None and (len(c) != 3 or any(b not in (0, 1) for b in c)):
                raise ValueError(f"bad column {c!r}")
        object.__setattr__(self, "columns", cols)

    def __len__(self) -> int:
        return len(self.columns)

    @classmethod
    def from_symbols(cls, levels: Iterable[int | None]) -> Grid:
        return cls(tuple(symbol_to_column(a) for a in levels))

    def to_symbols(self) -> list[int | None]:
        return [None if c is None else column_to_symbol(c) for c in self.columns]

    def to_text(self) -> str:
        rows = []
        for r in range(3):
            rows.append("".join("z" if c is None else "+-"[1 - c[r]] for c in self.columns))
        return "\n".join(rows) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Grid:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            return cls(())
        if len(lines) != 3 or len({len(ln) for ln in lines}) != 1:
            raise ValueError("grid text must be 3 lines of equal length")
        cols: list[tuple[int, int, int] | None] = []
        for k in range(len(lines[0])):
            chars = [ln[k] for ln in lines]
            if all(ch == "z" for ch in chars):
                cols.append(None)
            elif all(ch in "+-" for ch in chars):
                cols.append(tuple(1 if ch == "+" else 0 for ch in chars))  # type: ignore[arg-type]
            else:
                raise ValueError(f"bad grid column {k}: {''.join(chars)!r}")
        return cls(tuple(cols))


def _windows(grid: Grid):
    cols = grid.columns
    for k in range(1, len(cols) - 1):
        left, mid, right = cols[k - 1], cols[k], cols[k + 1]
        if left is None or mid is None or right is None:
            continue
        yield k, left, mid, right


def scan_sis(grid: Grid) -> list[int]:
    """Columns whose middle bit is surrounded by eight complementary bits."""
    hits = []
    for k, left, mid, right in _windows(grid):
        other = 1 - mid[1]
        if mid[0] == mid[2] == other and all(b == other for b in left + right):
            hits.append(k)
    return hits


def scan_pis(grid: Grid) -> list[int]:
    """Columns whose middle bit differs from its four edge-adjacent neighbours."""
    hits = []
    for k, left, mid, right in _windows(grid):
        other = 1 - mid[1]
        if mid[0] == mid[2] == left[1] == right[1] == other:
            hits.append(k)
    return hits


def max_no_transition_run(grid: Grid | Sequence) -> int:
    """Longest run of identical written columns; z columns end every run."""
    cols = grid.columns if isinstance(grid, Grid) else tuple(grid)
    best = run = 0
    prev = None
    for c in cols:
        if c is None:
            run, prev = 0, None
            continue
        run = run + 1 if c == prev else 1
        prev = c
        best = max(best, run)
    return best


# ----- streams ---------------------------------------------------------------


def chunk_length(family: FamilyCodec, m: int) -> int:
    """Input bits consumed per codeword (message, selections, bridge bit)."""
    if isinstance(family, (NsLoco, NpLoco)):
        return family.chunk_length(m)
    return family.message_length(m)


def frame_stride(family: FamilyCodec) -> int:
    return family.bridge_len


def _bridge_symbols(
    family: FamilyCodec, prev: Sequence[int], nxt: Sequence[int]
) -> tuple[int | None, ...]:
    return family.bridge(tuple(prev[-2:]), tuple(nxt[:2]))


def _np_bridge_column(bridge4: int, prev8: int | None, prev4: int | None, next8: int | None, next4: int | None) -> int:
    # Pick the preimage that differs from whichever neighbour shares the bridge's
    # GF(4) symbol, so no run of identical columns crosses the bridge.
    left, right = NP_MAP.forward[bridge4]
    if prev4 == bridge4 and prev8 == left:
        return right
    if next4 == bridge4 and next8 == left:
        return right
    return left


def assemble_symbols(family: FamilyCodec, m: int, bits: Sequence[int] | str) -> list[int | None]:
    """Encode a bit stream into the written symbol stream, bridges included.

    OS/OP emit GF(8) levels, NS/NP emit the multiplexed GF(8) levels, and the
    binary families emit bits.  ``None`` marks no-write symbols.
    """
    bits = "".join(str(int(b)) for b in bits)
    n = chunk_length(family, m)
    if len(bits) % n:
        raise ValueError(f"input length {len(bits)} is not a multiple of the chunk size {n}")
    s = family.message_length(m)
    mapping = scheme_for(family)
    codewords: list[tuple[int, ...]] = []
    selections: list[str] = []
    bridge_bits: list[int] = []
    for k in range(0, len(bits), n):
        chunk = bits[k : k + n]
        codewords.append(family.encode(chunk[:s], m).levels)
        if mapping is not None:
            selections.append(chunk[s : s + m])
            if isinstance(family, NsLoco):
                bridge_bits.append(int(chunk[s + m]))

    out: list[int | None] = []
    for idx, cw in enumerate(codewords):
        if mapping is None:
            written = list(cw)
        else:
            written = [scheme_mux(a, int(b), mapping) for a, b in zip(cw, selections[idx])]
        out.extend(written)
        last = idx == len(codewords) - 1
        if last and not isinstance(family, NsLoco):
            break
        nxt = codewords[idx + 1] if not last else ()
        bridge = _bridge_symbols(family, cw, nxt)
        if isinstance(family, NsLoco):
            out.append(scheme_mux(bridge[0], bridge_bits[idx], NS_MAP))
        elif isinstance(family, NpLoco) and bridge[0] is not None:
            next8 = scheme_mux(nxt[0], int(selections[idx + 1][0]), NP_MAP)
            out.append(_np_bridge_column(bridge[0], written[-1], cw[-1], next8, nxt[0]))
        else:
            out.extend(bridge)
    return out


def assemble_stream(family: FamilyCodec, m: int, bits: Sequence[int] | str) -> Grid:
    if family.q == 2:
        raise ValueError("binary families are written as symbol streams, not grids")
    return Grid.from_symbols(assemble_symbols(family, m, bits))


@dataclass(frozen=True)
class FrameResult:
    """Decoded chunk of one frame; ``bits`` is None unless status is ok."""

    status: str
    bits: str | None = None
    message: str | None = None
    selections: str = ""

    @property
    def ok(self) -> bool:
        return self.status == STATUS_OK


def _frame_count(family: FamilyCodec, m: int, total: int) -> int:
    b = family.bridge_len
    if isinstance(family, NsLoco):
        if total % (m + b):
            raise ValueError(f"stream length {total} does not fit frames of {m}+{b}")
        return total // (m + b)
    if total == 0:
        return 0
    if (total + b) % (m + b):
        raise ValueError(f"stream length {total} does not fit frames of {m} with {b}-symbol bridges")
    return (total + b) // (m + b)


def parse_symbols(family: FamilyCodec, m: int, symbols: Sequence[int | None]) -> list[FrameResult]:
    """Split a written symbol stream into frames and decode each one."""
    mapping = scheme_for(family)
    b = family.bridge_len
    frames = []
    for k in range(_frame_count(family, m, len(symbols))):
        start = k * (m + b)
        written = symbols[start : start + m]
        if any(a is None for a in written):
            frames.append(FrameResult(STATUS_CONSTRAINT))
            continue
        if mapping is None:
            cw, sel = list(written), ""
        else:
            pairs = [scheme_demux(a, mapping) for a in written]
            cw = [p[0] for p in pairs]
            sel = "".join(str(p[1]) for p in pairs)
            if isinstance(family, NsLoco):
                bridge = symbols[start + m]
                if bridge is None:
                    frames.append(FrameResult(STATUS_CONSTRAINT))
                    continue
                sel += str(scheme_demux(bridge, mapping)[1])
        try:
            msg = family.decode(cw)
        except ConstraintViolation:
            frames.append(FrameResult(STATUS_CONSTRAINT))
            continue
        except IndexOverflow:
            frames.append(FrameResult(STATUS_OVERFLOW))
            continue
        frames.append(FrameResult(STATUS_OK, msg + sel, msg, sel))
    return frames


def parse_stream(family: FamilyCodec, m: int, grid: Grid) -> list[FrameResult]:
    return parse_symbols(family, m, grid.to_symbols())


def _segments(levels: Sequence[int | None]) -> list[list[int]]:
    out: list[list[int]] = [[]]
    for a in levels:
        if a is None:
            out.append([])
        else:
            out[-1].append(a)
    return [seg for seg in out if seg]


def stream_violations(family: FamilyCodec, symbols: Sequence[int | None]) -> int:
    """Number of z-free segments of the written stream containing a forbidden pattern.

    NS/NP streams are demultiplexed back to GF(4) before scanning.
    """
    mapping = scheme_for(family)
    if mapping is not None:
        symbols = [None if a is None else scheme_demux(a, mapping)[0] for a in symbols]
    patterns = family.patterns()
    return sum(contains_pattern(seg, patterns) for seg in _segments(symbols))


def symbols_to_text(symbols: Sequence[int | None]) -> str:
    return format_levels(symbols)


def symbols_from_text(text: str) -> list[int | None]:
    return parse_levels(text, allow_z=True)


__all__ += ["symbols_to_text", "symbols_from_text", "FrameError"]
