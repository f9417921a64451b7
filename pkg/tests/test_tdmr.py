from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loco.families import NpLoco, NsLoco, OpLoco, OsLoco, make_family
from loco.tdmr import (
    NP_MAP,
    NS_MAP,
    Grid,
    assemble_stream,
    assemble_symbols,
    chunk_length,
    column_to_symbol,
    max_no_transition_run,
    parse_stream,
    parse_symbols,
    scan_pis,
    scan_sis,
    scheme_demux,
    scheme_mux,
    stream_violations,
    symbol_to_column,
    symbols_from_text,
    symbols_to_text,
)


def _window_patterns():
    """Explicit 3x3 windows (rows of columns) for the square and plus shapes."""
    sis, pis = set(), set()
    for c in (0, 1):
        o = 1 - c
        sis.add(((o, o, o), (o, c, o), (o, o, o)))
        for corners in itertools.product((0, 1), repeat=4):
            tl, bl, tr, br = corners
            pis.add(((tl, o, bl), (o, c, o), (tr, o, br)))
    return sis, pis


SIS_WINDOWS, PIS_WINDOWS = _window_patterns()


def brute_scan(grid, windows):
    cols = grid.columns
    return [
        k
        for k in range(1, len(cols) - 1)
        if None not in cols[k - 1 : k + 2] and tuple(cols[k - 1 : k + 2]) in windows
    ]


def test_pattern_counts():
    assert len(SIS_WINDOWS) == 2 and len(PIS_WINDOWS) == 32
    assert SIS_WINDOWS <= PIS_WINDOWS


@pytest.mark.parametrize("level,col", [(0, (0, 0, 0)), (7, (1, 1, 1)), (5, (1, 0, 1)), (2, (0, 1, 0))])
def test_column_mapping(level, col):
    assert symbol_to_column(level) == col
    assert column_to_symbol(col) == level


def test_column_roundtrip_and_z():
    assert [column_to_symbol(symbol_to_column(a)) for a in range(8)] == list(range(8))
    assert symbol_to_column(None) is None
    with pytest.raises(ValueError):
        column_to_symbol(None)


@pytest.mark.parametrize("mapping", [NS_MAP, NP_MAP], ids=["ns", "np"])
def test_scheme_mux_demux(mapping):
    for s8 in range(8):
        assert scheme_mux(*scheme_demux(s8, mapping), mapping) == s8
    for s4 in range(4):
        for bit in (0, 1):
            assert scheme_demux(scheme_mux(s4, bit, mapping), mapping) == (s4, bit)


def test_np_map_examples():
    assert scheme_demux(2, NP_MAP) == (3, 0)
    assert scheme_demux(3, NP_MAP) == (3, 1)
    pairs = [scheme_demux(a, NP_MAP) for a in (0, 2, 7, 3, 1, 6)]
    assert [p[0] for p in pairs] == [1, 3, 2, 3, 1, 2]
    assert "".join(str(p[1]) for p in pairs) == "001110"


def test_ns_map_zero_preimages():
    assert NS_MAP.forward[0] == (2, 5)


def test_sis_example():
    g = Grid(((0, 0, 0), (0, 1, 0), (0, 0, 0)))
    assert scan_sis(g) == [1] and scan_pis(g) == [1]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_scanners_match_brute_force(seed):
    rnd = random.Random(seed)
    cols = []
    for _ in range(1000):
        if rnd.random() < 0.03:
            cols.append(None)
        else:
            cols.append(tuple(rnd.randint(0, 1) for _ in range(3)))
    g = Grid(tuple(cols))
    sis, pis = scan_sis(g), scan_pis(g)
    assert sis == brute_scan(g, SIS_WINDOWS)
    assert pis == brute_scan(g, PIS_WINDOWS)
    assert set(sis) <= set(pis)


def test_grid_text_roundtrip():
    g = Grid.from_symbols([0, 7, None, 5])
    text = g.to_text()
    assert text.splitlines() == ["-+z+", "-+z-", "-+z+"]
    assert Grid.from_text(text) == g
    assert Grid.from_text("") == Grid(())
    with pytest.raises(ValueError):
        Grid.from_text("+-\n+\n--\n")


def test_symbol_text_roundtrip():
    assert symbols_from_text("027|z|16") == [0, 2, 7, None, 1, 6]
    assert symbols_to_text([0, None, 3]) == "0z3"


def test_max_run():
    assert max_no_transition_run(Grid.from_symbols([3] * 5)) == 5
    assert max_no_transition_run(Grid.from_symbols([3, 3, None, 3, 3, 3])) == 3
    assert max_no_transition_run(Grid(())) == 0


def test_empty_input_gives_empty_grid():
    assert len(assemble_stream(OsLoco(), 13, "")) == 0


def test_np_example_stream():
    f = NpLoco()
    g = assemble_stream(f, 6, "10010111000" + "001110")
    assert g.to_symbols() == [0, 2, 7, 3, 1, 6]
    frames = parse_stream(f, 6, g)
    assert len(frames) == 1 and frames[0].ok
    assert (frames[0].message, frames[0].selections) == ("10010111000", "001110")


def test_os_stream_two_messages():
    f = OsLoco()
    rng = random.Random(7)
    bits = "".join(rng.choice("01") for _ in range(2 * 68))
    g = assemble_stream(f, 23, bits)
    assert len(g) == 2 * 24 - 1
    assert scan_sis(g) == []


def test_input_length_checked():
    with pytest.raises(ValueError):
        assemble_symbols(OsLoco(), 5, "0" * 15)
    with pytest.raises(ValueError):
        parse_symbols(OsLoco(), 5, [0] * 7)


STREAM_CASES = [("lorll", {"d": 2}), ("sloco", {"x": 2}), ("os", {}), ("op", {}), ("ns", {}), ("np", {})]


@pytest.mark.parametrize("name,kw", STREAM_CASES, ids=[c[0] for c in STREAM_CASES])
@pytest.mark.parametrize("m", [5, 13])
def test_stream_roundtrip_and_safety(name, kw, m):
    f = make_family(name, **kw)
    rng = random.Random(m)
    bits = "".join(rng.choice("01") for _ in range(chunk_length(f, m) * 200))
    symbols = assemble_symbols(f, m, bits)
    frames = parse_symbols(f, m, symbols)
    assert all(fr.ok for fr in frames)
    assert "".join(fr.bits for fr in frames) == bits
    assert stream_violations(f, symbols) == 0
    if f.q > 2:
        g = Grid.from_symbols(symbols)
        hits = scan_pis(g) if name in ("op", "np") else scan_sis(g)
        assert hits == []
        bound = m if name == "np" else m + 1
        assert max_no_transition_run(g) <= bound


@pytest.mark.parametrize("name", ["os", "op", "ns", "np"])
def test_worst_case_runs_bounded(name):
    """All-same messages and selections push columns toward long runs."""
    f = make_family(name)
    m = 13
    n = chunk_length(f, m)
    for fill in "01":
        bits = fill * (n * 20)
        g = assemble_stream(f, m, bits)
        assert max_no_transition_run(g) <= (m if name == "np" else m + 1)


def test_injected_violation_flagged():
    f = OsLoco()
    symbols = assemble_symbols(f, 5, "00010110101000" * 2)
    symbols[0:3] = [0, 2, 0]
    frames = parse_symbols(f, 5, symbols)
    assert frames[0].status == "constraint_violation" and frames[1].ok


def test_overflow_flagged():
    f = OsLoco()
    top = f.codeword(f.cardinality(5) - 1, 5).levels
    frames = parse_symbols(f, 5, list(top))
    assert frames[0].status == "index_overflow"


def test_z_inside_frame_is_violation():
    frames = parse_symbols(OpLoco(), 5, [0, None, 0, 0, 0])
    assert frames[0].status == "constraint_violation"


def test_ns_stream_has_trailing_bridge():
    f = NsLoco()
    n = chunk_length(f, 5)
    symbols = assemble_symbols(f, 5, "0" * n)
    assert len(symbols) == 6


def test_binary_family_has_no_grid():
    with pytest.raises(ValueError):
        assemble_stream(make_family("lorll"), 5, "000")
