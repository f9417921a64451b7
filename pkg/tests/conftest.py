"""Independent oracles shared by the test modules.

None of these touch the automaton engine: codes are enumerated by brute
force over all q^m words with a plain substring scan.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import pytest

from loco.families import make_family

ORACLE_MAX_M = {2: 12, 4: 8, 8: 5}


def has_forbidden(word, patterns) -> bool:
    w = tuple(word)
    for p in patterns:
        n = len(p)
        for k in range(len(w) - n + 1):
            if w[k : k + n] == tuple(p):
                return True
    return False


@lru_cache(maxsize=None)
def brute_code(q: int, patterns: tuple, m: int) -> tuple:
    """All constraint-satisfying words of length m, lexicographically sorted."""
    return tuple(w for w in itertools.product(range(q), repeat=m) if not has_forbidden(w, patterns))


def family_code(f, m):
    return brute_code(f.q, tuple(map(tuple, f.patterns())), m)


FAMILY_PARAMS = [
    ("lorll", {"d": 1}),
    ("lorll", {"d": 2}),
    ("lorll", {"d": 3}),
    ("sloco", {"x": 1}),
    ("sloco", {"x": 2}),
    ("sloco", {"x": 3}),
    ("os", {}),
    ("op", {}),
    ("ns", {}),
    ("np", {}),
]


def family_id(p):
    name, kw = p
    return name + "".join(f"-{k}{v}" for k, v in kw.items())


@pytest.fixture(params=FAMILY_PARAMS, ids=family_id)
def family(request):
    name, kw = request.param
    return make_family(name, **kw)
