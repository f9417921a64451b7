"""Generic LOCO engine for an arbitrary finite forbidden-pattern set.

A substring-avoidance automaton (Aho-Corasick style, with failure links)
tracks the longest suffix of the consumed word that is still a proper prefix
of some forbidden pattern.  Completion counts ``W[state][len]`` give exact
cardinalities, lexicographic rank/unrank and a brute-force enumerator.
"""

from __future__ import annotations

import itertools
import json
import math
import warnings
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .alphabet import Alphabet, Word

__all__ = [
    "REJECT",
    "ForbiddenSet",
    "ConstraintAutomaton",
    "CompletionTable",
    "ConstraintViolation",
    "CapacityError",
    "EnumerationCapExceeded",
    "build_automaton",
    "count",
    "enumerate_words",
    "rank",
    "unrank",
    "capacity",
    "load_config",
    "contains_pattern",
]

REJECT = -1
DEFAULT_ENUM_CAP = 1 << 24


class ConstraintViolation(ValueError):
    """A word contains a forbidden pattern."""


class CapacityError(ArithmeticError):
    """The constraint admits no arbitrarily long words, or iteration failed."""


class EnumerationCapExceeded(ValueError):
    pass


def _is_subword(small: tuple[int, ...], big: tuple[int, ...]) -> bool:
    n = len(small)
    return any(big[k : k + n] == small for k in range(len(big) - n + 1))


@dataclass(frozen=True)
class ForbiddenSet:
    """Forbidden patterns as level tuples, leftmost symbol first."""

    alphabet: Alphabet
    patterns: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        pats = tuple(tuple(int(a) for a in p) for p in self.patterns)
        for p in pats:
            if not p:
                raise ValueError("forbidden patterns must be nonempty")
            for a in p:
                self.alphabet.check(a)
        if len(set(pats)) != len(pats):
            raise ValueError("duplicate forbidden pattern")
        kept = []
        for p in pats:
            if any(o != p and _is_subword(o, p) for o in pats):
                warnings.warn(
                    f"pattern {p} contains another forbidden pattern; dropped as redundant",
                    stacklevel=3,
                )
                continue
            kept.append(p)
        object.__setattr__(self, "patterns", tuple(kept))

    @classmethod
    def of(cls, q: int, patterns: Iterable[Sequence[int]]) -> ForbiddenSet:
        return cls(Alphabet(q), tuple(tuple(p) for p in patterns))

    @property
    def q(self) -> int:
        return self.alphabet.q

    @property
    def p_max(self) -> int:
        return max((len(p) for p in self.patterns), default=0)


def contains_pattern(levels: Sequence[int], patterns: Iterable[Sequence[int]]) -> bool:
    """Direct substring scan; used as an oracle and for stream checks."""
    t = tuple(levels)
    return any(_is_subword(tuple(p), t) for p in patterns)


@dataclass(frozen=True)
class ConstraintAutomaton:
    """Deterministic, complete automaton; ``delta[s][a]`` is a state or REJECT."""

    forbidden: ForbiddenSet
    contexts: tuple[tuple[int, ...], ...]
    delta: tuple[tuple[int, ...], ...]
    start: int = 0

    @property
    def q(self) -> int:
        return self.forbidden.q

    @property
    def n_states(self) -> int:
        return len(self.contexts)

    def step(self, state: int, level: int) -> int:
        return self.delta[state][level]

    def run(self, levels: Iterable[int], state: int | None = None) -> int:
        s = self.start if state is None else state
        for a in levels:
            s = self.delta[s][a]
            if s == REJECT:
                return REJECT
        return s

    def accepts(self, levels: Iterable[int]) -> bool:
        return self.run(levels) != REJECT


def build_automaton(forbidden: ForbiddenSet) -> ConstraintAutomaton:
    q = forbidden.q
    # Trie over pattern prefixes; terminal nodes become REJECT.
    children: list[dict[int, int]] = [{}]
    contexts: list[tuple[int, ...]] = [()]
    terminal = [False]
    for p in forbidden.patterns:
        node = 0
        for a in p:
            nxt = children[node].get(a)
            if nxt is None:
                nxt = len(contexts)
                children.append({})
                contexts.append(contexts[node] + (a,))
                terminal.append(False)
                children[node][a] = nxt
            node = nxt
        terminal[node] = True

    n = len(contexts)
    fail = [0] * n
    full = [[0] * q for _ in range(n)]
    order = deque()
    for a in range(q):
        c = children[0].get(a)
        if c is None:
            full[0][a] = 0
        else:
            full[0][a] = c
            fail[c] = 0
            order.append(c)
    while order:
        u = order.popleft()
        terminal[u] = terminal[u] or terminal[fail[u]]
        for a in range(q):
            c = children[u].get(a)
            if c is None:
                full[u][a] = full[fail[u]][a]
            else:
                full[u][a] = c
                fail[c] = full[fail[u]][a]
                order.append(c)

    # Compact: keep non-terminal nodes, map terminal targets to REJECT.
    keep = [i for i in range(n) if not terminal[i]]
    index = {old: new for new, old in enumerate(keep)}
    delta = tuple(
        tuple(REJECT if terminal[full[i][a]] else index[full[i][a]] for a in range(q))
        for i in keep
    )
    return ConstraintAutomaton(
        forbidden=forbidden,
        contexts=tuple(contexts[i] for i in keep),
        delta=delta,
        start=0,
    )


@dataclass
class CompletionTable:
    """``W[s][k]`` = number of accepted length-k continuations from state s."""

    automaton: ConstraintAutomaton
    W: list[list[int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.W:
            self.W = [[1] for _ in range(self.automaton.n_states)]

    @property
    def max_len(self) -> int:
        return len(self.W[0]) - 1

    def extend(self, m: int) -> CompletionTable:
        delta = self.automaton.delta
        while self.max_len < m:
            k = self.max_len
            col = [
                sum(self.W[t][k] for t in row if t != REJECT) for row in delta
            ]
            for s, v in enumerate(col):
                self.W[s].append(v)
        return self

    def __call__(self, state: int, length: int) -> int:
        if length > self.max_len:
            self.extend(length)
        return self.W[state][length]


def _table(automaton: ConstraintAutomaton, table: CompletionTable | None, m: int) -> CompletionTable:
    if table is None:
        table = CompletionTable(automaton)
    elif table.automaton is not automaton:
        raise ValueError("completion table belongs to a different automaton")
    return table.extend(m)


def count(automaton: ConstraintAutomaton, m: int, table: CompletionTable | None = None) -> int:
    if m < 0:
        raise ValueError("length must be non-negative")
    return _table(automaton, table, m)(automaton.start, m)


def enumerate_words(
    automaton: ConstraintAutomaton, m: int, cap: int = DEFAULT_ENUM_CAP
) -> list[Word]:
    """All accepted words of length m in lexicographic order (brute force)."""
    q = automaton.q
    if q**m > cap:
        raise EnumerationCapExceeded(f"{q}^{m} candidates exceed cap {cap}")
    alphabet = automaton.forbidden.alphabet
    # itertools.product yields in lexicographic order already.
    return [
        Word(alphabet, levels)
        for levels in itertools.product(range(q), repeat=m)
        if automaton.accepts(levels)
    ]


def _levels(c: Word | Sequence[int]) -> tuple[int, ...]:
    return c.levels if isinstance(c, Word) else tuple(c)


def rank(
    automaton: ConstraintAutomaton, c: Word | Sequence[int], table: CompletionTable | None = None
) -> int:
    """Lexicographic index of ``c`` among accepted words of its length."""
    levels = _levels(c)
    m = len(levels)
    W = _table(automaton, table, m)
    delta = automaton.delta
    state = automaton.start
    g = 0
    for pos, a in enumerate(levels):
        i = m - 1 - pos
        row = delta[state]
        for smaller in range(a):
            t = row[smaller]
            if t != REJECT:
                g += W.W[t][i]
        state = row[a]
        if state == REJECT:
            raise ConstraintViolation(f"word {levels} contains a forbidden pattern")
    return g


def unrank(
    automaton: ConstraintAutomaton, g: int, m: int, table: CompletionTable | None = None
) -> Word:
    W = _table(automaton, table, m)
    total = W.W[automaton.start][m]
    if not 0 <= g < total:
        raise ValueError(f"index {g} outside [0, {total})")
    delta = automaton.delta
    state = automaton.start
    residual = g
    out = []
    for i in range(m - 1, -1, -1):
        for a, t in enumerate(delta[state]):
            if t == REJECT:
                continue
            block = W.W[t][i]
            if residual < block:
                out.append(a)
                state = t
                break
            residual -= block
        else:  # pragma: no cover - guarded by the range check above
            raise AssertionError("unrank ran past the last symbol")
    return Word(automaton.forbidden.alphabet, tuple(out))


def _trim(automaton: ConstraintAutomaton) -> list[int]:
    """States reachable from start that also lie on an infinite accepted path."""
    delta = automaton.delta
    seen = {automaton.start}
    stack = [automaton.start]
    while stack:
        s = stack.pop()
        for t in delta[s]:
            if t != REJECT and t not in seen:
                seen.add(t)
                stack.append(t)
    alive = set(seen)
    changed = True
    while changed:
        changed = False
        for s in list(alive):
            if not any(t in alive for t in delta[s] if t != REJECT):
                alive.discard(s)
                changed = True
    return sorted(alive)


def transition_matrix(automaton: ConstraintAutomaton) -> list[list[int]]:
    """Edge-count matrix over the trimmed state set."""
    states = _trim(automaton)
    idx = {s: k for k, s in enumerate(states)}
    A = [[0] * len(states) for _ in states]
    for s in states:
        for t in automaton.delta[s]:
            if t in idx:
                A[idx[s]][idx[t]] += 1
    return A


def _components(A: Sequence[Sequence[float]]) -> list[list[int]]:
    """Strongly connected components (iterative Tarjan)."""
    n = len(A)
    succ = [[k for k in range(n) if A[r][k]] for r in range(n)]
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, child = work.pop()
            if child == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            if child < len(succ[v]):
                work.append((v, child + 1))
                w = succ[v][child]
                if index[w] == -1:
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            for w in succ[v]:
                if on_stack[w] and index[w] > index[v]:
                    low[v] = min(low[v], low[w])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def _irreducible_radius(B: list[list[float]], tol: float, max_iter: int) -> float:
    # B + I is primitive for irreducible B, so the Collatz-Wielandt bounds
    # min/max of (Bv)_r / v_r close in on the Perron root geometrically.
    n = len(B)
    v = [1.0] * n
    for _ in range(max_iter):
        w = [v[r] + sum(B[r][k] * v[k] for k in range(n) if B[r][k]) for r in range(n)]
        ratios = [w[r] / v[r] for r in range(n)]
        lo, hi = min(ratios), max(ratios)
        if hi - lo <= tol * hi:
            return (lo + hi) / 2 - 1.0
        top = max(w)
        v = [x / top for x in w]
    raise CapacityError(f"power iteration did not converge in {max_iter} steps")


def spectral_radius(A: Sequence[Sequence[float]], tol: float = 1e-10, max_iter: int = 10**6) -> float:
    """Perron root of a non-negative matrix: the largest over its irreducible blocks."""
    best = 0.0
    for comp in _components(A):
        B = [[float(A[r][k]) for k in comp] for r in comp]
        if len(comp) == 1 and not B[0][0]:
            continue  # a lone state without a self-loop contributes 0
        best = max(best, _irreducible_radius(B, tol, max_iter))
    return best


def capacity(
    automaton: ConstraintAutomaton, tol: float = 1e-10, max_iter: int = 10**6
) -> tuple[float, float]:
    """(bits per symbol, bits per symbol normalised by log2 q)."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    A = transition_matrix(automaton)
    if not A:
        raise CapacityError("constraint admits no arbitrarily long words")
    lam = spectral_radius(A, tol=tol, max_iter=max_iter)
    if lam < 1.0 - 1e-12:
        raise CapacityError("constraint admits no arbitrarily long words")
    c = math.log2(lam) if lam > 1.0 else 0.0
    return c, c / math.log2(automaton.q)


def load_config(source: str | Path | dict) -> ForbiddenSet:
    """Parse ``{"q": 8, "patterns": [[0,2,0],[7,5,7]]}`` from a path, text or dict."""
    if isinstance(source, dict):
        data = source
    else:
        p = Path(source) if not str(source).lstrip().startswith("{") else None
        text = p.read_text() if p is not None else str(source)
        data = json.loads(text)
    if "q" not in data or "patterns" not in data:
        raise ValueError("constraint config needs 'q' and 'patterns'")
    return ForbiddenSet.of(int(data["q"]), data["patterns"])
