"""Seeded random code specifications for property runs.

Two families are drawn for the main corpus, both made of characteristic-type
rows (distinct span starts and distinct span ends):

* rotated MSGMs: a random full-rank, full-support G is reduced until its
  leading and trailing positions are distinct, given its tight conventional
  spans, and then cyclically rotated by a random offset so some spans wrap;
* cyclic selections: the n cyclic shifts of a divisor g(x) of x^n - 1 with
  their natural cyclic spans, from which k independent rows are chosen.

``random_emsgm_spec`` draws rows with arbitrary tight spans subject only to
distinct starts and ends.  The kernel equality and the cycle count can fail
on that population, so it is used for reporting, not for assertions.
"""

from __future__ import annotations

import random

import numpy as np

from . import gf2
from .code import CodeSpec, Span
from .gf2 import BitMatrix

MAX_N = 10
MAX_K = 5


def _random_full(rng: random.Random, n: int, k: int) -> np.ndarray:
    while True:
        G = np.array([[rng.randint(0, 1) for _ in range(n)] for _ in range(k)], dtype=np.uint8)
        if G.any(axis=0).all() and gf2.rank(BitMatrix(G)) == k:
            return G


def _lead(r) -> int:
    return int(np.flatnonzero(r)[0])


def _trail(r) -> int:
    return int(np.flatnonzero(r)[-1])


def minimal_span_form(G: np.ndarray) -> np.ndarray:
    """Row-reduce until leading positions are distinct and trailing positions are distinct."""
    G = G.copy()
    k = G.shape[0]
    changed = True
    while changed:
        changed = False
        for x in range(k):
            for y in range(k):
                if x == y:
                    continue
                same_lead = _lead(G[x]) == _lead(G[y]) and _trail(G[x]) <= _trail(G[y])
                same_trail = _trail(G[x]) == _trail(G[y]) and _lead(G[x]) >= _lead(G[y])
                if same_lead or same_trail:
                    G[y] ^= G[x]
                    changed = True
    return G


def _finish(G: np.ndarray, spans: list[Span]) -> CodeSpec:
    Gm = BitMatrix(G)
    H = BitMatrix(gf2.kernel_basis(gf2.transpose(Gm)), cols=Gm.cols)
    return CodeSpec(Gm, H, tuple(spans))


def random_msgm_spec(rng: random.Random, n: int, k: int) -> CodeSpec:
    G = minimal_span_form(_random_full(rng, n, k))
    spans = [(_lead(g) + 1, _trail(g) + 1) for g in G]
    r = rng.randrange(n)
    G = np.roll(G, r, axis=1)
    spans = [Span((a - 1 + r) % n + 1, (b - 1 + r) % n + 1) for a, b in spans]
    return _finish(G, spans)


def _divides_xn_minus_1(g: list[int], n: int) -> bool:
    r = [1] + [0] * (n - 1) + [1]       # coefficients, lowest degree first
    d = len(g) - 1
    for i in range(n, d - 1, -1):
        if r[i]:
            for j in range(d + 1):
                r[i - d + j] ^= g[j]
    return not any(r)


def random_cyclic_spec(rng: random.Random, n: int, max_k: int = MAX_K) -> CodeSpec:
    lo = max(1, n - max_k)
    while True:
        d = rng.randint(lo, n - 1)
        g = [1] + [rng.randint(0, 1) for _ in range(d - 1)] + [1]
        if _divides_xn_minus_1(g, n):
            break
    k = n - d
    base = np.array(g + [0] * (n - d - 1), dtype=np.uint8)
    X = np.array([np.roll(base, s) for s in range(n)])
    spans = [Span(s + 1, (s + d) % n + 1) for s in range(n)]
    while True:
        rows = rng.sample(range(n), k)
        if gf2.rank(BitMatrix(X[rows])) == k:
            return _finish(X[rows], [spans[r] for r in rows])


def random_spec(rng: random.Random, max_n: int = MAX_N, max_k: int = MAX_K) -> CodeSpec:
    """One draw from the main corpus (either family with equal probability)."""
    n = rng.randint(3, max_n)
    if rng.random() < 0.5:
        return random_cyclic_spec(rng, n, max_k)
    k = rng.randint(1, min(max_k, n - 1))
    return random_msgm_spec(rng, n, k)


def corpus(seed: int, count: int, max_n: int = MAX_N, max_k: int = MAX_K) -> list[CodeSpec]:
    rng = random.Random(seed)
    return [random_spec(rng, max_n, max_k) for _ in range(count)]


def _tight_spans(g) -> list[Span]:
    sup = [int(j) + 1 for j in np.flatnonzero(g)]
    return [Span(a, sup[t - 1]) for t, a in enumerate(sup)]


def random_emsgm_spec(rng: random.Random, n: int, k: int, max_tries: int = 10_000) -> CodeSpec:
    """Random rows, each with a random tight span; only distinct starts/ends are enforced."""
    for _ in range(max_tries):
        G = _random_full(rng, n, k)
        spans = [rng.choice(_tight_spans(g)) for g in G]
        if len({s.start for s in spans}) == k and len({s.end for s in spans}) == k:
            return _finish(G, spans)
    raise RuntimeError(f"no e-MSGM draw found for n={n}, k={k}")
