"""Koetter-Vardy trellises: products of elementary trellises and diagonal state matrices.

Generator l is "active" at level i when ``μ_i^l = 1``.  In the 0-based
semiopen convention that is ``i ∈ (a, b]``; in the closed 1-based convention
it means positions i and i+1 both lie in ``[a, b]`` (position 0 read as n),
except that a span covering every position is inactive at its end level.
Both rules are evaluated and must agree.

Vertex labels of every trellis built here are k-bit vectors with zeros in the
inactive coordinates, and ordinals are the binary values of those labels.
That is also the ascending coset-representative order of ``F^k / ker(M_i)``,
so the product and quotient constructions can be compared ordinal by ordinal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import gf2
from .algebraic import quotient_trellis
from .bcjr import state_matrices
from .code import CodeSpec, Span
from .errors import CapacityError, DimensionError
from .gf2 import BitMatrix, BitVector
from .trellis import Trellis


def _semiopen_contains(a: int, b: int, i: int) -> bool:
    if a < b:
        return a < i <= b
    if a > b:
        return i > a or i <= b
    return False


def mu_semiopen(spans: Sequence[Span], n: int) -> tuple[tuple[int, ...], ...]:
    """``μ[i][l-1]`` for levels i = 0..n-1 by the rule ``i ∈ (a, b]``."""
    table = []
    for i in range(n):
        table.append(tuple(int(_semiopen_contains(*s.to_semiopen(), i)) for s in spans))
    return tuple(table)


def mu_closed(spans: Sequence[Span], n: int) -> tuple[tuple[int, ...], ...]:
    """``μ[i][l-1]`` for levels i = 0..n-1 by the closed two-point rule."""
    table = []
    for i in range(n):
        p = i if i else n
        row = []
        for s in spans:
            on = s.contains(p) and s.contains(p % n + 1)
            if on and s.is_full(n) and s.end % n == i:
                on = False
            row.append(int(on))
        table.append(tuple(row))
    return tuple(table)


@dataclass(frozen=True)
class DiagonalStateChain:
    """``M_i = diag(μ_i)`` for i = 0..n, with ``M_n = M_0``."""

    mu: tuple[tuple[int, ...], ...]      # n+1 rows

    @property
    def depth(self) -> int:
        return len(self.mu) - 1

    @property
    def matrices(self) -> tuple[BitMatrix, ...]:
        k = len(self.mu[0]) if self.mu else 0
        return tuple(BitMatrix.diagonal(row) if k else BitMatrix.zeros(0, 0) for row in self.mu)

    def __getitem__(self, i: int) -> BitMatrix:
        return self.matrices[i]

    def __len__(self) -> int:
        return len(self.mu)

    def active(self, i: int) -> list[int]:
        """1-based generator indices active at level i."""
        return [l + 1 for l, m in enumerate(self.mu[i]) if m]


def kv_state_matrices(spans: Sequence[Span], k: int, n: int) -> DiagonalStateChain:
    if len(spans) != k:
        raise DimensionError(f"{len(spans)} spans given for k = {k}")
    closed, semi = mu_closed(spans, n), mu_semiopen(spans, n)
    if closed != semi:
        i = next(j for j in range(n) if closed[j] != semi[j])
        raise AssertionError(f"span conventions disagree at level {i}: {closed[i]} vs {semi[i]}")
    return DiagonalStateChain(closed + closed[:1])


# -- elementary and product trellises ------------------------------------------

@dataclass(frozen=True)
class ElementaryTrellis:
    generator: BitVector
    span: Span
    trellis: Trellis

    @property
    def vertex_counts(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.trellis.levels)

    @property
    def edges(self):
        return self.trellis.edges


def elementary_trellis(g: Sequence[int], span: Span) -> ElementaryTrellis:
    """Two-cycle trellis of one generator: branch β ∈ {0,1} spells ``β·g``."""
    g = BitVector(g)
    n = len(g)
    if not any(g):
        raise ValueError("elementary trellis of the zero row is undefined")
    bad = [j + 1 for j in g.support() if not span.contains(j + 1)]
    if bad:
        raise ValueError(f"support positions {bad} outside span {span}")
    mu = [m[0] for m in mu_semiopen([span], n)]
    levels = [(BitVector("0"), BitVector("1")) if m else (BitVector("0"),) for m in mu]
    edges = []
    for i in range(1, n + 1):
        sec = set()
        for beta in (0, 1):
            sec.add((beta * mu[i - 1], beta * g[i - 1], beta * mu[i % n]))
        edges.append(sec)
    return ElementaryTrellis(g, span, Trellis(n, levels, edges))


def product_trellis(rows: Sequence[ElementaryTrellis | Trellis], limit: int = gf2.DEFAULT_LIMIT) -> Trellis:
    """Componentwise product; labels concatenate, symbols add.

    Ordinals are mixed-radix with the first component most significant.
    """
    comps = [r.trellis if isinstance(r, ElementaryTrellis) else r for r in rows]
    if not comps:
        raise ValueError("product of no trellises")
    n = comps[0].depth
    if any(T.depth != n for T in comps):
        raise DimensionError("component trellises have different depths")
    if len(comps) > limit:
        raise CapacityError(f"{len(comps)} components exceed the exhaustive limit {limit}")

    def radices(i):
        return [len(T.levels[i]) for T in comps]

    def ordinal(i, parts):
        o = 0
        for r, p in zip(radices(i), parts):
            o = o * r + p
        return o

    levels = []
    for i in range(n):
        labels = []
        for parts in itertools.product(*(range(r) for r in radices(i))):
            lab = ()
            for T, p in zip(comps, parts):
                lab += tuple(T.levels[i][p])
            labels.append(lab)
        levels.append(labels)
    edges = []
    for i in range(1, n + 1):
        sec = set()
        for combo in itertools.product(*(T.edges[i - 1] for T in comps)):
            tail = ordinal(i - 1, [e.tail for e in combo])
            head = ordinal(i % n, [e.head for e in combo])
            sym = sum(e.symbol for e in combo) & 1
            sec.add((tail, sym, head))
        edges.append(sec)
    return Trellis(n, levels, edges)


def build_kv(spec: CodeSpec, limit: int = gf2.DEFAULT_LIMIT) -> Trellis:
    """The KV trellis ``T_{G,S}`` as a product of elementary trellises."""
    rows = [elementary_trellis(g, s) for g, s in zip(spec.G.row_vectors(), spec.spans)]
    return product_trellis(rows, limit)


def build_kv_algebraic(spec: CodeSpec, chain: DiagonalStateChain | None = None,
                       limit: int = gf2.DEFAULT_LIMIT) -> Trellis:
    """Quotient construction over ``F^k / ker(M_i)``."""
    chain = chain or kv_state_matrices(spec.spans, spec.k, spec.n)
    return quotient_trellis(spec.G, chain.matrices, limit)


# -- kernel equality -----------------------------------------------------------

@dataclass(frozen=True)
class KernelLevel:
    level: int
    ker_n: frozenset
    ker_m: frozenset

    @property
    def equal(self) -> bool:
        return self.ker_n == self.ker_m


@dataclass(frozen=True)
class KernelEqualityReport:
    levels: tuple[KernelLevel, ...]

    @property
    def ok(self) -> bool:
        return all(lv.equal for lv in self.levels)

    @property
    def violations(self) -> list[int]:
        return [lv.level for lv in self.levels if not lv.equal]

    def __bool__(self) -> bool:
        return self.ok


def check_lemma1(spec: CodeSpec, limit: int = gf2.DEFAULT_LIMIT) -> KernelEqualityReport:
    """Compare ``ker(M_i)`` with ``ker(N_i)`` as sets for i = 0..n-1."""
    N = state_matrices(spec)
    M = kv_state_matrices(spec.spans, spec.k, spec.n)
    out = []
    for i in range(spec.n):
        kn = frozenset(gf2.kernel_vectors(N[i], limit))
        km = frozenset(gf2.kernel_vectors(M[i], limit))
        out.append(KernelLevel(i, kn, km))
    return KernelEqualityReport(tuple(out))
