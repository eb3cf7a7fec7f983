"""Trellis construction from quotient spaces ``F^k / ker(N_i)``.

Level-i vertices are the cosets of the kernel of the level-i state matrix.
An edge labeled ``c_i`` joins the coset holding u at level i-1 to the coset
holding u at level i, for every information vector u (``c = u·G``).

The subcode machinery at the bottom (partition ``C/C_0`` and the offset
syndrome maps) is an independent route to the same kernels and is kept
separate on purpose so the two can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import gf2
from .bcjr import StateMatrixChain, displacement_matrix, displacement_vector, state_matrices
from .code import CodeSpec
from .errors import CapacityError, ClosureError, DimensionError, MembershipError
from .gf2 import BitMatrix, BitVector
from .trellis import Trellis


@dataclass(frozen=True)
class CosetPartition:
    """Cosets of a subspace K of F^m, ordered by their smallest element.

    ``cosets[0]`` is K itself; each coset's representative is its first
    (smallest) element.
    """

    ambient_dim: int
    kernel: tuple[BitVector, ...]
    cosets: tuple[tuple[BitVector, ...], ...]
    _index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self._index is None:
            index = {u: j for j, coset in enumerate(self.cosets) for u in coset}
            object.__setattr__(self, "_index", index)

    @property
    def representatives(self) -> tuple[BitVector, ...]:
        return tuple(c[0] for c in self.cosets)

    def index_of(self, u: Sequence[int]) -> int:
        return self._index[BitVector(u)]

    def __len__(self) -> int:
        return len(self.cosets)


def coset_partition(kernel: Iterable[Sequence[int]], dim: int, limit: int = gf2.DEFAULT_LIMIT) -> CosetPartition:
    """Partition F^dim into cosets of ``kernel`` by a greedy ascending scan."""
    K = sorted({BitVector(v) for v in kernel})
    for v in K:
        if len(v) != dim:
            raise DimensionError(f"kernel vector {v} does not lie in F^{dim}")
    witness = gf2.closure_witness(K)
    if witness is not None:
        a, b = witness
        raise ClosureError(f"not a subspace: {a} + {b} = {a ^ b} is missing", witness)
    assigned: set[BitVector] = set()
    cosets = []
    for u in gf2.enumerate_space(dim, limit):
        if u in assigned:
            continue
        coset = tuple(sorted(u ^ x for x in K))
        assigned.update(coset)
        cosets.append(coset)
    return CosetPartition(dim, tuple(K), tuple(cosets))


def level_partitions(chain: Sequence[BitMatrix], dim: int, limit: int = gf2.DEFAULT_LIMIT) -> list[CosetPartition]:
    """Coset partitions of ``ker(chain[i])`` for levels 0..n-1."""
    return [coset_partition(gf2.kernel_vectors(M, limit), dim, limit) for M in list(chain)[:-1]]


def to_codeword_cosets(spec: CodeSpec, p: CosetPartition) -> list[list[BitVector]]:
    """Replace every information vector in the partition by its codeword."""
    if p.ambient_dim != spec.k:
        raise DimensionError(f"partition of F^{p.ambient_dim} does not match k = {spec.k}")
    return [[gf2.multiply(u, spec.G) for u in coset] for coset in p.cosets]


def quotient_trellis(generator: BitMatrix, chain: Sequence[BitMatrix], limit: int = gf2.DEFAULT_LIMIT) -> Trellis:
    """Trellis with level-i vertices ``F^k / ker(chain[i])``.

    Vertices are labeled by coset representatives, in ascending order.
    Level n reuses the level-0 partition.
    """
    k, n = generator.rows, generator.cols
    if len(chain) != n + 1:
        raise DimensionError(f"need {n + 1} state matrices, got {len(chain)}")
    if k > limit:
        raise CapacityError(f"k = {k} exceeds the exhaustive limit {limit}")
    parts = level_partitions(chain, k, limit)
    levels = [p.representatives for p in parts]
    edges: list[set] = [set() for _ in range(n)]
    for u in gf2.enumerate_space(k, limit):
        c = gf2.multiply(u, generator)
        idx = [p.index_of(u) for p in parts]
        for i in range(1, n + 1):
            edges[i - 1].add((idx[i - 1], c[i - 1], idx[i % n]))
    return Trellis(n, levels, edges)


def build_algebraic(spec: CodeSpec, chain: StateMatrixChain | None = None,
                    limit: int = gf2.DEFAULT_LIMIT) -> Trellis:
    chain = chain or state_matrices(spec)
    return quotient_trellis(spec.G, chain.matrices, limit)


def edge_matrix(generator: BitMatrix, chain: Sequence[BitMatrix], i: int) -> BitMatrix:
    """The concatenation ``(N_{i-1} | ḡ_i | N_i)`` for section i (1 <= i <= n)."""
    return gf2.hstack(chain[i - 1], generator.column(i - 1), chain[i])


def edge_space_dim(spec: CodeSpec, chain: StateMatrixChain | None, i: int) -> int:
    """``k - dim ker(N_{i-1} | ḡ_i | N_i)``, i.e. log2 of the edge count of section i."""
    if not 1 <= i <= spec.n:
        raise IndexError(f"section {i} outside 1..{spec.n}")
    chain = chain or state_matrices(spec)
    return gf2.rank(edge_matrix(spec.G, chain.matrices, i))


# -- the subcode route ---------------------------------------------------------

@dataclass(frozen=True)
class SubcodeDecomposition:
    """``C`` split into cosets of the subcode ``C_0`` spanned by the conventional-span rows.

    Coset l has representative ``Σ_j bit_j(l)·g_{d_j}``, where ``g_{d_1}, g_{d_2}, ...``
    are the circular-span rows and bit 0 is the least significant bit of l.
    """

    conventional_rows: tuple[int, ...]     # 1-based
    circular_rows: tuple[int, ...]         # 1-based
    subcode: tuple[BitVector, ...]
    cosets: tuple[tuple[BitVector, ...], ...]
    offsets: tuple[BitVector, ...]         # information vector of each representative

    @property
    def representatives(self) -> tuple[BitVector, ...]:
        return tuple(c[0] for c in self.cosets)

    def coset_of(self, c: Sequence[int]) -> int:
        c = BitVector(c)
        for l, coset in enumerate(self.cosets):
            if c in coset:
                return l
        raise MembershipError(f"{c} is not a codeword")


def subcode_decomposition(spec: CodeSpec, limit: int = gf2.DEFAULT_LIMIT) -> SubcodeDecomposition:
    conv = tuple(l for l, s in enumerate(spec.spans, start=1) if not s.is_circular)
    circ = tuple(l for l, s in enumerate(spec.spans, start=1) if s.is_circular)
    if spec.k > limit:
        raise CapacityError(f"k = {spec.k} exceeds the exhaustive limit {limit}")
    G0 = spec.G.select_rows([l - 1 for l in conv])
    subcode = tuple(gf2.multiply(v, G0) for v in gf2.enumerate_space(len(conv), limit))
    cosets, offsets = [], []
    for l in range(2 ** len(circ)):
        u = [0] * spec.k
        for j, row in enumerate(circ):
            u[row - 1] = (l >> j) & 1
        u = BitVector(u)
        rep = gf2.multiply(u, spec.G)
        cosets.append(tuple(rep ^ c0 for c0 in subcode))
        offsets.append(u)
    return SubcodeDecomposition(conv, circ, subcode, tuple(cosets), tuple(offsets))


def pi_mapping(spec: CodeSpec, l: int, i: int, c: Sequence[int],
               decomposition: SubcodeDecomposition | None = None) -> BitVector:
    """Partial syndrome ``c_1h_1ᵀ + … + c_ih_iᵀ`` offset by the displacement of coset l's representative."""
    dec = decomposition or subcode_decomposition(spec)
    c = BitVector(c)
    if not 0 <= l < len(dec.cosets) or c not in dec.cosets[l]:
        raise MembershipError(f"{c} is not in coset C_{l}")
    if not 0 <= i <= spec.n:
        raise IndexError(f"level {i} outside 0..{spec.n}")
    H = spec.H.array.astype(np.int64)
    partial = (np.asarray(c[:i], dtype=np.int64) @ H[:, :i].T) & 1 if i else np.zeros(H.shape[0], dtype=np.int64)
    return BitVector(partial) ^ displacement_vector(spec, dec.offsets[l], displacement_matrix(spec))


def pi_zero_set(spec: CodeSpec, i: int, decomposition: SubcodeDecomposition | None = None) -> set[BitVector]:
    """Union over l of ``{c in C_l : π_{i,l}(c) = 0}``."""
    dec = decomposition or subcode_decomposition(spec)
    out = set()
    for l, coset in enumerate(dec.cosets):
        for c in coset:
            if not any(pi_mapping(spec, l, i, c, dec)):
                out.add(c)
    return out
