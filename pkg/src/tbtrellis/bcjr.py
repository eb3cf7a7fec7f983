"""Tail-biting BCJR trellises and their BCJR duals.

The state of codeword ``c = u·G`` at level i is ``u·N_i`` where
``N_i = G_i H_iᵀ + Θ`` (``G_i``, ``H_i``: first i columns) and Θ is the
displacement matrix induced by the span list.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import gf2
from .code import CodeSpec
from .errors import CapacityError, DimensionError
from .gf2 import BitMatrix, BitVector
from .trellis import Trellis, from_paths


@dataclass(frozen=True)
class Displacement:
    theta: BitMatrix

    def row(self, l: int) -> BitVector:
        """The displacement vector of generator l (1-based)."""
        return self.theta.row(l - 1)


def displacement_matrix(spec: CodeSpec) -> Displacement:
    """Row l is the sum of ``g_lj·h_jᵀ`` for j from the span start a_l to n.

    For a conventional span this sum runs over the whole support of g_l and
    so vanishes whenever G·Hᵀ = 0.
    """
    n, r = spec.n, spec.H.rows
    G, H = spec.G.array, spec.H.array
    theta = np.zeros((spec.k, r), dtype=np.uint8)
    for l, s in enumerate(spec.spans):
        tail = slice(s.start - 1, n)
        theta[l] = (G[l, tail].astype(np.int64) @ H[:, tail].T.astype(np.int64)) & 1
    return Displacement(BitMatrix(theta.reshape(spec.k, r)))


def displacement_vector(spec: CodeSpec, u: Sequence[int], theta: Displacement | None = None) -> BitVector:
    """``d_c`` for ``c = u·G``; linear in u."""
    theta = theta or displacement_matrix(spec)
    return gf2.multiply(u, theta.theta)


@dataclass(frozen=True)
class StateMatrixChain:
    """State matrices ``N_0 .. N_n``; ``N_n`` equals ``N_0`` for a valid code."""

    matrices: tuple[BitMatrix, ...]

    def __getitem__(self, i: int) -> BitMatrix:
        return self.matrices[i]

    def __len__(self) -> int:
        return len(self.matrices)

    def __iter__(self):
        return iter(self.matrices)

    @property
    def depth(self) -> int:
        return len(self.matrices) - 1

    def transpose(self) -> "StateMatrixChain":
        return StateMatrixChain(tuple(gf2.transpose(M) for M in self.matrices))


def state_matrices(spec: CodeSpec, theta: Displacement | None = None) -> StateMatrixChain:
    """``N_0 = Θ`` and ``N_i = N_{i-1} + ḡ_i h_iᵀ`` for i = 1..n."""
    theta = theta or displacement_matrix(spec)
    G, H = spec.G.array, spec.H.array
    cur = theta.theta.array.copy()
    out = [BitMatrix(cur.reshape(spec.k, spec.H.rows))]
    for i in range(spec.n):
        cur = cur ^ np.outer(G[:, i], H[:, i]).astype(np.uint8)
        out.append(BitMatrix(cur.reshape(spec.k, spec.H.rows)))
    return StateMatrixChain(tuple(out))


def codeword_state(spec: CodeSpec, u: Sequence[int], i: int, chain: StateMatrixChain | None = None) -> BitVector:
    """BCJR state label ``u·N_i`` of the codeword ``u·G`` at level i (0 <= i <= n)."""
    if not 0 <= i <= spec.n:
        raise IndexError(f"level {i} outside 0..{spec.n}")
    chain = chain or state_matrices(spec)
    return gf2.multiply(u, chain[i])


def state_trellis(generator: BitMatrix, chain: Sequence[BitMatrix], limit: int = gf2.DEFAULT_LIMIT) -> Trellis:
    """Trellis whose level-i vertices are the distinct values of ``u·chain[i]``.

    One closed path per information vector u; vertex ordinals follow first
    appearance over ascending u.
    """
    rows, n = generator.rows, generator.cols
    if len(chain) != n + 1:
        raise DimensionError(f"need {n + 1} state matrices, got {len(chain)}")
    if rows > limit:
        raise CapacityError(f"{rows} information bits exceed the exhaustive limit {limit}")
    U = np.array(gf2.enumerate_space(rows, limit), dtype=np.int64).reshape(2**rows, rows)
    words = (U @ generator.array.astype(np.int64)) & 1
    states = [(U @ M.array.astype(np.int64)) & 1 for M in chain]
    paths = []
    for r in range(U.shape[0]):
        paths.append(([BitVector(s[r]) for s in states], words[r]))
    return from_paths(n, paths, order="first")


def build_tbbcjr(spec: CodeSpec, limit: int = gf2.DEFAULT_LIMIT, chain: StateMatrixChain | None = None) -> Trellis:
    """The tail-biting BCJR trellis of ``(G, H, Θ)``; vertex labels are syndromes."""
    chain = chain or state_matrices(spec)
    return state_trellis(spec.G, chain.matrices, limit)


def build_dual(spec: CodeSpec, limit: int = gf2.DEFAULT_LIMIT, chain: StateMatrixChain | None = None) -> Trellis:
    """The BCJR-dual trellis of ``(H, G, Θᵀ)``: generator H, state matrices ``N_iᵀ``.

    Its label code is the dual code; vertex labels have k bits.
    """
    chain = chain or state_matrices(spec)
    return state_trellis(spec.H, chain.transpose().matrices, limit)
