"""Closed-form complexity of tail-biting BCJR trellises, checked against counts.

Level sizes come from kernel dimensions of the state matrices, section sizes
from kernels of the concatenations ``(N_{i-1} | ḡ_i | N_i)``.  Every check
returns a per-level report so a single failing level is easy to locate.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

from . import gf2
from .algebraic import edge_matrix
from .bcjr import StateMatrixChain, state_matrices
from .code import CodeSpec
from .emsgm import ActivityTable
from .trellis import Profile, Trellis, profile


def _chain(spec: CodeSpec, chain: StateMatrixChain | None) -> StateMatrixChain:
    return chain if chain is not None else state_matrices(spec)


def kernel_dims(chain: Sequence) -> tuple[int, ...]:
    """``dim ker(N_i)`` for i = 0..n-1."""
    return tuple(gf2.kernel_dim(M) for M in list(chain)[:-1])


def edge_kernel_dims(generator, chain: Sequence) -> tuple[int, ...]:
    """``dim ker(N_{i-1} | ḡ_i | N_i)`` for sections i = 1..n."""
    n = generator.cols
    return tuple(gf2.kernel_dim(edge_matrix(generator, chain, i)) for i in range(1, n + 1))


def predict_vertex_counts(chain: StateMatrixChain | Sequence) -> tuple[int, ...]:
    matrices = list(chain)
    return tuple(2 ** (M.rows - d) for M, d in zip(matrices, kernel_dims(matrices)))


def predict_edge_counts(spec: CodeSpec, chain: StateMatrixChain | None = None) -> tuple[int, ...]:
    """``|E_i|`` for sections i = 1..n."""
    return generator_profile(spec.G, _chain(spec, chain)).edge_counts


def predict_degrees(spec: CodeSpec, chain: StateMatrixChain | None = None
                    ) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``(ρ^+, ρ^-)`` per level i = 0..n-1; section 0 is read as section n."""
    p = generator_profile(spec.G, _chain(spec, chain))
    return p.out_degrees, p.in_degrees


@dataclass(frozen=True)
class ComplexityProfile:
    vertex_counts: tuple[int, ...]
    edge_counts: tuple[int, ...]
    out_degrees: tuple[int, ...]
    in_degrees: tuple[int, ...]
    kernel_dims: tuple[int, ...]
    dual_kernel_dims: tuple[int, ...]
    alpha: tuple[int, ...] | None = None
    beta: tuple[int, ...] | None = None


def generator_profile(generator, chain: StateMatrixChain) -> ComplexityProfile:
    """Predictions for the trellis of ``generator`` over an arbitrary state-matrix chain.

    With ``(H, Nᵀ)`` this describes the BCJR-dual trellis.
    """
    n, k = generator.cols, generator.rows
    matrices = list(chain)
    kd = kernel_dims(matrices)
    ed = edge_kernel_dims(generator, matrices)
    return ComplexityProfile(
        vertex_counts=predict_vertex_counts(matrices),
        edge_counts=tuple(2 ** (k - d) for d in ed),
        out_degrees=tuple(2 ** (kd[i] - ed[i]) for i in range(n)),            # section i+1
        in_degrees=tuple(2 ** (kd[i] - ed[(i - 1) % n]) for i in range(n)),   # section i, 0 -> n
        kernel_dims=kd,
        dual_kernel_dims=kernel_dims(list(chain.transpose())),
    )


def complexity_profile(spec: CodeSpec, chain: StateMatrixChain | None = None,
                       table: ActivityTable | None = None) -> ComplexityProfile:
    chain = _chain(spec, chain)
    p = generator_profile(spec.G, chain)
    if table is None:
        return p
    return replace(p, alpha=table.alpha, beta=table.beta)


@dataclass
class LevelCheck:
    level: int
    quantity: str
    predicted: int
    counted: int

    @property
    def ok(self) -> bool:
        return self.predicted == self.counted


@dataclass
class ComparisonReport:
    checks: list[LevelCheck] = field(default_factory=list)
    nonuniform: list[tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.nonuniform and all(c.ok for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    @property
    def failures(self) -> list[LevelCheck]:
        return [c for c in self.checks if not c.ok]

    def format(self) -> str:
        lines = [f"{'level':>5}  {'quantity':<8}  {'predicted':>9}  {'counted':>7}  verdict"]
        for c in self.checks:
            lines.append(f"{c.level:>5}  {c.quantity:<8}  {c.predicted:>9}  {c.counted:>7}  "
                         f"{'OK' if c.ok else 'MISMATCH'}")
        for lvl, what in self.nonuniform:
            lines.append(f"{lvl:>5}  {what:<8}  degrees differ across vertices  MISMATCH")
        return "\n".join(lines) + "\n"


def compare_profile(predicted: ComplexityProfile, T: Trellis) -> ComparisonReport:
    """Predicted sizes and degrees against a built trellis, plus degree uniformity."""
    counted: Profile = profile(T)
    rep = ComparisonReport()
    n = T.depth
    for i in range(n):
        rep.checks.append(LevelCheck(i, "V", predicted.vertex_counts[i], counted.vertex_counts[i]))
    for i in range(1, n + 1):
        rep.checks.append(LevelCheck(i, "E", predicted.edge_counts[i - 1], counted.edge_counts[i - 1]))
    for i in range(n):
        outs, ins = set(counted.out_degrees[i]), set(counted.in_degrees[i])
        if len(outs) > 1:
            rep.nonuniform.append((i, "out"))
        if len(ins) > 1:
            rep.nonuniform.append((i, "in"))
        rep.checks.append(LevelCheck(i, "out", predicted.out_degrees[i], max(outs, default=0)))
        rep.checks.append(LevelCheck(i, "in", predicted.in_degrees[i], max(ins, default=0)))
    return rep


@dataclass(frozen=True)
class IdentityLine:
    level: int
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class IdentityReport:
    name: str
    lines: tuple[IdentityLine, ...]

    @property
    def ok(self) -> bool:
        return all(l.ok for l in self.lines)

    @property
    def violations(self) -> list[int]:
        return [l.level for l in self.lines if not l.ok]

    def __bool__(self) -> bool:
        return self.ok

    def format(self) -> str:
        return "".join(f"{self.name} level {l.level}: {l.lhs} = {l.rhs} {'OK' if l.ok else 'FAIL'}\n"
                       for l in self.lines)


def check_dual_vertex_equality(spec: CodeSpec, chain: StateMatrixChain | None = None) -> IdentityReport:
    """``|V_i|`` against ``|V̂_i|`` computed from the transposed chain."""
    chain = _chain(spec, chain)
    prim = predict_vertex_counts(chain)
    dual = predict_vertex_counts(chain.transpose())
    return IdentityReport("|V|=|V^|", tuple(IdentityLine(i, prim[i], dual[i]) for i in range(spec.n)))


def check_alpha_beta_duality(primal: ActivityTable, dual: ActivityTable) -> tuple[IdentityReport, IdentityReport]:
    """``α_i = -α̂_i + β̂_{i-1} + β̂_i + 1`` and the same with hats swapped, i = 1..n."""
    n = primal.n

    def one(name, a, ah, bh):
        return IdentityReport(name, tuple(IdentityLine(i, a[i], -ah[i] + bh[i - 1] + bh[i] + 1)
                                          for i in range(1, n + 1)))

    return (one("alpha", primal.alpha, dual.alpha, dual.beta),
            one("alpha^", dual.alpha, primal.alpha, primal.beta))


@dataclass(frozen=True)
class EdgeDimLine:
    level: int
    ker_n_prev: int
    ker_n: int
    ker_edge: int
    ker_dual_prev: int
    ker_dual: int
    ker_dual_edge: int
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class EdgeDimReport:
    lines: tuple[EdgeDimLine, ...]
    alpha_lines: tuple[IdentityLine, ...] = ()

    @property
    def ok(self) -> bool:
        return all(l.ok for l in self.lines) and all(l.ok for l in self.alpha_lines)

    def __bool__(self) -> bool:
        return self.ok

    def format(self) -> str:
        out = []
        for l in self.lines:
            out.append(f"level {l.level}: edge_dim={l.lhs} dual_side={l.rhs} "
                       f"kerN=({l.ker_n_prev},{l.ker_n}) kerE={l.ker_edge} "
                       f"kerN^=({l.ker_dual_prev},{l.ker_dual}) kerE^={l.ker_dual_edge} "
                       f"{'OK' if l.ok else 'FAIL'}")
        for l in self.alpha_lines:
            out.append(f"level {l.level}: alpha={l.lhs} edge_dim={l.rhs} {'OK' if l.ok else 'FAIL'}")
        return "\n".join(out) + "\n"


def check_edge_dimension_duality(spec: CodeSpec, dual_spec: CodeSpec | None = None,
                                 chain: StateMatrixChain | None = None) -> EdgeDimReport:
    """``k - dim ker(E_i) = (n-k+1) + dim ker(Ê_i) - dim ker N̂_{i-1} - dim ker N̂_i``.

    Ê_i is ``(N̂_{i-1} | h_i | N̂_i)`` with ``N̂ = Nᵀ``.  When a dual selection
    is supplied, both sides are also compared with the α of its primal span
    list, since the edge dimension of an e-MSGM trellis equals α_i.
    """
    chain = _chain(spec, chain)
    n, k = spec.n, spec.k
    prim = list(chain)
    dual = list(chain.transpose())
    lines = []
    for i in range(1, n + 1):
        ke = gf2.kernel_dim(edge_matrix(spec.G, prim, i))
        kde = gf2.kernel_dim(edge_matrix(spec.H, dual, i))
        kdp, kd = gf2.kernel_dim(dual[i - 1]), gf2.kernel_dim(dual[i])
        lines.append(EdgeDimLine(i, gf2.kernel_dim(prim[i - 1]), gf2.kernel_dim(prim[i]), ke,
                                 kdp, kd, kde, k - ke, (n - k + 1) + kde - kdp - kd))
    alpha_lines = ()
    if dual_spec is not None:
        from .emsgm import activity_table
        a = activity_table(spec.spans, n).alpha
        alpha_lines = tuple(IdentityLine(l.level, a[l.level], l.lhs) for l in lines)
    return EdgeDimReport(tuple(lines), alpha_lines)
