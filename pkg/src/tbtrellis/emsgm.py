"""Trellises read off an extended minimal-span generator matrix.

``A_i`` is the set of generators whose closed span contains position i and
``B_i = A_i ∩ A_{i+1}``.  A generator whose span covers every position and
ends at i is dropped from ``B_i``: its elementary trellis collapses there.
Levels wrap, so ``A_0 = A_n`` and ``B_n = B_0``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .code import CodeSpec, Span
from .errors import ValidationError
from .gf2 import BitVector
from .kv import mu_semiopen
from .trellis import Trellis


@dataclass(frozen=True)
class ActivityTable:
    n: int
    A: tuple[frozenset, ...]     # A[0..n], A[0] == A[n]
    B: tuple[frozenset, ...]     # B[0..n], B[n] == B[0]

    @property
    def alpha(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.A)

    @property
    def beta(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.B)


def activity_table(spans: Sequence[Span], n: int) -> ActivityTable:
    A = [frozenset()] * (n + 1)
    for i in range(1, n + 1):
        A[i] = frozenset(l for l, s in enumerate(spans, start=1) if s.contains(i))
    if n:
        A[0] = A[n]
    B = [frozenset()] * (n + 1)
    for i in range(n):
        collapsed = {l for l, s in enumerate(spans, start=1) if s.is_full(n) and s.end % n == i}
        B[i] = (A[i] & A[i + 1]) - collapsed
    if n:
        B[n] = B[0]
    return ActivityTable(n, tuple(A), tuple(B))


@dataclass
class EmsgmReport:
    duplicate_starts: list[tuple[int, int]] = field(default_factory=list)
    duplicate_ends: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.duplicate_starts or self.duplicate_ends)

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        parts = [f"rows {a} and {b} share a start" for a, b in self.duplicate_starts]
        parts += [f"rows {a} and {b} share an end" for a, b in self.duplicate_ends]
        return "; ".join(parts) or "ok"


def is_emsgm(spans: Sequence[Span]) -> EmsgmReport:
    """Distinct starts and distinct ends; offending row pairs are 1-based."""
    rep = EmsgmReport()
    for (i, s), (j, t) in itertools.combinations(enumerate(spans, start=1), 2):
        if s.start == t.start:
            rep.duplicate_starts.append((i, j))
        if s.end == t.end:
            rep.duplicate_ends.append((i, j))
    return rep


@dataclass(frozen=True)
class BLemmaReport:
    mismatches: tuple[tuple[int, int], ...]    # (level, generator)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def __bool__(self) -> bool:
        return self.ok


def check_B_lemma(spans: Sequence[Span], n: int, mu=None) -> BLemmaReport:
    """``μ_i^l = 1`` iff ``l ∈ B_i`` for every level i in 0..n-1 and every l."""
    mu = mu if mu is not None else mu_semiopen(spans, n)
    table = activity_table(spans, n)
    bad = []
    for i in range(n):
        for l in range(1, len(spans) + 1):
            if bool(mu[i][l - 1]) != (l in table.B[i]):
                bad.append((i, l))
    return BLemmaReport(tuple(bad))


def _embed(k: int, coords: Sequence[int], bits: Sequence[int]) -> BitVector:
    u = [0] * k
    for l, b in zip(coords, bits):
        u[l - 1] = b
    return BitVector(u)


def _ordinal(u: BitVector, coords: Sequence[int]) -> int:
    o = 0
    for l in coords:
        o = (o << 1) | u[l - 1]
    return o


def build_emsgm(spec: CodeSpec, table: ActivityTable | None = None) -> Trellis:
    """Vertices ``u ∩ B_i``; one edge per ``u ∩ A_i`` labeled ``(u ∩ A_i)·ḡ_i``."""
    rep = is_emsgm(spec.spans)
    if not rep:
        raise ValidationError(f"not an e-MSGM: {rep.describe()}", [rep.describe()])
    n, k = spec.n, spec.k
    table = table or activity_table(spec.spans, n)
    B = [sorted(b) for b in table.B]
    levels = [[_embed(k, B[i], bits) for bits in itertools.product((0, 1), repeat=len(B[i]))]
              for i in range(n)]
    edges = []
    for i in range(1, n + 1):
        A = sorted(table.A[i])
        g = spec.gbar(i)
        sec = set()
        for bits in itertools.product((0, 1), repeat=len(A)):
            u = _embed(k, A, bits)
            sym = sum(u[l - 1] & g[l - 1] for l in A) & 1
            sec.add((_ordinal(u, B[i - 1]), sym, _ordinal(u, B[i % n])))
        edges.append(sec)
    return Trellis(n, levels, edges)


def _fmt_set(s) -> str:
    return "{" + ",".join(str(x) for x in sorted(s)) + "}"


def activity_report(table: ActivityTable) -> str:
    """Fixed-column text: level, A_i, B_i, alpha_i, beta_i."""
    width = max([len(_fmt_set(s)) for s in table.A + table.B] + [4])
    lines = [f"{'i':>3}  {'A_i':<{width}}  {'B_i':<{width}}  {'alpha':>5}  {'beta':>4}"]
    for i in range(table.n + 1):
        lines.append(f"{i:>3}  {_fmt_set(table.A[i]):<{width}}  {_fmt_set(table.B[i]):<{width}}  "
                     f"{table.alpha[i]:>5}  {table.beta[i]:>4}")
    return "\n".join(lines) + "\n"
