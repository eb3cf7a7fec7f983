"""Run every construction and every check on one code specification.

``check_spec`` returns a :class:`SpecResult` whose ``checks`` map a short
name to a pass/fail flag.  ``run_suite`` does this for a seeded random
corpus and collects failures together with the offending specification.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import gf2
from .algebraic import build_algebraic, pi_zero_set, subcode_decomposition, to_codeword_cosets, coset_partition
from .bcjr import build_dual, build_tbbcjr, state_matrices
from .code import CodeSpec, enumerate_codewords
from .corpus import corpus
from .emsgm import activity_table, build_emsgm, check_B_lemma, is_emsgm
from .kv import build_kv, build_kv_algebraic, check_lemma1, kv_state_matrices
from .metrics import (check_alpha_beta_duality, check_dual_vertex_equality, check_edge_dimension_duality,
                      compare_profile, complexity_profile, generator_profile)
from .textio import spec_to_dict
from .trellis import Trellis, is_reduced, isomorphic, label_code, verify_mapping


@dataclass
class SpecResult:
    spec: CodeSpec
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def failed(self) -> list[str]:
        return [name for name, ok in self.checks.items() if not ok]


def bcjr_witness(spec: CodeSpec, T_alg: Trellis, T_bcjr: Trellis, chain) -> list[dict[int, int]]:
    """The map sending the coset of u at level i to the BCJR state ``u·N_i``."""
    mapping = []
    for i in range(spec.n):
        where = {lab: o for o, lab in enumerate(T_bcjr.levels[i])}
        mapping.append({o: where.get(gf2.multiply(rep, chain[i]), -1) for o, rep in enumerate(T_alg.levels[i])})
    return mapping


def _codes_match(T: Trellis, words: list) -> bool:
    return sorted(label_code(T)) == sorted(words)


def check_spec(spec: CodeSpec, dual: CodeSpec | None = None) -> SpecResult:
    res = SpecResult(spec)
    c = res.checks
    c["valid"] = spec.validate().ok
    if not c["valid"]:
        return res
    n, k = spec.n, spec.k
    chain = state_matrices(spec)
    codewords = [w for _, w in enumerate_codewords(spec)]
    dual_words = [gf2.multiply(v, spec.H) for v in gf2.enumerate_space(n - k)]

    T_bcjr = build_tbbcjr(spec, chain=chain)
    T_alg = build_algebraic(spec, chain)
    T_kv = build_kv(spec)
    T_kva = build_kv_algebraic(spec)
    T_dual = build_dual(spec, chain=chain)

    c["kernel_equality"] = check_lemma1(spec).ok
    c["algebraic_isomorphic"] = isomorphic(T_alg, T_bcjr).isomorphic
    c["algebraic_witness"] = verify_mapping(T_alg, T_bcjr, bcjr_witness(spec, T_alg, T_bcjr, chain))
    c["kv_identical"] = T_kv == T_kva
    c["kv_isomorphic"] = isomorphic(T_kv, T_bcjr).isomorphic

    if is_emsgm(spec.spans):
        T_em = build_emsgm(spec)
        c["emsgm_identical"] = T_em == T_kv
        c["mu_matches_B"] = check_B_lemma(spec.spans, n).ok
        table = activity_table(spec.spans, n)
        c["emsgm_counts"] = all(len(T_em.levels[i]) == 2 ** table.beta[i] for i in range(n)) and \
            all(len(T_em.section(i)) == 2 ** table.alpha[i] for i in range(1, n + 1))
        c["dimker_M_eq_k_minus_beta"] = all(
            gf2.kernel_dim(kv_state_matrices(spec.spans, k, n)[i]) == k - table.beta[i] for i in range(n))

    predicted = complexity_profile(spec, chain)
    for name, T in (("tbbcjr", T_bcjr), ("algebraic", T_alg), ("kv", T_kv)):
        c[f"metrics_{name}"] = compare_profile(predicted, T).ok
        c[f"label_code_{name}"] = _codes_match(T, codewords)
        c[f"reduced_{name}"] = is_reduced(T).ok
    c["label_code_dual"] = _codes_match(T_dual, dual_words)
    c["reduced_dual"] = is_reduced(T_dual).ok
    c["metrics_dual"] = compare_profile(generator_profile(spec.H, chain.transpose()), T_dual).ok
    c["dual_vertex_equality"] = check_dual_vertex_equality(spec, chain).ok
    c["edge_dim_duality"] = check_edge_dimension_duality(spec, chain=chain).ok

    dec = subcode_decomposition(spec)
    c["pi_zero_sets"] = all(
        pi_zero_set(spec, i, dec) == set(to_codeword_cosets(
            spec, coset_partition(gf2.kernel_vectors(chain[i]), k))[0])
        for i in range(n))

    if dual is not None:
        c["dual_valid"] = dual.validate().ok and is_emsgm(dual.spans).ok
        a, b = check_alpha_beta_duality(activity_table(spec.spans, n), activity_table(dual.spans, n))
        c["alpha_beta_duality"] = a.ok and b.ok
        c["edge_dim_alpha"] = check_edge_dimension_duality(spec, dual, chain).ok
    return res


@dataclass
class SuiteResult:
    seed: int
    count: int
    passed: int
    failures: list[SpecResult]
    seconds: float

    @property
    def ok(self) -> bool:
        return not self.failures

    def counterexamples(self) -> list[dict]:
        return [{"spec": spec_to_dict(r.spec), "failed": r.failed} for r in self.failures]


def run_suite(seed: int, count: int, inject_fault: bool = False) -> SuiteResult:
    """Check ``count`` random specs drawn with ``seed``.

    ``inject_fault`` corrupts the first spec's parity-check matrix so the
    failure path can be exercised.
    """
    t0 = time.perf_counter()
    specs = corpus(seed, count)
    failures = []
    for j, spec in enumerate(specs):
        if inject_fault and j == 0:
            H = spec.H.array.copy()
            H[:, 0] ^= 1
            spec = CodeSpec(spec.G, gf2.BitMatrix(H), spec.spans)
        r = check_spec(spec)
        if not r.ok:
            failures.append(r)
    return SuiteResult(seed, count, count - len(failures), failures, time.perf_counter() - t0)
