import random

import pytest

from tbtrellis import gf2
from tbtrellis.bcjr import (build_dual, build_tbbcjr, codeword_state, displacement_matrix, displacement_vector,
                           state_matrices)
from tbtrellis.code import CodeSpec, Span
from tbtrellis.corpus import corpus
from tbtrellis.errors import CapacityError
from tbtrellis.gf2 import BitMatrix, BitVector
from tbtrellis.trellis import label_code, profile

from oracles import vecmat, bits
from worked import HB_N, HB_THETA, DUAL_KER_DUAL6, HA_THETA


def rows(M):
    return [str(r) for r in M.row_vectors()]


def test_theta_values(hb, ha):
    assert rows(displacement_matrix(hb).theta) == HB_THETA
    assert rows(displacement_matrix(ha).theta) == HA_THETA


def test_theta_oracle_sum(ha):
    """Row l is the explicit sum of g_lj h_j over j = a_l..n."""
    H = [bits(r) for r in rows(ha.H)]
    for l, (g, s) in enumerate(zip(ha.G.row_vectors(), ha.spans), start=1):
        acc = [0] * 3
        for j in range(s.start, 8):
            if g[j - 1]:
                acc = [x ^ H[r][j - 1] for r, x in enumerate(acc)]
        assert list(displacement_matrix(ha).row(l)) == acc


def test_conventional_spans_give_zero_theta():
    for spec in corpus(11, 30):
        theta = displacement_matrix(spec)
        for l, s in enumerate(spec.spans, start=1):
            if not s.is_circular:
                assert not any(theta.row(l))
    G = BitMatrix(["1100", "0011"])
    H = BitMatrix(gf2.kernel_basis(gf2.transpose(G)), cols=4)
    assert displacement_matrix(CodeSpec(G, H, (Span(1, 2), Span(3, 4)))).theta.is_zero()


def test_displacement_vector(hb, ha):
    assert displacement_vector(hb, "0001") == BitVector("101")
    assert displacement_vector(hb, "0000") == BitVector("000")
    assert displacement_vector(ha, "0011") == BitVector("010")


def test_state_matrices_printed(hb):
    chain = state_matrices(hb)
    assert [rows(M) for M in chain.matrices[:7]] == HB_N
    assert chain[7] == chain[0] == displacement_matrix(hb).theta


def test_state_matrix_definition(hb):
    """N_i = G_i H_iᵀ + Θ, evaluated without the incremental update."""
    chain = state_matrices(hb)
    theta = displacement_matrix(hb).theta
    for i in range(8):
        Gi, Hi = hb.G.first_columns(i), hb.H.first_columns(i)
        direct = gf2.matmul(Gi, gf2.transpose(Hi)) + theta if i else theta
        assert chain[i] == direct


def test_codeword_state(hb):
    assert codeword_state(hb, "0000", 3) == BitVector("000")
    assert codeword_state(hb, "0001", 0) == BitVector("101")
    assert codeword_state(hb, "0001", 7) == BitVector("101")
    with pytest.raises(IndexError):
        codeword_state(hb, "0001", 8)


def test_build_tbbcjr_profiles(hb, ha):
    assert profile(build_tbbcjr(hb)).vertex_counts == (2, 4, 4, 4, 4, 4, 2)
    assert profile(build_tbbcjr(ha)).vertex_counts[0] == 4
    with pytest.raises(CapacityError):
        build_tbbcjr(hb, limit=2)


def test_zero_code_single_path():
    n = 4
    spec = CodeSpec(BitMatrix([], cols=n), BitMatrix.identity(n), ())
    T = build_tbbcjr(spec)
    assert profile(T).vertex_counts == (1,) * n
    assert [str(w) for w in label_code(T)] == ["0000"]


def test_dual_trellis(hb):
    D = build_dual(hb)
    assert profile(D).vertex_counts == (2, 4, 4, 4, 4, 4, 2)
    duals = {tuple(vecmat(list(v), [list(r) for r in hb.H.row_vectors()])) for v in gf2.enumerate_space(3)}
    words = label_code(D)
    assert len(words) == 8 and {tuple(w) for w in words} == duals
    assert all(len(lab) == 4 for lab in D.levels[0])


def test_dual_kernel_last_section(dualfix):
    dual_chain = state_matrices(dualfix.spec).transpose()
    assert {str(v) for v in gf2.kernel_vectors(dual_chain[6])} == DUAL_KER_DUAL6


def test_chain_invariants():
    rng = random.Random(2)
    for spec in corpus(rng.randint(0, 10**6), 25):
        chain = state_matrices(spec)
        T = build_tbbcjr(spec, chain=chain)
        assert chain.transpose().transpose() == chain
        assert chain[spec.n] == chain[0]
        for i in range(1, spec.n + 1):
            step = BitMatrix([[a & b for b in spec.h(i)] for a in spec.gbar(i)], cols=spec.H.rows)
            assert chain[i] == chain[i - 1] + step
        for i in range(spec.n):
            assert len(T.levels[i]) == 2 ** gf2.rank(chain[i])
        # u·N_i = u'·N_i iff the codewords share a level-i vertex
        us = gf2.enumerate_space(spec.k)
        for i in range(spec.n):
            where = {lab: o for o, lab in enumerate(T.levels[i])}
            for u in us[:8]:
                for v in us[:8]:
                    same = gf2.multiply(u, chain[i]) == gf2.multiply(v, chain[i])
                    assert same == (where[gf2.multiply(u, chain[i])] == where[gf2.multiply(v, chain[i])])
