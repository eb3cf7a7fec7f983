import pytest

from tbtrellis import gf2
from tbtrellis.algebraic import (build_algebraic, coset_partition, edge_matrix, edge_space_dim, pi_mapping,
                                 pi_zero_set, quotient_trellis, subcode_decomposition, to_codeword_cosets)
from tbtrellis.bcjr import build_tbbcjr, state_matrices
from tbtrellis.code import CodeSpec, Span
from tbtrellis.corpus import corpus
from tbtrellis.errors import ClosureError, MembershipError
from tbtrellis.gf2 import BitMatrix, BitVector
from tbtrellis.suite import bcjr_witness
from tbtrellis.trellis import isomorphic, label_code, profile, verify_mapping

from worked import (HB_C10, HB_KER, KV_PARTITION_1, DUAL_KER_EDGE7, HA_C0, HA_C10, HA_C60,
                    HA_KER)


def strs(vs):
    return {str(v) for v in vs}


def test_partition_of_kv_kernel():
    p = coset_partition(["0000", "0010", "1000", "1010"], 4)
    assert [str(r) for r in p.representatives] == ["0000", "0001", "0100", "0101"]
    assert [strs(c) for c in p.cosets] == KV_PARTITION_1
    assert p.index_of("1111") == 3


def test_partition_trivial_kernels():
    assert len(coset_partition(gf2.enumerate_space(3), 3)) == 1
    p = coset_partition(["000"], 3)
    assert len(p) == 8 and all(len(c) == 1 for c in p.cosets)
    assert p.representatives[0] == BitVector("000")


def test_partition_rejects_non_subspace():
    with pytest.raises(ClosureError) as exc:
        coset_partition(["000", "011", "101"], 3)
    a, b = exc.value.witness
    assert str(a ^ b) == "110"


def test_codeword_cosets(hb, ha):
    for spec, ker, want in ((hb, HB_KER[1], HB_C10), (ha, HA_KER[1], HA_C10)):
        cosets = to_codeword_cosets(spec, coset_partition(ker, 4))
        assert strs(cosets[0]) == want
    only_zero = to_codeword_cosets(hb, coset_partition(["0000"], 4))
    assert strs(only_zero[0]) == {"0000000"}


def test_kernels_of_both_examples(hb, ha):
    for spec, want in ((hb, HB_KER), (ha, HA_KER)):
        chain = state_matrices(spec)
        assert [strs(gf2.kernel_vectors(chain[i])) for i in range(7)] == want


def test_prop1_with_explicit_witness(hb, ha):
    for spec in (hb, ha):
        chain = state_matrices(spec)
        A, B = build_algebraic(spec, chain), build_tbbcjr(spec, chain=chain)
        assert isomorphic(A, B).isomorphic
        assert verify_mapping(A, B, bcjr_witness(spec, A, B, chain))


def test_coset_trace(ha):
    """Edges read off by locating each codeword in the codeword cosets of every level."""
    chain = state_matrices(ha)
    n = ha.n
    cosets = [to_codeword_cosets(ha, coset_partition(gf2.kernel_vectors(chain[i]), 4)) for i in range(n)]
    expected = [set() for _ in range(n)]
    for c in {w for level in cosets for coset in level for w in coset}:
        where = [next(l for l, cos in enumerate(cosets[i]) if c in cos) for i in range(n)]
        for i in range(1, n + 1):
            expected[i - 1].add((where[i - 1], c[i - 1], where[i % n]))
    T = build_algebraic(ha)
    assert [set(map(tuple, sec)) for sec in T.edges] == expected


def test_zero_code_single_path():
    spec = CodeSpec(BitMatrix([], cols=3), BitMatrix.identity(3), ())
    T = build_algebraic(spec)
    assert profile(T).vertex_counts == (1, 1, 1)
    assert [str(w) for w in label_code(T)] == ["000"]


def test_edge_space_last_section(kvfix):
    spec = kvfix.spec
    chain = state_matrices(spec)
    ker = strs(gf2.kernel_vectors(edge_matrix(spec.G, chain.matrices, 7)))
    assert ker == DUAL_KER_EDGE7
    assert edge_space_dim(spec, chain, 7) == 2
    with pytest.raises(IndexError):
        edge_space_dim(spec, chain, 0)


def test_edge_space_of_zero_concatenation():
    Z = BitMatrix.zeros(3, 2)
    G = BitMatrix.zeros(3, 2)
    assert gf2.kernel_dim(edge_matrix(G, [Z, Z, Z], 1)) == 3


def test_edge_counts_match_on_corpus():
    for spec in corpus(21, 20):
        chain = state_matrices(spec)
        T = build_algebraic(spec, chain)
        for i in range(1, spec.n + 1):
            assert len(T.section(i)) == 2 ** edge_space_dim(spec, chain, i)
        for i in range(spec.n):
            assert len(T.levels[i]) * 2 ** gf2.kernel_dim(chain[i]) == 2 ** spec.k


def test_subcode_decomposition(ha, hb):
    dec = subcode_decomposition(ha)
    assert strs(dec.subcode) == HA_C0
    assert len(dec.cosets) == 4
    assert dec.cosets[1][0] == BitVector("0100011")
    assert dec.coset_of("1111111") in range(4)
    G = BitMatrix(["1100", "0011"])
    H = BitMatrix(gf2.kernel_basis(gf2.transpose(G)), cols=4)
    flat = subcode_decomposition(CodeSpec(G, H, (Span(1, 2), Span(3, 4))))
    assert len(flat.cosets) == 1 and len(flat.subcode) == 4


def test_pi_mapping(ha):
    assert pi_mapping(ha, 0, 1, "0010111") == BitVector("000")
    for i in range(8):
        assert pi_mapping(ha, 0, i, "0000000") == BitVector("000")
    with pytest.raises(MembershipError):
        pi_mapping(ha, 1, 1, "0010111")
    assert strs(pi_zero_set(ha, 6)) == HA_C60


def test_pi_zero_sets_equal_kernels():
    for spec in corpus(4, 15):
        chain = state_matrices(spec)
        dec = subcode_decomposition(spec)
        for i in range(spec.n):
            ker = to_codeword_cosets(spec, coset_partition(gf2.kernel_vectors(chain[i]), spec.k))[0]
            assert pi_zero_set(spec, i, dec) == set(ker)


def test_quotient_trellis_requires_full_chain(hb):
    with pytest.raises(ValueError):
        quotient_trellis(hb.G, state_matrices(hb).matrices[:-1])
