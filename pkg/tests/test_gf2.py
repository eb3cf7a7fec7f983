import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tbtrellis import gf2
from tbtrellis.errors import CapacityError, DimensionError
from tbtrellis.gf2 import BitMatrix, BitVector

from oracles import left_kernel, rank as brute_rank, vecmat
from worked import HB_N


def matrices(max_rows=8, max_cols=8):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r)))


def test_bitvector_roundtrips():
    v = BitVector("0110")
    assert str(v) == "0110"
    assert v.to_int() == 6
    assert BitVector.from_int(6, 4) == v
    assert v.support() == [1, 2]
    assert (v ^ BitVector("0101")) == BitVector("0011")
    with pytest.raises(ValueError):
        BitVector("012")
    with pytest.raises(ValueError):
        BitVector.from_int(16, 4)
    with pytest.raises(DimensionError):
        v ^ BitVector("01")


def test_multiply_printed_state_matrix():
    N1 = BitMatrix(HB_N[1])
    assert gf2.multiply((0, 1, 0, 0), N1) == BitVector("110")


def test_multiply_zero_vector():
    M = BitMatrix(["1011", "0110", "1111"])
    assert gf2.multiply((0, 0, 0), M) == BitVector.zeros(4)


def test_multiply_dimension_error_names_lengths():
    with pytest.raises(DimensionError, match="length 2.*3 rows"):
        gf2.multiply((1, 0), BitMatrix(["1", "0", "1"]))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_multiply_matches_naive_oracle(data):
    rows = data.draw(st.lists(st.lists(st.integers(0, 1), min_size=7, max_size=7), min_size=4, max_size=4))
    u = data.draw(st.lists(st.integers(0, 1), min_size=4, max_size=4))
    assert list(gf2.multiply(u, BitMatrix(rows))) == vecmat(u, rows)


def test_kernel_of_printed_n1():
    got = {str(v) for v in gf2.kernel_vectors(BitMatrix(HB_N[1]))}
    assert got == {"0000", "0010", "1000", "1010"}


def test_kernel_trivial_cases():
    assert len(gf2.kernel_basis(BitMatrix.zeros(3, 5))) == 3
    assert gf2.kernel_basis(BitMatrix.identity(4)) == []


def test_rank_values():
    assert gf2.rank(BitMatrix(HB_N[1])) == 2
    assert gf2.rank(BitMatrix.zeros(3, 4)) == 0
    assert gf2.rank(BitMatrix.identity(3)) == 3


def test_enumerate_space_order():
    assert [str(v) for v in gf2.enumerate_space(2)] == ["00", "01", "10", "11"]
    assert gf2.enumerate_space(0) == [BitVector()]
    vs = gf2.enumerate_space(4)
    assert len(vs) == 16 and str(vs[0]) == "0000" and str(vs[-1]) == "1111"
    with pytest.raises(CapacityError):
        gf2.enumerate_space(21)
    assert len(gf2.enumerate_space(3, limit=3)) == 8


def test_transpose_examples():
    T = gf2.transpose(BitMatrix(HB_N[6]))
    assert T.shape == (3, 4)
    assert T.row(0) == BitVector("1000")
    Z = gf2.transpose(BitMatrix.zeros(2, 5))
    assert Z.shape == (5, 2) and Z.is_zero()
    one = BitMatrix(["1"])
    assert gf2.transpose(one) == one


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rank_transpose_invariant(rows):
    M = BitMatrix(rows)
    assert gf2.rank(M) == gf2.rank(gf2.transpose(M)) == brute_rank(rows)
    assert gf2.transpose(gf2.transpose(M)) == M


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_kernel_basis_spans_left_kernel(rows):
    M = BitMatrix(rows)
    K = gf2.kernel_vectors(M)
    assert len(K) == 2 ** (M.rows - gf2.rank(M))
    assert {tuple(v) for v in K} == left_kernel(rows)
    for v in K:
        assert not any(gf2.multiply(v, M))


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_multiply_is_linear(data):
    rows = data.draw(matrices(6, 6))
    k = len(rows)
    u = data.draw(st.lists(st.integers(0, 1), min_size=k, max_size=k))
    v = data.draw(st.lists(st.integers(0, 1), min_size=k, max_size=k))
    M = BitMatrix(rows)
    assert gf2.multiply(BitVector(u) ^ BitVector(v), M) == gf2.multiply(u, M) ^ gf2.multiply(v, M)


def test_rref_pivoting_is_deterministic():
    M = BitMatrix(["0110", "1100", "1010"])
    R, piv = gf2.rref(M)
    assert piv == [0, 1]
    assert R == BitMatrix(["1010", "0110", "0000"])


def test_hstack_vector_becomes_column():
    M = gf2.hstack(BitMatrix(["10", "01"]), (1, 1))
    assert M == BitMatrix(["101", "011"])
    with pytest.raises(DimensionError):
        gf2.hstack(BitMatrix(["10"]), (1, 1))


def test_closure_witness():
    assert gf2.closure_witness(["00", "01", "10", "11"]) is None
    a, b = gf2.closure_witness(["00", "01", "10"])
    assert (a ^ b) == BitVector("11")


def test_bitmatrix_construction_checks():
    with pytest.raises(DimensionError):
        BitMatrix([[1, 0], [1]])
    with pytest.raises(ValueError):
        BitMatrix(np.array([[2]]))
    assert BitMatrix([], cols=3).shape == (0, 3)
    M = BitMatrix(["10", "01"])
    with pytest.raises(ValueError):
        M.array[0, 0] = 1
