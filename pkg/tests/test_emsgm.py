import pytest

from tbtrellis import gf2
from tbtrellis.code import CodeSpec, Span
from tbtrellis.corpus import corpus
from tbtrellis.emsgm import activity_report, activity_table, build_emsgm, check_B_lemma, is_emsgm
from tbtrellis.errors import ValidationError
from tbtrellis.gf2 import BitMatrix
from tbtrellis.kv import build_kv, kv_state_matrices, mu_semiopen
from tbtrellis.trellis import label_code, profile

HB_ALPHA = (2, 2, 2, 3, 3, 2, 2, 2)
HB_BETA = (1, 2, 2, 2, 2, 2, 1, 1)


def test_activity_sets(hb):
    t = activity_table(hb.spans, 7)
    assert t.A[4] == {1, 2, 3} and t.B[4] == {1, 3}
    assert t.A[0] == t.A[7] and t.B[7] == t.B[0]
    assert t.alpha == HB_ALPHA and t.beta == HB_BETA


def test_activity_of_no_spans():
    t = activity_table([], 4)
    assert t.alpha == (0,) * 5 and t.beta == (0,) * 5


def test_full_span_is_excluded_at_its_end():
    t = activity_table([Span(3, 2)], 5)
    assert [1 in b for b in t.B[:5]] == [True, True, False, True, True]


def test_is_emsgm():
    assert is_emsgm([Span(1, 3), Span(2, 4)]).ok
    rep = is_emsgm([Span(1, 3), Span(1, 4), Span(2, 4)])
    assert rep.duplicate_starts == [(1, 2)] and rep.duplicate_ends == [(2, 3)]
    assert "rows 1 and 2 share a start" in rep.describe()
    assert is_emsgm([]).describe() == "ok"


def test_B_lemma(hb):
    assert check_B_lemma(hb.spans, 7).ok
    mu = [list(r) for r in mu_semiopen(hb.spans, 7)]
    mu[3][1] ^= 1
    rep = check_B_lemma(hb.spans, 7, mu)
    assert rep.mismatches == ((3, 2),)


def test_B_lemma_corpus():
    for spec in corpus(5, 100):
        assert check_B_lemma(spec.spans, spec.n).ok


def test_counts_from_activity(hb, ha):
    for spec in (hb, ha):
        t = activity_table(spec.spans, spec.n)
        p = profile(build_emsgm(spec))
        assert p.vertex_counts == tuple(2 ** b for b in t.beta[:-1])
        assert p.edge_counts == tuple(2 ** a for a in t.alpha[1:])


def test_identical_to_kv(hb, ha):
    for spec in [hb, ha] + corpus(6, 40):
        assert build_emsgm(spec) == build_kv(spec)


def test_kernel_dimension_is_k_minus_beta():
    for spec in corpus(9, 40):
        t = activity_table(spec.spans, spec.n)
        M = kv_state_matrices(spec.spans, spec.k, spec.n)
        assert [gf2.kernel_dim(M[i]) for i in range(spec.n)] == [spec.k - b for b in t.beta[:-1]]


def test_single_generator():
    G = BitMatrix(["0110"])
    H = BitMatrix(gf2.kernel_basis(gf2.transpose(G)), cols=4)
    T = build_emsgm(CodeSpec(G, H, (Span(2, 3),)))
    assert profile(T).vertex_counts == (1, 1, 2, 1)
    assert sorted(str(w) for w in label_code(T)) == ["0000", "0110"]


def test_rejects_duplicate_starts():
    G = BitMatrix(["1100", "1010"])
    H = BitMatrix(gf2.kernel_basis(gf2.transpose(G)), cols=4)
    with pytest.raises(ValidationError, match="share a start"):
        build_emsgm(CodeSpec(G, H, (Span(1, 2), Span(1, 3))))


def test_activity_report(hb):
    text = activity_report(activity_table(hb.spans, 7))
    lines = text.splitlines()
    assert lines[0].split() == ["i", "A_i", "B_i", "alpha", "beta"]
    assert lines[5].split() == ["4", "{1,2,3}", "{1,3}", "3", "2"]
    assert len(lines) == 9
    assert len({len(l) for l in lines}) == 1


@pytest.mark.parametrize("full", [Span(3, 2), Span(1, 5)])
def test_full_length_span_needs_no_alpha_correction(full):
    G = BitMatrix(["11111", "01100"])
    H = BitMatrix(gf2.kernel_basis(gf2.transpose(G)), cols=5)
    spec = CodeSpec(G, H, (full, Span(2, 3)))
    assert activity_table(spec.spans, 5).alpha[1:] == (1, 2, 2, 1, 1)
    assert build_emsgm(spec) == build_kv(spec)
