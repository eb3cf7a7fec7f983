import random

import pytest

from tbtrellis.bcjr import build_dual, build_tbbcjr
from tbtrellis.algebraic import build_algebraic
from tbtrellis.code import enumerate_codewords
from tbtrellis.corpus import random_spec
from tbtrellis.errors import CapacityError
from tbtrellis.kv import build_kv
from tbtrellis.trellis import (Trellis, dot_header_lines, export_dot, first_difference, from_json, identical,
                               is_reduced, isomorphic, label_code, profile, to_json, verify_mapping)


def self_loop():
    return Trellis(1, [["0"]], [[(0, 0, 0), (0, 1, 0)]])


def zero_code(n=4):
    return Trellis(n, [["0"]] * n, [[(0, 0, 0)]] * n)


def permuted(T: Trellis, level: int) -> Trellis:
    """Reverse the vertex ordinals of one level."""
    n = T.depth
    m = len(T.levels[level])
    p = {o: m - 1 - o for o in range(m)}
    levels = [list(lv) for lv in T.levels]
    levels[level] = levels[level][::-1]
    edges = []
    for i in range(1, n + 1):
        sec = []
        for e in T.section(i):
            t = p[e.tail] if i - 1 == level else e.tail
            h = p[e.head] if i % n == level else e.head
            sec.append((t, e.symbol, h))
        edges.append(sec)
    return Trellis(n, levels, edges)


def test_label_code_of_bcjr_is_the_code(hb):
    T = build_tbbcjr(hb)
    words = label_code(T)
    assert len(words) == 16
    assert sorted(words) == sorted(c for _, c in enumerate_codewords(hb))


def test_label_code_small_cases():
    assert sorted(str(w) for w in label_code(self_loop())) == ["0", "1"]
    assert [str(w) for w in label_code(zero_code())] == ["0000"]


def test_label_code_capacity(hb):
    with pytest.raises(CapacityError):
        label_code(build_tbbcjr(hb), max_cycles=10)


def test_reduced(kvfix):
    assert is_reduced(build_kv(kvfix.spec)).ok
    assert is_reduced(Trellis(0, [], [])).ok
    T = zero_code(3)
    extra = Trellis(3, [["0", "1"], ["0"], ["0"]], [list(s) for s in T.edges])
    rep = is_reduced(extra)
    assert not rep.ok and rep.vertices == [(0, 1)]


def test_dead_edge_is_reported():
    T = Trellis(2, [["0", "1"], ["0"]], [[(0, 0, 0), (1, 1, 0)], [(0, 0, 0)]])
    rep = is_reduced(T)
    assert not rep.ok
    assert (1, (1, 1, 0)) in [(i, tuple(e)) for i, e in rep.edges]


def test_isomorphism_prop1(hb):
    res = isomorphic(build_algebraic(hb), build_tbbcjr(hb))
    assert res.isomorphic
    assert verify_mapping(build_algebraic(hb), build_tbbcjr(hb), res.mapping)
    assert res.label_linear


def test_isomorphic_reflexive_and_symmetric(hb, ha):
    for spec in (hb, ha):
        T = build_tbbcjr(spec)
        assert isomorphic(T, T).isomorphic
        P = permuted(T, 2)
        assert isomorphic(P, T).isomorphic and isomorphic(T, P).isomorphic
        assert not identical(P, T)
        assert first_difference(P, T) == "section 2"   # heads at level 2 are hit first


def test_primal_against_dual_is_distinct(hb):
    """Equal level sizes, different section sizes: no isomorphism."""
    T, D = build_tbbcjr(hb), build_dual(hb)
    assert profile(T).vertex_counts == profile(D).vertex_counts
    res = isomorphic(T, D)
    assert not res.isomorphic
    assert res.failed_level is not None


def test_isomorphism_random_permutations():
    rng = random.Random(5)
    for _ in range(15):
        T = build_tbbcjr(random_spec(rng))
        P = permuted(permuted(T, 0), T.depth - 1)
        assert isomorphic(T, P).isomorphic


def test_isomorphism_detects_relabeled_symbol(hb):
    T = build_tbbcjr(hb)
    edges = [list(s) for s in T.edges]
    t, a, h = edges[0][0]
    edges[0][0] = (t, 1 - a, h)
    U = Trellis(T.depth, T.levels, edges)
    assert not isomorphic(T, U).isomorphic


def test_profile(hb, ha):
    p = profile(build_tbbcjr(hb))
    assert p.vertex_counts == (2, 4, 4, 4, 4, 4, 2)
    for i in range(1, 8):
        assert sum(p.out_degrees[i - 1]) == p.edge_counts[i - 1] == sum(p.in_degrees[i % 7])
    assert profile(build_algebraic(ha)).vertex_counts[0] == 4
    single = profile(zero_code())
    assert set(single.vertex_counts) == set(single.edge_counts) == {1}


def test_dot_export(hb):
    assert export_dot(Trellis(0, [], [])).count("\n") == dot_header_lines(0) + 1
    one = Trellis(1, [["0"]], [[(0, 1, 0)]])
    assert sum("->" in line for line in export_dot(one).splitlines()) == 1
    T = build_tbbcjr(hb)
    text = export_dot(T)
    assert len(text.splitlines()) == dot_header_lines(7) + T.vertex_count + T.edge_count + 1
    assert text == export_dot(build_tbbcjr(hb))
    assert "L0_0" in text and 'label="101"' in text


def test_json_roundtrip(kvfix):
    T = build_kv(kvfix.spec)
    assert identical(from_json(to_json(T)), T)


def test_invalid_edges_rejected():
    with pytest.raises(ValueError):
        Trellis(1, [["0"]], [[(0, 2, 0)]])
    with pytest.raises(ValueError):
        Trellis(1, [["0"]], [[(1, 0, 0)]])
