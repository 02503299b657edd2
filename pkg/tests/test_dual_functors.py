from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from segalbar import simplex_cats as sc
from segalbar.dual_functors import edge_arrow, h_map, h_ob, hj_map, j_inverse, j_map, j_ob
from segalbar.simplex_cats import Gen, IntervalMap, OpArrow, PartialMap, parse_map


def op_arrows(max_level):
    return st.tuples(st.integers(0, max_level), st.integers(0, max_level)).flatmap(
        lambda mn: st.sampled_from(sc.enumerate_hom("op", *mn))
    )


def j_by_galois(a: OpArrow) -> IntervalMap:
    """Oracle: search Δ_Int for the unique g with  g(j) <= i  iff  j <= f(i)  on inner points."""
    m, n = a.dom_level, a.cod_level
    f = a.underlying.images
    hits = [
        g for g in sc.enumerate_hom("interval", m + 2, n + 2)
        if all((g.images[j] <= i) == (j <= f[i]) for j in range(1, m + 1) for i in range(n + 1))
    ]
    assert len(hits) == 1
    return hits[0]


def test_objects():
    assert [j_ob(n) for n in range(4)] == [2, 3, 4, 5]
    assert [h_ob(n) for n in range(2, 6)] == [0, 1, 2, 3]
    with pytest.raises(sc.ShapeError):
        h_ob(1)


def test_j_examples():
    assert str(j_map(OpArrow.of(1, 0, [1]))) == "3→2:[0,0,1]"
    assert str(j_map(OpArrow.of(0, 1, [0, 0]))) == "2→3:[0,2]"
    assert j_inverse(parse_map_interval("3→2:[0,0,1]")) == OpArrow.of(1, 0, [1])
    for n in range(5):
        assert j_map(sc.op_identity(n)) == sc.interval_identity(n + 2)
        assert j_inverse(sc.interval_identity(n + 2)) == sc.op_identity(n)


def parse_map_interval(text):
    return IntervalMap(parse_map(text))


def test_j_matches_oracle_levels_4():
    for m in range(5):
        for n in range(5):
            for a in sc.enumerate_hom("op", m, n):
                assert j_map(a) == j_by_galois(a)
                assert j_inverse(j_map(a)) == a


def test_h_examples():
    assert str(h_map(parse_map_interval("4→3:[0,1,1,2]"))) == "2⇀1:[0,0]"
    assert str(h_map(parse_map_interval("3→3:[0,0,2]"))) == "1⇀1:[_]"
    for n in range(2, 7):
        assert h_map(sc.interval_identity(n)) == sc.partial_identity(n - 2)


def test_edge_arrows():
    assert str(edge_arrow(2, 1).underlying) == "2→3:[0,1]"
    assert str(j_map(edge_arrow(3, 2))) == "5→3:[0,0,1,2,2]"
    assert edge_arrow(1, 1) == sc.op_identity(1)
    assert str(hj_map(edge_arrow(3, 2))) == "3⇀1:[_,0,_]"
    with pytest.raises(sc.ShapeError):
        edge_arrow(3, 4)


def test_edge_arrows_are_projections():
    for n in range(2, 6):
        for j in range(1, n + 1):
            expected = PartialMap(n, 1, tuple(0 if i == j - 1 else None for i in range(n)))
            assert hj_map(edge_arrow(n, j)) == expected


def test_hj_goldens():
    # computed through j_map then h_map and frozen
    assert str(hj_map(parse_map("[1]→[2]:[0,0,1]"))) == "1⇀2:[1]"
    inner = Gen("d", 1, 2).op_arrow()
    assert str(j_map(inner)) == "4→3:[0,1,1,2]"
    assert hj_map(inner) == sc.as_partial(sc.generator("mu1"))
    assert hj_map(Gen("s", 0, 0).op_arrow()) == sc.as_partial(sc.generator("eta1"))
    assert hj_map(Gen("d", 0, 1).op_arrow()) == sc.generator("pi1")
    assert hj_map(Gen("d", 1, 1).op_arrow()) == sc.generator("pi1")
    for n in range(5):
        assert hj_map(sc.op_identity(n)) == sc.partial_identity(n)


@given(op_arrows(3), st.data())
def test_hj_functor_random(a, data):
    b = data.draw(st.sampled_from(sc.enumerate_hom("op", a.cod_level, data.draw(st.integers(0, 3)))))
    assert hj_map(sc.compose(b, a)) == sc.compose(hj_map(b), hj_map(a))


def test_j_bijection_counts():
    for m in range(4):
        for n in range(4):
            arrows = sc.enumerate_hom("op", m, n)
            intervals = sc.enumerate_hom("interval", m + 2, n + 2)
            assert len(arrows) == len(intervals)
            assert {j_map(a) for a in arrows} == set(intervals)
