from __future__ import annotations

import json
from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from segalbar import simplex_cats as sc
from segalbar.finset_model import (
    FinMonoid,
    MalformedMonoid,
    NotAssociative,
    NotUnit,
    TupleSet,
    cyclic_group,
    dumps_monoid,
    enumerate_monoids,
    f_eval,
    load_monoid,
    monoid_from_document,
    monoid_to_document,
    validate_monoid,
)

LEFT_ABSORBING = [[0, 1, 2], [1, 1, 1], [2, 2, 2]]


def fiber_oracle(g, M, x):
    """Evaluate F(g) on a tuple by the textbook rule: multiply each fiber in order."""
    out = []
    for j in range(g.target):
        acc = M.unit
        for i, v in enumerate(g.images):
            if v == j:
                acc = M.mul(acc, x[i])
        out.append(acc)
    return tuple(out)


def test_z2_valid():
    M = validate_monoid(["e", "a"], 0, [[0, 1], [1, 0]])
    assert M.is_group() and M.is_commutative()
    assert M.table_rows() == cyclic_group(2).table_rows()


def test_left_absorbing_noncommutative():
    M = validate_monoid(["e", "a", "b"], 0, LEFT_ABSORBING)
    assert M.mul(1, 2) == 1 and M.mul(2, 1) == 2
    assert M.commutativity_witness() == (1, 2)
    assert not M.is_group()


def test_not_associative_witness():
    bad = [[0, 1, 2], [1, 2, 1], [2, 0, 2]]
    with pytest.raises(NotAssociative) as exc:
        validate_monoid(["e", "a", "b"], 0, bad)
    a, b, c = ("eab".index(x) for x in exc.value.witness)
    assert bad[bad[a][b]][c] != bad[a][bad[b][c]]


def test_not_unit():
    with pytest.raises(NotUnit):
        validate_monoid(["e", "a"], 1, [[0, 1], [1, 0]])


@pytest.mark.parametrize("table", [[[0, 1]], [[0, 1], [1, 2]], [[0, 1], [1]]])
def test_malformed_tables(table):
    with pytest.raises(MalformedMonoid):
        validate_monoid(["e", "a"], 0, table)


def test_enumerate_counts_and_labels():
    assert [len(enumerate_monoids(k)) for k in (1, 2, 3, 4)] == [1, 2, 11, 156]
    two = enumerate_monoids(2)
    assert sorted(M.table_rows()[1][1] for M in two) == [0, 1]
    assert all(M.elements == ("e", "a", "b") for M in enumerate_monoids(3))
    assert enumerate_monoids(2, labels=["0", "1"])[0].elements == ("0", "1")
    with pytest.raises(ValueError):
        enumerate_monoids(5)


def test_enumerate_distinct_and_valid():
    ms = enumerate_monoids(3)
    assert len({M.table.tobytes() for M in ms}) == len(ms)
    for M in ms:
        validate_monoid(M.elements, M.unit, M.table)


def test_tuple_set_order_is_lexicographic():
    T = TupleSet(2, 3)
    tuples = list(T)
    assert len(T) == 8 and tuples == sorted(tuples)
    assert [T.code(t) for t in tuples] == list(range(8))
    assert np.array_equal(T.digits(), np.array(tuples))


def test_f_eval_examples():
    Z2 = cyclic_group(2)
    mu = f_eval(sc.as_partial(sc.generator("mu1")), Z2)
    assert mu((1, 1)) == (0,) and mu((0, 1)) == (1,)
    pi = f_eval(sc.generator("pi1"), Z2)
    assert pi((1,)) == ()
    proj = f_eval(sc.parse_map("3⇀1:[_,0,_]"), cyclic_group(3))
    assert all(proj(x) == (x[1],) for x in product(range(3), repeat=3))


@pytest.mark.parametrize("M", [cyclic_group(3), validate_monoid("eab", 0, LEFT_ABSORBING)])
def test_f_eval_matches_fiber_oracle(M):
    for n in range(4):
        for m in range(3):
            for g in sc.enumerate_hom("partial", n, m):
                F = f_eval(g, M)
                for x in product(range(M.order), repeat=n):
                    assert F(x) == fiber_oracle(g, M, x)


def test_f_eval_order_matters():
    M = validate_monoid("eab", 0, LEFT_ABSORBING)
    assert f_eval(sc.as_partial(sc.generator("mu1")), M)((1, 2)) == (1,)
    assert f_eval(sc.as_partial(sc.generator("mu1")), M)((2, 1)) == (2,)


@given(st.sampled_from(enumerate_monoids(3)))
def test_document_round_trip(M):
    assert monoid_from_document(monoid_to_document(M)) == M
    assert monoid_from_document(json.loads(dumps_monoid(M))) == M


def test_load_monoid(tmp_path):
    p = tmp_path / "m.json"
    p.write_text(dumps_monoid(cyclic_group(3)), encoding="utf-8")
    assert load_monoid(p) == cyclic_group(3)
    p.write_text("{not json", encoding="utf-8")
    with pytest.raises(MalformedMonoid):
        load_monoid(p)


@pytest.mark.parametrize(
    "doc",
    [
        [],
        {"elements": ["e"], "unit": "e"},
        {"elements": ["e", "e"], "unit": "e", "table": [["e", "e"], ["e", "e"]]},
        {"elements": ["e", "a"], "unit": "x", "table": [["e", "a"], ["a", "e"]]},
        {"elements": ["e", "a"], "unit": "e", "table": [["e", "a"], ["a"]]},
        {"elements": ["e", "a"], "unit": "e", "table": [["e", "a"], ["a", "z"]]},
    ],
)
def test_malformed_documents(doc):
    with pytest.raises(MalformedMonoid):
        monoid_from_document(doc)


def test_table_is_read_only():
    M = cyclic_group(2)
    with pytest.raises(ValueError):
        M.table[0, 0] = 1
    assert isinstance(hash(M), int)
    assert M != FinMonoid(("x", "y"), 0, M.table)
