from __future__ import annotations

import json
from itertools import product as cartesian

import numpy as np
import pytest

from segalbar.bar_segal import BIJECTIVE, STRICT, NotSegal, TruncationError, constant, generators, nerve
from segalbar.bisimplicial import (
    InterchangeFails,
    TruncBiSSet,
    bifunctoriality_violations,
    bisset_from_document,
    bisset_to_document,
    column,
    double_bar,
    double_nerve,
    double_segal_check,
    dumps_bisset,
    eckmann_hilton,
    external_product,
    invariant_violations,
    load_bisset,
    p_naturality_check,
    product,
    projection_violations,
    row,
)
from segalbar.finset_model import NotCommutative, cyclic_group, validate_monoid

Z2, Z3 = cyclic_group(2), cyclic_group(3)
LEFT = validate_monoid("eab", 0, [[0, 1, 2], [1, 1, 1], [2, 2, 2]])
OR = validate_monoid(["0", "1"], 0, [[0, 1], [1, 1]])


def bar(M, g, t):
    """Classical bar formulas on a tuple of element indices."""
    if g.kind == "s":
        return t[: g.index] + (M.unit,) + t[g.index:]
    i, n = g.index, len(t)
    if i == 0:
        return t[1:]
    if i == n:
        return t[:-1]
    return t[: i - 1] + (M.mul(t[i - 1], t[i]),) + t[i + 1:]


def as_blocks(t, n, m):
    return [tuple(t[j * m:(j + 1) * m]) for j in range(n)]


@pytest.mark.parametrize("M,N,M2", [(Z2, 3, 3), (Z3, 2, 2)])
def test_double_nerve_matches_blockwise_oracle(M, N, M2):
    X = double_nerve(M, N, M2)
    q = M.order
    for n in range(N + 1):
        for m in range(M2 + 1):
            cells = list(cartesian(range(q), repeat=n * m))
            assert X.size(n, m) == q ** (n * m)
            for g in generators(N):
                if g.level != n:
                    continue
                arr = X.hgen(g, m)
                for k, t in enumerate(cells):
                    blocks = as_blocks(t, n, m)
                    # act across blocks, one position inside the blocks at a time
                    cols = [bar(M, g, tuple(b[r] for b in blocks)) for r in range(m)]
                    new = tuple(cols[r][j] for j in range(g.target_level) for r in range(m))
                    assert arr[k] == cells_index(new, q)
            for g in generators(M2):
                if g.level != m:
                    continue
                arr = X.vgen(g, n)
                for k, t in enumerate(cells):
                    new = sum((bar(M, g, b) for b in as_blocks(t, n, m)), ())
                    assert arr[k] == cells_index(new, q)


def cells_index(t, q):
    c = 0
    for x in t:
        c = c * q + x
    return c


def test_sizes_and_rows():
    X = double_nerve(Z2, 2, 2)
    assert X.size(2, 2) == 16
    assert all(row(X, 0).size(n) == 1 for n in range(3))
    X3 = double_nerve(Z3, 3, 3)
    assert column(X3, 1).levels == nerve(Z3, 3).levels
    assert all(np.array_equal(column(X3, 1).gen(g), nerve(Z3, 3).gen(g)) for g in generators(3))


def test_z3_bifunctorial():
    assert invariant_violations(double_nerve(Z3, 2, 2)) == []


def test_noncommutative_rejected():
    with pytest.raises(NotCommutative) as exc:
        double_nerve(LEFT, 2, 2)
    assert exc.value.witness == ("a", "b")


@pytest.mark.parametrize("M,N", [(Z3, 3), (Z2, 4)])
def test_double_segal_strict(M, N):
    X = double_nerve(M, N, N)
    report = double_segal_check(X, STRICT)
    assert report.passed and double_segal_check(X, BIJECTIVE).passed
    assert all(line.endswith("strict-pass") for line in report.lines())


def test_double_nerve_size_guard():
    with pytest.raises(TruncationError):
        double_nerve(Z3, 4, 4)


def test_double_segal_failure_localized():
    # rows m >= 1 of X ⊠ nerve(Z2) have two vertices, row 0 has one
    X = external_product(nerve(Z2, 2), nerve(Z2, 2))
    report = double_segal_check(X, BIJECTIVE)
    assert report.rows[0].passed
    assert not report.rows[1].passed and report.rows[1].failures[0].level == 0
    assert report.failures()[0][0] == "row m=1"


def test_naturality():
    assert p_naturality_check(double_nerve(Z2, 3, 3)).ok
    # vertical faces into m=0 are forced, so mutate a vertical degeneracy
    X = double_nerve(Z2, 2, 2)
    s = X.vdegens[(2, 0, 0)].copy()
    s[0] = X.levels[2][1].index("(1,1)")
    Y = X.replace(vdegens={(2, 0, 0): s})
    result = p_naturality_check(Y)
    assert not result.ok and "vertical s0^0" in result.witness
    assert bifunctoriality_violations(Y)


@pytest.mark.parametrize("M", [Z2, Z3])
def test_eckmann_hilton_on_double_nerves(M):
    eh = eckmann_hilton(double_nerve(M, 3, 3))
    assert eh.horizontal == M and eh.vertical == M
    assert eh.verdict and eh.equal and eh.commutative and eh.units_equal
    assert eh.lines()[-1] == "grouplike (analogue only): True"


def test_eckmann_hilton_interchange_failure():
    X = double_bar(Z2, OR, 2, 2)
    with pytest.raises(InterchangeFails) as exc:
        eckmann_hilton(X)
    a, b, c, d = (int(s) for s in exc.value.witness[:4])
    xor = lambda x, y: x ^ y
    lor = lambda x, y: x | y
    assert lor(xor(a, b), xor(c, d)) != xor(lor(a, c), lor(b, d))


def test_eckmann_hilton_guards():
    with pytest.raises(TruncationError):
        eckmann_hilton(double_nerve(Z2, 1, 2))
    with pytest.raises(NotSegal):
        eckmann_hilton(external_product(constant(["a", "b"], 2), constant(["x"], 2)))


# -- products -----------------------------------------------------------------------------

def test_product_sizes_and_projections():
    X, Y = nerve(Z2, 3), nerve(LEFT, 3)
    P = product(X, Y)
    assert [P.sset.size(n) for n in range(4)] == [1, 6, 36, 216]
    assert product(nerve(Z2, 3), nerve(Z2, 3)).sset.size(2) == 16
    assert projection_violations(X, Y, P) == []


def test_product_with_point():
    X = nerve(Z3, 3)
    P = product(X, constant(["*"], 3))
    for n in range(4):
        assert np.array_equal(P.proj1[n], np.arange(X.size(n)))


def test_external_product_rows_and_columns():
    X, Y = nerve(Z2, 2), nerve(Z3, 2)
    B = external_product(X, Y)
    assert invariant_violations(B) == []
    assert [row(B, 1).size(n) for n in range(3)] == [3, 6, 12]
    assert [column(B, 1).size(m) for m in range(3)] == [2, 6, 18]


# -- files ----------------------------------------------------------------------------------

def test_document_round_trip(tmp_path):
    X = double_nerve(Z2, 2, 2)
    Y = bisset_from_document(json.loads(dumps_bisset(X)))
    assert Y.levels == X.levels
    for name in ("hfaces", "hdegens", "vfaces", "vdegens"):
        a, b = getattr(X, name), getattr(Y, name)
        assert a.keys() == b.keys() and all(np.array_equal(a[k], b[k]) for k in a)
    p = tmp_path / "b.json"
    p.write_text(dumps_bisset(X), encoding="utf-8")
    assert isinstance(load_bisset(p), TruncBiSSet)
    assert set(bisset_to_document(X)) >= {"N", "M", "levels", "hfaces", "vfaces"}
