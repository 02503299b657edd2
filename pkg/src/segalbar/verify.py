"""Exhaustive property suites over small sizes.

Each suite returns a list of :class:`CheckResult`; ``segalbar verify`` and the
acceptance tests both run them.  Law checks over triples and quadruples of
maps run on batched image arrays; the scalar ``compose``/``tensor`` are
checked against the batched versions on every pair first.
"""
from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as cartesian
from math import comb
from typing import Callable, Iterable

import numpy as np

from . import simplex_cats as sc
from .bar_segal import (
    STRICT,
    BIJECTIVE,
    NotSegal,
    constant,
    generators,
    nerve,
    reconstruct_monoid,
    segal_check,
    simplicial_identities_check,
    verify_bar_equality,
    all_op_arrows,
)
from .bisimplicial import (
    double_nerve,
    double_segal_check,
    eckmann_hilton,
    invariant_violations,
    p_naturality_check,
    product,
    projection_violations,
)
from .dual_functors import edge_arrow, h_map, hj_map, j_inverse, j_map
from .finset_model import FinMonoid, NotCommutative, enumerate_monoids, f_eval

MAX_SIZE_LIMIT = 6
MAX_ORDER_LIMIT = 4
MAX_TRUNCATION_LIMIT = 5


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" -- {self.detail}" if self.detail else ""
        return f"[{status}] {self.name} ({self.seconds:.2f}s){tail}"


class _Failure(Exception):
    pass


def _require(cond: bool, message: str):
    if not cond:
        raise _Failure(message)


def run_check(name: str, fn: Callable[[], str | None]) -> CheckResult:
    t0 = time.perf_counter()
    try:
        detail = fn() or ""
        ok = True
    except _Failure as exc:
        detail, ok = str(exc), False
    except Exception as exc:  # a crash inside a check is reported, not raised
        detail, ok = f"{type(exc).__name__}: {exc}", False
    return CheckResult(name, ok, detail, time.perf_counter() - t0)


def cap_size(max_size: int) -> int:
    """Clamp ``max_size`` to the documented bound and to ``SEGALBAR_MAX_SIZE``."""
    env = os.environ.get("SEGALBAR_MAX_SIZE")
    if env:
        max_size = min(max_size, int(env))
    return max(1, min(max_size, MAX_SIZE_LIMIT))


# -- helpers ------------------------------------------------------------------------

def _rows(maps) -> np.ndarray:
    n = maps[0].source if maps else 0
    return np.array([[-1 if v is None else v for v in f.images] for f in maps], dtype=np.int16).reshape(len(maps), n)


def _sizes(kind: str, S: int) -> range:
    return range(2, S + 1) if kind == "interval" else range(S + 1)


def _hom_tables(kind: str, S: int):
    sizes = _sizes(kind, S)
    maps = {(a, b): sc.enumerate_hom(kind, a, b) for a in sizes for b in sizes}
    return maps, {k: _rows(v) for k, v in maps.items()}


# -- simplex categories ---------------------------------------------------------------

def check_compose_matches_batch(kind: str, S: int) -> str:
    maps, rows = _hom_tables(kind, S)
    sizes = _sizes(kind, S)
    pairs = 0
    for a, b, c in cartesian(sizes, repeat=3):
        F, G = maps[a, b], maps[b, c]
        if not F or not G:
            continue
        batch = sc.compose_batch(rows[b, c], rows[a, b])
        for k, g in enumerate(G):
            for l, f in enumerate(F):
                got = sc.compose(g, f)
                imgs = tuple(-1 if v is None else v for v in got.images)
                _require(imgs == tuple(batch[k, l]), f"compose({g}, {f}) = {got} disagrees with batch")
                pairs += 1
    return f"{pairs} pairs"


def check_compose_laws(kind: str, S: int) -> str:
    """Associativity over all composable triples and both unit laws."""
    _, rows = _hom_tables(kind, S)
    sizes = _sizes(kind, S)
    triples = 0
    for a, b, c, d in cartesian(sizes, repeat=4):
        F, G, H = rows[a, b], rows[b, c], rows[c, d]
        if not (len(F) and len(G) and len(H)):
            continue
        GF = sc.compose_batch(G, F).reshape(len(G) * len(F), a)
        for start in range(0, len(H), 16):
            Hc = H[start:start + 16]
            left = sc.compose_batch(Hc, GF).reshape(len(Hc), len(G), len(F), a)
            HG = sc.compose_batch(Hc, G).reshape(len(Hc) * len(G), b)
            right = sc.compose_batch(HG, F).reshape(len(Hc), len(G), len(F), a)
            if not np.array_equal(left, right):
                idx = np.argwhere((left != right).any(axis=-1))[0]
                raise _Failure(f"associativity fails for sizes {(a, b, c, d)} at {tuple(idx)}")
            triples += left.shape[0] * left.shape[1] * left.shape[2]
    for a, b in cartesian(sizes, repeat=2):
        F = rows[a, b]
        if not len(F):
            continue
        ida = np.arange(a, dtype=np.int16)[None, :]
        idb = np.arange(b, dtype=np.int16)[None, :]
        _require(np.array_equal(sc.compose_batch(idb, F)[0], F), f"left unit fails on {a}->{b}")
        _require(np.array_equal(sc.compose_batch(F, ida)[:, 0], F), f"right unit fails on {a}->{b}")
    ident = {"total": sc.identity, "partial": sc.partial_identity, "interval": sc.interval_identity}[kind]
    for n in sizes:
        for f in sc.enumerate_hom(kind, n, n):
            _require(sc.compose(ident(n), f) == f and sc.compose(f, ident(n)) == f, f"identity law fails at {f}")
    return f"{triples} triples"


def check_op_compose(S: int) -> str:
    """Opposite-arrow composition is reversed composition of underlying maps."""
    count = 0
    for m, n, k in cartesian(range(S), repeat=3):
        for a in sc.enumerate_hom("op", m, n):
            for b in sc.enumerate_hom("op", n, k):
                ba = sc.compose(b, a)
                _require(ba.underlying == sc.compose(a.underlying, b.underlying), f"{b} ∘ {a}")
                count += 1
        for a in sc.enumerate_hom("op", m, n):
            _require(sc.compose(sc.op_identity(n), a) == a == sc.compose(a, sc.op_identity(m)), f"unit at {a}")
    return f"{count} pairs"


def check_tensor_laws(kind: str, S: int) -> str:
    maps, rows = _hom_tables(kind, S)
    keys = list(maps)
    for (a, b), (a2, b2) in cartesian(keys, repeat=2):
        batch = sc.tensor_batch(rows[a, b], b, rows[a2, b2])
        for k, f in enumerate(maps[a, b]):
            for l, f2 in enumerate(maps[a2, b2]):
                t = sc.tensor(f, f2)
                imgs = tuple(-1 if v is None else v for v in t.images)
                _require(
                    (t.source, t.target) == (a + a2, b + b2) and imgs == tuple(batch[k, l]),
                    f"tensor({f}, {f2}) = {t} disagrees with the side-by-side formula",
                )
    unit = sc.identity(0) if kind == "total" else sc.partial_identity(0)
    for fs in maps.values():
        for f in fs:
            _require(sc.tensor(unit, f) == f == sc.tensor(f, unit), f"identity(0) is not a unit for {f}")
    triples = 0
    for (a1, b1), (a2, b2), (a3, b3) in cartesian(keys, repeat=3):
        F1, F2, F3 = rows[a1, b1], rows[a2, b2], rows[a3, b3]
        if not (len(F1) and len(F2) and len(F3)):
            continue
        left = sc.tensor_batch(sc.tensor_batch(F1, b1, F2).reshape(len(F1) * len(F2), a1 + a2), b1 + b2, F3)
        right = sc.tensor_batch(F1, b1, sc.tensor_batch(F2, b2, F3).reshape(len(F2) * len(F3), a2 + a3))
        _require(
            np.array_equal(left.reshape(-1), right.reshape(-1)),
            f"tensor associativity fails for sizes {(a1, b1), (a2, b2), (a3, b3)}",
        )
        triples += len(F1) * len(F2) * len(F3)
    return f"{triples} triples"


def check_interchange(kind: str, S: int) -> str:
    """(g ⊗ g') ∘ (f ⊗ f') = (g ∘ f) ⊗ (g' ∘ f') over all composable pairs."""
    _, rows = _hom_tables(kind, S)
    sizes = _sizes(kind, S)
    quads = 0
    for a, b, c in cartesian(sizes, repeat=3):
        F, G = rows[a, b], rows[b, c]
        if not (len(F) and len(G)):
            continue
        GF = sc.compose_batch(G, F)  # (kg, kf, a)
        for a2, b2, c2 in cartesian(sizes, repeat=3):
            F2, G2 = rows[a2, b2], rows[b2, c2]
            if not (len(F2) and len(G2)):
                continue
            TG = sc.tensor_batch(G, c, G2).reshape(len(G) * len(G2), b + b2)
            TF = sc.tensor_batch(F, b, F2).reshape(len(F) * len(F2), a + a2)
            lhs = sc.compose_batch(TG, TF).reshape(len(G), len(G2), len(F), len(F2), a + a2)
            G2F2 = sc.compose_batch(G2, F2)
            rhs = sc.tensor_batch(GF.reshape(len(G) * len(F), a), c, G2F2.reshape(len(G2) * len(F2), a2))
            rhs = rhs.reshape(len(G), len(F), len(G2), len(F2), a + a2).transpose(0, 2, 1, 3, 4)
            _require(np.array_equal(lhs, rhs), f"interchange fails for sizes {(a, b, c)} and {(a2, b2, c2)}")
            quads += lhs.shape[0] * lhs.shape[1] * lhs.shape[2] * lhs.shape[3]
    return f"{quads} quadruples"


@lru_cache(maxsize=None)
def _count_monotone(n: int, m: int) -> int:
    # maps n -> m: either nothing hits m-1 (maps into m-1) or the last point does
    if n == 0:
        return 1
    if m == 0:
        return 0
    return _count_monotone(n, m - 1) + _count_monotone(n - 1, m)


def check_hom_counts(total_bound: int) -> str:
    checked = 0
    for n in range(total_bound + 1):
        for m in range(total_bound + 1 - n):
            got = len(sc.enumerate_hom("total", n, m))
            expected = _count_monotone(n, m)
            _require(got == expected, f"|hom({n},{m})| = {got}, recursive count {expected}")
            if n + m > 0:
                _require(got == comb(n + m - 1, n), f"|hom({n},{m})| = {got} is not binomial")
            checked += 1
    return f"{checked} hom-sets, n+m <= {total_bound}"


def check_factorization(S: int) -> str:
    count = 0
    for a in all_op_arrows(S):
        word = sc.factorize(a)
        _require(sc.recompose(word, a.cod_level) == a.underlying, f"factorization of {a} does not recompose")
        count += 1
    return f"{count} arrows"


# -- J and H ---------------------------------------------------------------------------------

def check_j_functor(S: int) -> str:
    count = 0
    for m, n, k in cartesian(range(S), repeat=3):
        for a in sc.enumerate_hom("op", m, n):
            for b in sc.enumerate_hom("op", n, k):
                _require(j_map(sc.compose(b, a)) == sc.compose(j_map(b), j_map(a)), f"J(∘) fails on {b}, {a}")
                count += 1
    for n in range(S):
        _require(j_map(sc.op_identity(n)) == sc.interval_identity(n + 2), f"J(id) fails at [{n}]")
    return f"{count} composable pairs"


def check_j_bijection(S: int) -> str:
    for m, n in cartesian(range(S), repeat=2):
        arrows = sc.enumerate_hom("op", m, n)
        images = {j_map(a) for a in arrows}
        target = set(sc.enumerate_hom("interval", m + 2, n + 2))
        _require(len(images) == len(arrows) and images == target, f"J is not a bijection on [{m}]→[{n}]")
        _require(len(arrows) == comb(m + n + 1, n + 1), f"|[{m}]→[{n}]| = {len(arrows)} is not binomial")
        for a in arrows:
            _require(j_inverse(j_map(a)) == a, f"j_inverse(j_map({a})) != {a}")
        for g in target:
            _require(j_map(j_inverse(g)) == g, f"j_map(j_inverse({g})) != {g}")
    return f"levels <= {S - 1}"


def check_h_functor(S: int) -> str:
    count = 0
    sizes = range(2, S + 1)
    homs = {(a, b): sc.enumerate_hom("interval", a, b) for a in sizes for b in sizes}
    for a, b, c in cartesian(sizes, repeat=3):
        for f in homs[a, b]:
            hf = h_map(f)
            for g in homs[b, c]:
                _require(h_map(sc.compose(g, f)) == sc.compose(h_map(g), hf), f"H(∘) fails on {g}, {f}")
                count += 1
    for n in sizes:
        _require(h_map(sc.interval_identity(n)) == sc.partial_identity(n - 2), f"H(id) fails at {n}")
    return f"{count} composable pairs, sizes <= {S}"


def check_hj_generators() -> str:
    mu, eta, pi = (sc.generator(t) for t in ("mu1", "eta1", "pi1"))
    _require(hj_map(sc.Gen("d", 1, 2).op_arrow()) == sc.as_partial(mu), "inner face of [2] does not go to mu")
    _require(hj_map(sc.Gen("s", 0, 0).op_arrow()) == sc.as_partial(eta), "degeneracy of [0] does not go to eta")
    for i in (0, 1):
        _require(hj_map(sc.Gen("d", i, 1).op_arrow()) == pi, f"face d{i} of [1] does not go to pi")
    for n in range(2, 6):
        for j in range(1, n + 1):
            expected = sc.PartialMap(n, 1, tuple(0 if i == j - 1 else None for i in range(n)))
            _require(hj_map(edge_arrow(n, j)) == expected, f"H∘J(i_{j}) at n={n}")
    return "mu, eta, pi and all edge arrows n <= 5"


def check_monoid_in_delta() -> str:
    for kind in ("total", "partial"):
        mu, eta = sc.generator("mu1"), sc.generator("eta1")
        one = sc.identity(1)
        if kind == "partial":
            mu, eta, one = sc.as_partial(mu), sc.as_partial(eta), sc.partial_identity(1)
        assoc_l = sc.compose(mu, sc.tensor(mu, one))
        assoc_r = sc.compose(mu, sc.tensor(one, mu))
        unit_r = sc.compose(mu, sc.tensor(one, eta))
        unit_l = sc.compose(mu, sc.tensor(eta, one))
        _require(assoc_l == assoc_r, f"{kind}: mu(mu⊗1) = {assoc_l} but mu(1⊗mu) = {assoc_r}")
        _require(unit_r == one, f"{kind}: mu(1⊗eta) = {unit_r}")
        _require(unit_l == one, f"{kind}: mu(eta⊗1) = {unit_l}")
        _require(unit_r == unit_l, f"{kind}: the two unit composites differ")
    return "associativity, right unit, left unit, unit agreement; in both categories"


def simplex_suite(S: int) -> list[CheckResult]:
    t = min(S, 3)
    out = []
    for kind in ("total", "partial", "interval"):
        out.append(run_check(f"compose agrees with batch ({kind}, sizes <= {S})", lambda k=kind: check_compose_matches_batch(k, S)))
        out.append(run_check(f"compose associative and unital ({kind}, sizes <= {S})", lambda k=kind: check_compose_laws(k, S)))
    out.append(run_check(f"opposite-arrow composition (levels <= {S - 1})", lambda: check_op_compose(S)))
    for kind in ("total", "partial"):
        out.append(run_check(f"tensor strictly associative and unital ({kind}, sizes <= {t})", lambda k=kind: check_tensor_laws(k, t)))
        out.append(run_check(f"tensor/compose interchange ({kind}, sizes <= {t})", lambda k=kind: check_interchange(k, t)))
    out.append(run_check(f"hom counts are binomial (n+m <= {2 * S + 1})", lambda: check_hom_counts(2 * S + 1)))
    out.append(run_check(f"canonical factorization recomposes (levels <= {S})", lambda: check_factorization(S)))
    out.append(run_check(f"J is a functor (levels <= {S - 1})", lambda: check_j_functor(S)))
    out.append(run_check(f"J is bijective on hom-sets (levels <= {S - 1})", lambda: check_j_bijection(S)))
    out.append(run_check(f"H is a functor (interval sizes <= {S + 2})", lambda: check_h_functor(S + 2)))
    out.append(run_check("H∘J on generators and edge arrows", check_hj_generators))
    return out


# -- partial-map functor --------------------------------------------------------------------

def sample_monoids() -> list[FinMonoid]:
    """The two order-2 monoids and the noncommutative order-3 monoids."""
    return enumerate_monoids(2) + [M for M in enumerate_monoids(3) if not M.is_commutative()]


def check_f_eval(S: int, monoids: Iterable[FinMonoid]) -> str:
    maps = {(a, b): sc.enumerate_hom("partial", a, b) for a in range(S + 1) for b in range(S + 1)}
    pairs = 0
    for M in monoids:
        tables = {f: f_eval(f, M) for fs in maps.values() for f in fs}
        for n in range(S + 1):
            _require(np.array_equal(tables[sc.partial_identity(n)].table, np.arange(M.order ** n)), "F(id)")
        for a, b, c in cartesian(range(S + 1), repeat=3):
            for f in maps[a, b]:
                for g in maps[b, c]:
                    _require(
                        tables[sc.compose(g, f)] == tables[f].then(tables[g]),
                        f"F({g} ∘ {f}) != F({g}) ∘ F({f}) over {M}",
                    )
                    pairs += 1
        for (a, b), (a2, b2) in cartesian(list(maps), repeat=2):
            for f in maps[a, b]:
                for f2 in maps[a2, b2]:
                    t = f_eval(sc.tensor(f, f2), M)
                    expect = _blockwise(tables[f], tables[f2], M.order)
                    _require(np.array_equal(t.table, expect), f"F({f} ⊗ {f2}) is not blockwise over {M}")
        mu, eta, pi = (sc.generator(t) for t in ("mu1", "eta1", "pi1"))
        _require(np.array_equal(f_eval(sc.as_partial(mu), M).table, M.table.reshape(-1)), "F(mu) != mu")
        _require(list(f_eval(sc.as_partial(eta), M).table) == [M.unit], "F(eta) != eta")
        _require(list(f_eval(pi, M).table) == [0] * M.order, "F(pi) is not the unique map to M^0")
    return f"{pairs} composable pairs per monoid"


def _blockwise(f, f2, q: int) -> np.ndarray:
    # act by f on the first block and f2 on the second; codes concatenate
    hi = f.table[np.arange(q ** (f.source + f2.source)) // q ** f2.source]
    lo = f2.table[np.arange(q ** (f.source + f2.source)) % q ** f2.source]
    return hi * q ** f2.target + lo


# -- bar construction ------------------------------------------------------------------------

def classical_bar_images(M: FinMonoid, g: sc.Gen, x: tuple[int, ...]) -> tuple[int, ...]:
    """Textbook faces and degeneracies of the bar construction, written out directly."""
    n = len(x)
    if g.kind == "d":
        i = g.index
        if i == 0:
            return x[1:]
        if i == n:
            return x[:-1]
        return x[: i - 1] + (M.mul(x[i - 1], x[i]),) + x[i + 1:]
    return x[: g.index] + (M.unit,) + x[g.index:]


def check_bar_oracle(M: FinMonoid, N: int) -> str:
    X = nerve(M, N)
    for g in generators(N):
        arr = X.gen(g)
        tuples = list(cartesian(range(M.order), repeat=g.level))
        targets = {t: k for k, t in enumerate(cartesian(range(M.order), repeat=g.target_level))}
        for k, t in enumerate(tuples):
            expected = targets[classical_bar_images(M, g, t)]
            _require(arr[k] == expected, f"{g} on {X.levels[g.level][k]} differs from the bar formula over {M}")
    return ""


def monoids_up_to(order: int) -> list[FinMonoid]:
    return [M for o in range(1, order + 1) for M in enumerate_monoids(o)]


def check_nerves_strict_segal(order: int, N: int) -> str:
    ms = monoids_up_to(order)
    for M in ms:
        report = segal_check(nerve(M, N), STRICT)
        _require(report.passed, f"nerve of {M} fails strict Segal: {report.failures}")
        _require(all(v.status == "strict-pass" for v in report.verdicts), "missing level verdict")
        check_bar_oracle(M, N)
    return f"{len(ms)} monoids, levels 0..{N}"


def check_reconstruction(order: int, N: int) -> str:
    ms = monoids_up_to(order)
    arrows = sum(1 for _ in all_op_arrows(N))
    for M in ms:
        X = nerve(M, N)
        R = reconstruct_monoid(X)
        _require(R == M, f"reconstruct(nerve({M})) = {R}")
        eq = verify_bar_equality(X, R)
        _require(eq.equal, f"bar equality fails for {M}: {eq.detail}")
        _require(not simplicial_identities_check(X), f"nerve of {M} violates a simplicial identity")
    return f"{len(ms)} monoids, {arrows} arrows each"


def check_constant_fails() -> str:
    X = constant(["a", "b"], 3)
    for mode in (STRICT, BIJECTIVE):
        report = segal_check(X, mode)
        failed = {v.level: v for v in report.failures}
        _require(0 in failed and 2 in failed, f"{mode}: constant 2-point set should fail at 0 and 2")
        _require(all(failed[n].witness for n in (0, 2)), "missing witness")
    _require(not simplicial_identities_check(X), "constant set must satisfy the identities")
    try:
        reconstruct_monoid(X)
    except NotSegal:
        pass
    else:
        raise _Failure("reconstruct accepted the constant 2-point set")
    report = segal_check(X, BIJECTIVE)
    return "; ".join(str(report.verdicts[n]) for n in (0, 2))


def single_entry_mutations(X):
    """Every way of changing one entry of one generator array."""
    for g in generators(X.N):
        arr = X.gen(g)
        width = X.size(g.target_level)
        for k in range(arr.shape[0]):
            for v in range(width):
                if v != arr[k]:
                    yield g, k, v


def mutate(X, g: sc.Gen, k: int, v: int):
    arr = X.gen(g).copy()
    arr[k] = v
    key = {(g.level, g.index): arr}
    return X.replace(faces=key) if g.kind == "d" else X.replace(degeneracies=key)


def check_mutations(M: FinMonoid, N: int, sample: int | None, seed: int = 0) -> str:
    X = nerve(M, N)
    muts = list(single_entry_mutations(X))
    if sample is not None and sample < len(muts):
        muts = random.Random(seed).sample(muts, sample)
    by_identities = by_equality = 0
    for g, k, v in muts:
        Y = mutate(X, g, k, v)
        if simplicial_identities_check(Y, limit=1):
            by_identities += 1
        elif not verify_bar_equality(Y, M).equal:
            by_equality += 1
        else:
            raise _Failure(f"mutation {g}[{Y.levels[g.level][k]}] -> {Y.levels[g.target_level][v]} passed both checks")
    return f"{len(muts)} mutations: {by_identities} caught by identities, {by_equality} by bar equality"


# -- bisimplicial ---------------------------------------------------------------------------

def check_double_nerves(order: int, N: int, M2: int) -> str:
    comm = [M for M in monoids_up_to(order) if M.is_commutative()]
    for M in comm:
        X = double_nerve(M, N, M2)
        bad = invariant_violations(X)
        _require(not bad, f"double nerve of {M}: {bad[:1]}")
        report = double_segal_check(X, STRICT)
        _require(report.passed, f"double nerve of {M} fails strict double Segal: {report.failures()[:1]}")
        nat = p_naturality_check(X)
        _require(nat.ok, f"naturality square fails for {M}: {nat.witness}")
        eh = eckmann_hilton(X)
        _require(eh.horizontal == M and eh.vertical == M, f"Eckmann-Hilton returns {eh.horizontal}, {eh.vertical}")
        _require(eh.verdict, f"Eckmann-Hilton verdict false for {M}")
    return f"{len(comm)} commutative monoids"


def check_noncommutative_rejected() -> str:
    witnesses = []
    for M in enumerate_monoids(3):
        if M.is_commutative():
            continue
        try:
            double_nerve(M, 2, 2)
        except NotCommutative as exc:
            a, b = exc.witness
            _require(M.mul(M.elements.index(a), M.elements.index(b)) != M.mul(M.elements.index(b), M.elements.index(a)), "bad witness")
            witnesses.append(f"({a},{b})")
        else:
            raise _Failure(f"double_nerve accepted noncommutative {M}")
    return "witnesses " + ", ".join(witnesses)


def check_products(order: int, N: int) -> str:
    ms = monoids_up_to(order)
    pairs = 0
    for M, M2 in cartesian(ms, repeat=2):
        X, Y = nerve(M, N), nerve(M2, N)
        P = product(X, Y)
        for n in range(N + 1):
            _require(P.sset.size(n) == M.order ** n * M2.order ** n, f"|(X×Y)_{n}| wrong")
        bad = projection_violations(X, Y, P)
        _require(not bad, bad[0] if bad else "")
        _require(not simplicial_identities_check(P.sset, limit=1), "product violates an identity")
        _require(segal_check(P.sset, BIJECTIVE).passed, "product of nerves should be bijectively Segal")
        pairs += 1
    return f"{pairs} pairs of nerves, N={N}"


# -- top-level ------------------------------------------------------------------------------

def full_suite(max_size: int = 4) -> list[CheckResult]:
    S = cap_size(max_size)
    order = min(3, S - 1) if S > 1 else 1
    N = min(max(S, 3), MAX_TRUNCATION_LIMIT)  # reconstruction needs N >= 3
    out = simplex_suite(S)
    out.append(run_check("monoid (1, mu, eta) in Δ and Δ_par", check_monoid_in_delta))
    out.append(run_check(f"partial-map functor is strict monoidal (sizes <= {min(S, 3)})",
                         lambda: check_f_eval(min(S, 3), sample_monoids())))
    out.append(run_check(f"nerves are strictly Segal and match the bar formulas (order <= {order}, N={N})",
                         lambda: check_nerves_strict_segal(order, N)))
    out.append(run_check(f"reconstruction round trip (order <= {order}, N={N})", lambda: check_reconstruction(order, N)))
    out.append(run_check("constant 2-point set fails at n=0 and n=2", check_constant_fails))
    out.append(run_check("single-entry mutations of nerve(Z2, 3) are all caught",
                         lambda: check_mutations(enumerate_monoids(2)[1], 3, None)))
    noncomm = [M for M in enumerate_monoids(3) if not M.is_commutative()][0]
    out.append(run_check("sampled mutations of a noncommutative nerve are all caught",
                         lambda: check_mutations(noncomm, 3, 200, seed=1)))
    out.append(run_check(f"double nerves (order <= {order}, 3×3)", lambda: check_double_nerves(order, 3, 3)))
    out.append(run_check("noncommutative monoids rejected by double_nerve", check_noncommutative_rejected))
    out.append(run_check(f"products of nerves (order <= {min(order, 2)}, N=3)", lambda: check_products(min(order, 2), 3)))
    return out
