"""Truncated bisimplicial sets, products of simplicial sets, and the double
Segal / Eckmann-Hilton checks.

``X_{n,m}`` carries horizontal generators acting on the first index (for each
fixed ``m``) and vertical generators acting on the second.  The double bar
construction stores a simplex of ``X_{n,m}`` as ``n`` consecutive blocks of
``m`` monoid elements; block ``j`` is the ``j``-th horizontal edge, so every
horizontal Segal map is literally the identity on flat tuples.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product as cartesian
from pathlib import Path
from typing import Mapping, Optional

import numpy as np

from . import kernels
from .bar_segal import (
    BIJECTIVE,
    STRICT,
    MalformedSSet,
    NotSegal,
    SegalReport,
    TruncationError,
    TruncSSet,
    _monoid_from_segal,
    generators,
    p_map,
    segal_check,
    simplicial_identities_check,
    tuple_label,
)
from .dual_functors import hj_map
from .finset_model import FinMonoid, MalformedMonoid, NotCommutative
from .simplex_cats import Gen, ShapeError


class InvalidBisimplicialSet(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = "\n".join(f"  {v}" for v in self.violations[:10])
        super().__init__(f"{len(self.violations)} bisimplicial invariant violation(s):\n{lines}")


class InterchangeFails(ValueError):
    def __init__(self, a, b, c, d, lhs, rhs):
        self.witness = (a, b, c, d)
        super().__init__(
            f"interchange fails on the block [[{a}, {b}], [{c}, {d}]]: "
            f"vertical-of-horizontal gives {lhs}, horizontal-of-vertical gives {rhs}"
        )


# -- products of simplicial sets --------------------------------------------------

def pair_label(x: str, y: str) -> str:
    return f"<{x}|{y}>"


@dataclass(frozen=True)
class SimplicialProduct:
    sset: TruncSSet
    proj1: tuple[np.ndarray, ...]
    proj2: tuple[np.ndarray, ...]


def product(X: TruncSSet, Y: TruncSSet) -> SimplicialProduct:
    """Levelwise product ``(X×Y)_n = X_n × Y_n`` with componentwise generators."""
    if X.N != Y.N:
        raise TruncationError(f"truncations differ: {X.N} vs {Y.N}")
    levels = tuple(
        tuple(pair_label(x, y) for x in X.levels[n] for y in Y.levels[n]) for n in range(X.N + 1)
    )
    faces, degens = {}, {}
    for g in generators(X.N):
        width = Y.size(g.target_level)
        arr = (X.gen(g)[:, None] * width + Y.gen(g)[None, :]).reshape(-1)
        (faces if g.kind == "d" else degens)[(g.level, g.index)] = arr
    proj1 = tuple(np.repeat(np.arange(X.size(n)), Y.size(n)) for n in range(X.N + 1))
    proj2 = tuple(np.tile(np.arange(Y.size(n)), X.size(n)) for n in range(X.N + 1))
    return SimplicialProduct(TruncSSet(X.N, levels, faces, degens), proj1, proj2)


def projection_violations(X: TruncSSet, Y: TruncSSet, P: SimplicialProduct) -> list[str]:
    """Generators ``g`` where a projection fails to commute with ``g``."""
    out = []
    for g in generators(X.N):
        for name, factor, proj in (("proj1", X, P.proj1), ("proj2", Y, P.proj2)):
            lhs = proj[g.target_level][P.sset.gen(g)]
            rhs = factor.gen(g)[proj[g.level]]
            if not np.array_equal(lhs, rhs):
                out.append(f"{name} does not commute with {g}")
    return out


# -- bisimplicial sets -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TruncBiSSet:
    N: int
    M: int
    levels: tuple[tuple[tuple[str, ...], ...], ...]  # levels[n][m]
    hfaces: Mapping[tuple[int, int, int], np.ndarray]
    hdegens: Mapping[tuple[int, int, int], np.ndarray]
    vfaces: Mapping[tuple[int, int, int], np.ndarray]
    vdegens: Mapping[tuple[int, int, int], np.ndarray]
    _rows: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        if self.N < 0 or self.M < 0:
            raise MalformedSSet("truncation levels must be >= 0")
        levels = tuple(tuple(tuple(str(x) for x in cell) for cell in col) for col in self.levels)
        if len(levels) != self.N + 1 or any(len(col) != self.M + 1 for col in levels):
            raise MalformedSSet(f"levels must form a {self.N + 1}×{self.M + 1} grid")
        object.__setattr__(self, "levels", levels)
        stores = {}
        for name, direction, kind in (
            ("hfaces", "h", "d"), ("hdegens", "h", "s"), ("vfaces", "v", "d"), ("vdegens", "v", "s"),
        ):
            src, out = getattr(self, name), {}
            moving, fixed = (self.N, self.M) if direction == "h" else (self.M, self.N)
            for g in generators(moving):
                if g.kind != kind:
                    continue
                for other in range(fixed + 1):
                    n, m = (g.level, other) if direction == "h" else (other, g.level)
                    tn, tm = (g.target_level, other) if direction == "h" else (other, g.target_level)
                    key = (n, m, g.index)
                    if key not in src:
                        raise MalformedSSet(f"missing {name}[{n},{m},{g.index}]")
                    arr = np.array(src[key], dtype=np.int64).reshape(-1)
                    if arr.shape[0] != len(levels[n][m]):
                        raise MalformedSSet(f"{name}[{n},{m},{g.index}] has the wrong length")
                    if arr.size and (arr.min() < 0 or arr.max() >= len(levels[tn][tm])):
                        raise MalformedSSet(f"{name}[{n},{m},{g.index}] points outside X_{tn},{tm}")
                    arr.setflags(write=False)
                    out[key] = arr
            stores[name] = out
        for name, out in stores.items():
            object.__setattr__(self, name, out)

    def size(self, n: int, m: int) -> int:
        return len(self.levels[n][m])

    def hgen(self, g: Gen, m: int) -> np.ndarray:
        store = self.hfaces if g.kind == "d" else self.hdegens
        return store[(g.level, m, g.index)]

    def vgen(self, g: Gen, n: int) -> np.ndarray:
        store = self.vfaces if g.kind == "d" else self.vdegens
        return store[(n, g.level, g.index)]

    def replace(self, **stores) -> "TruncBiSSet":
        kw = {}
        for name in ("hfaces", "hdegens", "vfaces", "vdegens"):
            merged = dict(getattr(self, name))
            merged.update(stores.get(name, {}))
            kw[name] = merged
        return TruncBiSSet(self.N, self.M, self.levels, **kw)


def row(X: TruncBiSSet, m: int) -> TruncSSet:
    """The simplicial set ``n ↦ X_{n,m}`` with the horizontal generators."""
    if not 0 <= m <= X.M:
        raise ShapeError(f"row index {m} outside 0..{X.M}")
    if m not in X._rows:
        gens = generators(X.N)
        X._rows[m] = TruncSSet(
            X.N,
            tuple(X.levels[n][m] for n in range(X.N + 1)),
            {(g.level, g.index): X.hgen(g, m) for g in gens if g.kind == "d"},
            {(g.level, g.index): X.hgen(g, m) for g in gens if g.kind == "s"},
        )
    return X._rows[m]


def column(X: TruncBiSSet, n: int) -> TruncSSet:
    """The simplicial set ``m ↦ X_{n,m}`` with the vertical generators."""
    if not 0 <= n <= X.N:
        raise ShapeError(f"column index {n} outside 0..{X.N}")
    gens = generators(X.M)
    return TruncSSet(
        X.M,
        X.levels[n],
        {(g.level, g.index): X.vgen(g, n) for g in gens if g.kind == "d"},
        {(g.level, g.index): X.vgen(g, n) for g in gens if g.kind == "s"},
    )


def bifunctoriality_violations(X: TruncBiSSet, limit: Optional[int] = None) -> list[str]:
    """Cells where a horizontal and a vertical generator fail to commute."""
    out = []
    for h in generators(X.N):
        for v in generators(X.M):
            n, m = h.level, v.level
            n2, m2 = h.target_level, v.target_level
            lhs = X.vgen(v, n2)[X.hgen(h, m)]
            rhs = X.hgen(h, m2)[X.vgen(v, n)]
            bad = np.flatnonzero(lhs != rhs)
            if bad.size:
                i = int(bad[0])
                out.append(
                    f"horizontal {h} and vertical {v} disagree at {X.levels[n][m][i]}: "
                    f"{X.levels[n2][m2][lhs[i]]} vs {X.levels[n2][m2][rhs[i]]}"
                )
                if limit is not None and len(out) >= limit:
                    return out
    return out


def invariant_violations(X: TruncBiSSet) -> list[str]:
    out = []
    for m in range(X.M + 1):
        out += [f"row {m}: {v}" for v in simplicial_identities_check(row(X, m))]
    for n in range(X.N + 1):
        out += [f"column {n}: {v}" for v in simplicial_identities_check(column(X, n))]
    out += bifunctoriality_violations(X)
    return out


# -- double bar construction -------------------------------------------------------------

# largest level a double bar construction will materialize
MAX_CELLS = 1 << 20


def _block_digits(codes_len: int, q: int, n: int, m: int) -> np.ndarray:
    return kernels.decode(np.arange(codes_len), q, n * m).reshape(codes_len, n, m)


def _act(digits: np.ndarray, images: np.ndarray, target: int, M: FinMonoid, axis: str) -> np.ndarray:
    """Apply a partial map blockwise: along the block index (``"h"``) or inside
    each block (``"v"``); returns codes."""
    K, n, m = digits.shape
    if axis == "h":
        flat = digits.transpose(0, 2, 1).reshape(K * m, n)
        out = kernels.fiber_products(flat, images, target, M.table, M.unit)
        out = out.reshape(K, m, target).transpose(0, 2, 1)
    else:
        flat = digits.reshape(K * n, m)
        out = kernels.fiber_products(flat, images, target, M.table, M.unit).reshape(K, n, target)
    return kernels.encode(out.reshape(K, -1), M.order)


def _images(g: Gen) -> np.ndarray:
    return np.array([-1 if v is None else v for v in hj_map(g.op_arrow()).images], dtype=np.int64)


def double_bar(horizontal: FinMonoid, vertical: FinMonoid, N: int, M: int) -> TruncBiSSet:
    """Bar construction in both directions, one monoid per direction.

    No compatibility is checked; :func:`double_nerve` is the checked entry
    point.  Both monoids must share their element labels.
    """
    if horizontal.elements != vertical.elements:
        raise MalformedMonoid("both directions need the same carrier")
    if N < 0 or M < 0:
        raise TruncationError("truncation levels must be >= 0")
    q, labels = horizontal.order, horizontal.elements
    if q ** (N * M) > MAX_CELLS:
        raise TruncationError(f"X_{{{N},{M}}} would have {q ** (N * M)} cells (limit {MAX_CELLS})")
    levels = tuple(
        tuple(
            tuple(tuple_label([labels[i] for i in t]) for t in cartesian(range(q), repeat=n * m))
            for m in range(M + 1)
        )
        for n in range(N + 1)
    )
    hf, hs, vf, vs = {}, {}, {}, {}
    for n in range(N + 1):
        for m in range(M + 1):
            digits = _block_digits(q ** (n * m), q, n, m)
            for g in generators(N):
                if g.level == n:
                    store = hf if g.kind == "d" else hs
                    store[(n, m, g.index)] = _act(digits, _images(g), g.target_level, horizontal, "h")
            for g in generators(M):
                if g.level == m:
                    store = vf if g.kind == "d" else vs
                    store[(n, m, g.index)] = _act(digits, _images(g), g.target_level, vertical, "v")
    return TruncBiSSet(N, M, levels, hf, hs, vf, vs)


def double_nerve(M: FinMonoid, N: int, M2: int) -> TruncBiSSet:
    """``X_{n,m} = M^{n·m}``; needs ``M`` commutative for the two bar structures
    to commute."""
    witness = M.commutativity_witness()
    if witness is not None:
        a, b = witness
        raise NotCommutative(M.elements[a], M.elements[b])
    return double_bar(M, M, N, M2)


def external_product(X: TruncSSet, Y: TruncSSet) -> TruncBiSSet:
    """``(X ⊠ Y)_{n,m} = X_n × Y_m``, horizontal generators from ``X``, vertical from ``Y``."""
    levels = tuple(
        tuple(tuple(pair_label(x, y) for x in X.levels[n] for y in Y.levels[m]) for m in range(Y.N + 1))
        for n in range(X.N + 1)
    )
    hf, hs, vf, vs = {}, {}, {}, {}
    for g in generators(X.N):
        for m in range(Y.N + 1):
            arr = (X.gen(g)[:, None] * Y.size(m) + np.arange(Y.size(m))[None, :]).reshape(-1)
            (hf if g.kind == "d" else hs)[(g.level, m, g.index)] = arr
    for g in generators(Y.N):
        for n in range(X.N + 1):
            w = Y.size(g.target_level)
            arr = (np.arange(X.size(n))[:, None] * w + Y.gen(g)[None, :]).reshape(-1)
            (vf if g.kind == "d" else vs)[(n, g.level, g.index)] = arr
    return TruncBiSSet(X.N, Y.N, levels, hf, hs, vf, vs)


# -- checks --------------------------------------------------------------------------

@dataclass(frozen=True)
class DoubleSegalReport:
    mode: str
    rows: tuple[SegalReport, ...]
    column: Optional[SegalReport]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows) and self.column is not None and self.column.passed

    def lines(self) -> list[str]:
        out = []
        for m, r in enumerate(self.rows):
            out += [f"row m={m} {line}" for line in r.lines()]
        if self.column is None:
            out.append("column n=1: absent (N < 1)")
        else:
            out += [f"column n=1 {line}" for line in self.column.lines()]
        return out

    def failures(self) -> list[tuple[str, object]]:
        """``(location, verdict)`` pairs in row order, then the column."""
        out = [(f"row m={m}", v) for m, r in enumerate(self.rows) for v in r.failures]
        if self.column is None:
            out.append(("column n=1", "absent (N < 1)"))
        else:
            out += [("column n=1", v) for v in self.column.failures]
        return out


def double_segal_check(X: TruncBiSSet, mode: str = STRICT) -> DoubleSegalReport:
    """Segal check on every row ``X_{·,m}`` and on the column ``X_{1,·}``."""
    rows = tuple(segal_check(row(X, m), mode) for m in range(X.M + 1))
    col = segal_check(column(X, 1), mode) if X.N >= 1 else None
    return DoubleSegalReport(mode, rows, col)


@dataclass(frozen=True)
class NaturalityResult:
    ok: bool
    witness: Optional[str] = None

    def __bool__(self):
        return self.ok


def p_naturality_check(X: TruncBiSSet) -> NaturalityResult:
    """For every vertical generator ``f: m -> m'`` and every ``n``, the Segal maps
    ``p_{n,m}`` and ``p_{n,m'}`` intertwine ``f`` on ``X_{n,·}`` with ``f``
    applied to each of the ``n`` edges."""
    if X.N < 1:
        return NaturalityResult(True)
    p = {m: {n: p_map(row(X, m), n) for n in range(X.N + 1)} for m in range(X.M + 1)}
    for f in generators(X.M):
        m, m2 = f.level, f.target_level
        edge_action = X.vgen(f, 1)
        for n in range(X.N + 1):
            lhs = p[m2][n][X.vgen(f, n)]
            rhs = edge_action[p[m][n]]
            bad = np.flatnonzero((lhs != rhs).any(axis=1)) if n else np.array([], dtype=np.int64)
            if bad.size:
                x = X.levels[n][m][int(bad[0])]
                return NaturalityResult(False, f"n={n}, vertical {f}, element {x}")
    return NaturalityResult(True)


@dataclass(frozen=True)
class EckmannHilton:
    horizontal: FinMonoid
    vertical: FinMonoid
    units_equal: bool
    interchange: bool
    equal: bool
    commutative: bool
    grouplike: bool

    @property
    def verdict(self) -> bool:
        return self.units_equal and self.interchange and self.equal and self.commutative

    def lines(self) -> list[str]:
        return [
            f"units equal: {self.units_equal}",
            f"interchange: {self.interchange}",
            f"products equal: {self.equal}",
            f"commutative: {self.commutative}",
            f"grouplike (analogue only): {self.grouplike}",
        ]


def eckmann_hilton(X: TruncBiSSet) -> EckmannHilton:
    """Extract the horizontal and vertical products on ``X_{1,1}`` and sweep the
    interchange law over all 2×2 blocks."""
    if X.N < 2 or X.M < 2:
        raise TruncationError("Eckmann-Hilton extraction needs N, M >= 2")
    report = double_segal_check(X, BIJECTIVE)
    if not report.passed:
        where, verdict = report.failures()[0]
        raise NotSegal(where, verdict)
    h = _monoid_from_segal(row(X, 1))
    v = _monoid_from_segal(column(X, 1))
    H, V = h.table, v.table
    q = h.order
    # block [[a, b], [c, d]]: rows multiplied horizontally, then vertically, and conversely
    idx = np.arange(q)
    a, b, c, d = np.meshgrid(idx, idx, idx, idx, indexing="ij")
    lhs = V[H[a, b], H[c, d]]
    rhs = H[V[a, c], V[b, d]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        w = tuple(int(t) for t in bad[0])
        lab = h.elements
        raise InterchangeFails(*(lab[t] for t in w), lab[int(lhs[w])], lab[int(rhs[w])])
    return EckmannHilton(
        horizontal=h,
        vertical=v,
        units_equal=h.unit == v.unit,
        interchange=True,
        equal=np.array_equal(H, V),
        commutative=h.is_commutative() and v.is_commutative(),
        grouplike=h.is_group(),
    )


# -- files ---------------------------------------------------------------------------

_STORES = ("hfaces", "hdegens", "vfaces", "vdegens")


def _target(name: str, n: int, m: int, i: int) -> tuple[int, int]:
    dn = {"hfaces": (-1, 0), "hdegens": (1, 0), "vfaces": (0, -1), "vdegens": (0, 1)}[name]
    return n + dn[0], m + dn[1]


def bisset_to_document(X: TruncBiSSet) -> dict:
    doc = {"N": X.N, "M": X.M, "levels": [[list(cell) for cell in col] for col in X.levels]}
    for name in _STORES:
        entries = {}
        for (n, m, i), arr in sorted(getattr(X, name).items()):
            tn, tm = _target(name, n, m, i)
            entries[f"{n},{m},{i}"] = [X.levels[tn][tm][v] for v in arr]
        doc[name] = entries
    return doc


def bisset_from_document(doc, check: bool = True) -> TruncBiSSet:
    if not isinstance(doc, dict):
        raise MalformedSSet("bisimplicial document must be an object")
    try:
        N, M, levels = doc["N"], doc["M"], doc["levels"]
    except KeyError as exc:
        raise MalformedSSet(f"missing field {exc.args[0]!r}") from None
    if not (isinstance(N, int) and isinstance(M, int)) or N < 0 or M < 0:
        raise MalformedSSet("N and M must be natural numbers")
    if (
        not isinstance(levels, list)
        or len(levels) != N + 1
        or not all(isinstance(col, list) and len(col) == M + 1 for col in levels)
        or not all(isinstance(cell, list) and all(isinstance(x, str) for x in cell) for col in levels for cell in col)
    ):
        raise MalformedSSet(f"levels must be a {N + 1}×{M + 1} grid of label lists")
    stores = {}
    for name in _STORES:
        raw = doc.get(name)
        if not isinstance(raw, dict):
            raise MalformedSSet(f"missing or malformed field {name!r}")
        out = {}
        for key, targets in raw.items():
            try:
                n, m, i = (int(p) for p in key.split(","))
            except ValueError:
                raise MalformedSSet(f"bad key {key!r} in {name}") from None
            tn, tm = _target(name, n, m, i)
            if not (0 <= tn <= N and 0 <= tm <= M and 0 <= n <= N and 0 <= m <= M):
                raise MalformedSSet(f"key {key!r} in {name} leaves the truncation")
            index = {x: j for j, x in enumerate(levels[tn][tm])}
            if not isinstance(targets, list):
                raise MalformedSSet(f"{name}[{key}] must be a list")
            try:
                out[(n, m, i)] = [index[x] for x in targets]
            except (KeyError, TypeError):
                raise MalformedSSet(f"{name}[{key}] names an unknown label") from None
        stores[name] = out
    X = TruncBiSSet(N, M, tuple(tuple(tuple(c) for c in col) for col in levels), **stores)
    if check:
        violations = invariant_violations(X)
        if violations:
            raise InvalidBisimplicialSet(violations)
    return X


def dumps_bisset(X: TruncBiSSet) -> str:
    return json.dumps(bisset_to_document(X), indent=2, ensure_ascii=False) + "\n"


def load_bisset(path, check: bool = True) -> TruncBiSSet:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise MalformedSSet(f"{path}: {exc}") from None
    return bisset_from_document(doc, check=check)
