"""Truncated simplicial sets, the reduced bar construction of a finite monoid,
Segal maps, the Segal checker and monoid reconstruction.

Simplices are stored by index into ordered label lists; every face and
degeneracy is an ``int64`` index array.  Labels of the form ``(a,b,c)`` are
read as flat tuples (``()`` is the empty tuple, any other label ``x`` is the
one-tuple ``(x,)``); the strict Segal check compares labels through that
reading.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from . import kernels
from .dual_functors import edge_arrow, hj_map
from .finset_model import FinMonoid, MalformedMonoid, f_eval, validate_monoid
from .simplex_cats import Gen, OpArrow, ShapeError, compose, enumerate_hom, factorize

DEFAULT_N = 4

STRICT = "strict"
BIJECTIVE = "bijective"
MODES = (STRICT, BIJECTIVE)


class TruncationError(ValueError):
    pass


class MalformedSSet(ValueError):
    pass


class InvalidSimplicialSet(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = "\n".join(f"  {v}" for v in self.violations[:10])
        super().__init__(f"{len(self.violations)} simplicial identity violation(s):\n{lines}")


class NotSegal(ValueError):
    def __init__(self, level, witness):
        self.level = level
        self.witness = witness
        super().__init__(f"Segal condition fails at level {level}: {witness}")


# -- labels ---------------------------------------------------------------------

def tuple_label(parts: Sequence[str]) -> str:
    return "(" + ",".join(parts) + ")"


def parse_label(label: str) -> tuple[str, ...]:
    if len(label) >= 2 and label[0] == "(" and label[-1] == ")":
        inner = label[1:-1]
        return tuple(inner.split(",")) if inner else ()
    return (label,)


# -- truncated simplicial sets -----------------------------------------------------

def generators(N: int) -> list[Gen]:
    """All faces and degeneracies living inside truncation ``N``."""
    gens = [Gen("d", i, n) for n in range(1, N + 1) for i in range(n + 1)]
    gens += [Gen("s", i, n) for n in range(N) for i in range(n + 1)]
    return gens


@dataclass(frozen=True, eq=False)
class TruncSSet:
    """Levels ``X_0..X_N`` with face arrays ``faces[(n, i)]: X_n -> X_{n-1}`` and
    degeneracy arrays ``degeneracies[(n, i)]: X_n -> X_{n+1}``."""

    N: int
    levels: tuple[tuple[str, ...], ...]
    faces: Mapping[tuple[int, int], np.ndarray]
    degeneracies: Mapping[tuple[int, int], np.ndarray]
    _index: tuple = field(init=False, repr=False)

    def __post_init__(self):
        if self.N < 0:
            raise MalformedSSet("truncation level must be >= 0")
        levels = tuple(tuple(str(x) for x in lv) for lv in self.levels)
        if len(levels) != self.N + 1:
            raise MalformedSSet(f"expected {self.N + 1} levels, got {len(levels)}")
        for n, lv in enumerate(levels):
            if len(set(lv)) != len(lv):
                raise MalformedSSet(f"duplicate labels at level {n}")
        object.__setattr__(self, "levels", levels)
        faces, degens = {}, {}
        for g in generators(self.N):
            store, src = (faces, self.faces) if g.kind == "d" else (degens, self.degeneracies)
            key = (g.level, g.index)
            if key not in src:
                raise MalformedSSet(f"missing generator {g}")
            arr = np.array(src[key], dtype=np.int64).reshape(-1)
            if arr.shape[0] != len(levels[g.level]):
                raise MalformedSSet(f"{g} has {arr.shape[0]} entries, level {g.level} has {len(levels[g.level])}")
            if arr.size and (arr.min() < 0 or arr.max() >= len(levels[g.target_level])):
                raise MalformedSSet(f"{g} points outside level {g.target_level}")
            arr.setflags(write=False)
            store[key] = arr
        object.__setattr__(self, "faces", faces)
        object.__setattr__(self, "degeneracies", degens)
        object.__setattr__(self, "_index", tuple({x: i for i, x in enumerate(lv)} for lv in levels))

    def size(self, n: int) -> int:
        return len(self.levels[n])

    def index(self, n: int, label: str) -> int:
        return self._index[n][label]

    def gen(self, g: Gen) -> np.ndarray:
        return self.faces[(g.level, g.index)] if g.kind == "d" else self.degeneracies[(g.level, g.index)]

    def replace(self, faces=None, degeneracies=None) -> "TruncSSet":
        f = dict(self.faces)
        f.update(faces or {})
        s = dict(self.degeneracies)
        s.update(degeneracies or {})
        return TruncSSet(self.N, self.levels, f, s)


def constant(labels: Sequence[str], N: int = DEFAULT_N) -> TruncSSet:
    """The constant simplicial set on ``labels``: every generator is the identity."""
    ident = np.arange(len(labels))
    return TruncSSet(
        N,
        tuple(tuple(labels) for _ in range(N + 1)),
        {(g.level, g.index): ident for g in generators(N) if g.kind == "d"},
        {(g.level, g.index): ident for g in generators(N) if g.kind == "s"},
    )


def nerve(M: FinMonoid, N: int = DEFAULT_N) -> TruncSSet:
    """Reduced bar construction of ``M`` truncated at ``N``: ``X_n = M^n`` and each
    generator acts as the partial-map functor applied to its H∘J image."""
    if N < 0:
        raise TruncationError("N must be >= 0")
    for e in M.elements:
        if any(c in e for c in "(),") or e == "":
            raise MalformedMonoid(f"element label {e!r} cannot be used inside tuple labels")
    levels = tuple(
        tuple(tuple_label([M.elements[i] for i in t]) for t in product(range(M.order), repeat=n))
        for n in range(N + 1)
    )
    faces, degens = {}, {}
    for g in generators(N):
        table = f_eval(hj_map(g.op_arrow()), M).table
        (faces if g.kind == "d" else degens)[(g.level, g.index)] = table
    return TruncSSet(N, levels, faces, degens)


def _check_levels(X, a: OpArrow):
    if max(a.dom_level, a.cod_level) > X.N:
        raise TruncationError(f"{a} leaves truncation N={X.N}")


def eval_word(X: TruncSSet, word: Iterable[Gen], level: int) -> np.ndarray:
    """Apply generators in the given order, starting at ``X_level``."""
    out = np.arange(X.size(level))
    for g in word:
        if g.level != level:
            raise ShapeError(f"{g} does not start at level {level}")
        out = X.gen(g)[out]
        level = g.target_level
    return out


def eval_arrow(X: TruncSSet, a: OpArrow) -> np.ndarray:
    """``X(a): X_m -> X_n`` as an index array, via the canonical factorization."""
    _check_levels(X, a)
    return eval_word(X, reversed(factorize(a)), a.dom_level)


def p_map(X: TruncSSet, n: int) -> np.ndarray:
    """Segal map ``X_n -> (X_1)^n``; row ``x`` lists the ``n`` edges of ``x``."""
    if n > X.N:
        raise TruncationError(f"level {n} exceeds truncation N={X.N}")
    if n == 0:
        return np.zeros((X.size(0), 0), dtype=np.int64)
    if n == 1:
        return np.arange(X.size(1), dtype=np.int64)[:, None]
    return np.stack([eval_arrow(X, edge_arrow(n, j)) for j in range(1, n + 1)], axis=1)


# -- Segal check --------------------------------------------------------------------

@dataclass(frozen=True)
class LevelVerdict:
    level: int
    status: str  # "strict-pass" | "bijective-pass" | "fail"
    witness: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def __str__(self):
        text = f"n={self.level}: {self.status}"
        return text + (f" ({self.witness})" if self.witness else "")


@dataclass(frozen=True)
class SegalReport:
    mode: str
    verdicts: tuple[LevelVerdict, ...]

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    @property
    def failures(self) -> list[LevelVerdict]:
        return [v for v in self.verdicts if not v.passed]

    def lines(self) -> list[str]:
        return [str(v) for v in self.verdicts]


def _sorted_indices(labels: Sequence[str]) -> list[int]:
    return sorted(range(len(labels)), key=labels.__getitem__)


def _fmt_edges(X: TruncSSet, row) -> str:
    return "(" + ", ".join(X.levels[1][c] for c in row) + ")"


def _bijective_witness(X: TruncSSet, n: int, p: np.ndarray) -> Optional[str]:
    q = X.size(1)
    codes = kernels.encode(p, q)
    seen: dict[int, int] = {}
    for x in _sorted_indices(X.levels[n]):
        c = int(codes[x])
        if c in seen:
            y = seen[c]
            return (
                f"collision: {X.levels[n][y]} and {X.levels[n][x]} "
                f"both map to {_fmt_edges(X, p[x])}"
            )
        seen[c] = x
    if len(seen) == q ** n:
        return None
    order = _sorted_indices(X.levels[1])
    for t in product(order, repeat=n):
        if int(kernels.encode([t], q)[0]) not in seen:
            return f"missing: no simplex maps to {_fmt_edges(X, t)}"
    raise AssertionError("unreachable")


def _level_verdict(X: TruncSSet, n: int, mode: str) -> LevelVerdict:
    if n == 0:
        if X.size(0) != 1:
            return LevelVerdict(0, "fail", f"non-singleton X_0 with {X.size(0)} points: {list(X.levels[0])}")
        if mode == STRICT and parse_label(X.levels[0][0]) != ():
            return LevelVerdict(0, "fail", f"label: X_0 point {X.levels[0][0]} is not ()")
        return LevelVerdict(0, f"{mode}-pass")
    p = p_map(X, n)
    if mode == STRICT:
        ones = [parse_label(x) for x in X.levels[1]]
        for x in _sorted_indices(X.levels[n]):
            expected = sum((ones[c] for c in p[x]), ())
            if parse_label(X.levels[n][x]) != expected:
                return LevelVerdict(
                    n, "fail",
                    f"label: p_{n}({X.levels[n][x]}) = {tuple_label(expected)}",
                )
    witness = _bijective_witness(X, n, p)
    if witness:
        return LevelVerdict(n, "fail", witness)
    return LevelVerdict(n, f"{mode}-pass")


def segal_check(X: TruncSSet, mode: str = STRICT) -> SegalReport:
    """Per-level verdicts for ``p_n`` being the identity (strict) or a bijection."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    return SegalReport(mode, tuple(_level_verdict(X, n, mode) for n in range(X.N + 1)))


# -- reconstruction -------------------------------------------------------------------

def _monoid_from_segal(X: TruncSSet) -> FinMonoid:
    report = segal_check(X, BIJECTIVE)
    if not report.passed:
        bad = report.failures[0]
        raise NotSegal(bad.level, bad.witness)
    q = X.size(1)
    p2 = p_map(X, 2)
    inverse = np.empty(q * q, dtype=np.int64)
    inverse[kernels.encode(p2, q)] = np.arange(X.size(2))
    mult = X.faces[(2, 1)][inverse].reshape(q, q)
    unit = int(X.degeneracies[(0, 0)][0])
    labels = []
    for x in X.levels[1]:
        parts = parse_label(x)
        labels.append(parts[0] if len(parts) == 1 else x)
    return validate_monoid(labels, unit, mult)


def reconstruct_monoid(X: TruncSSet) -> FinMonoid:
    """Monoid on ``X_1`` with unit ``s_0(*)`` and product ``d_1 ∘ p_2^{-1}``."""
    if X.N < 3:
        raise TruncationError(f"reconstruction needs N >= 3, got N={X.N}")
    return _monoid_from_segal(X)


@dataclass(frozen=True)
class BarEquality:
    equal: bool
    arrow: Optional[OpArrow] = None
    detail: str = ""

    def __bool__(self):
        return self.equal


def all_op_arrows(N: int) -> Iterable[OpArrow]:
    for m in range(N + 1):
        for n in range(N + 1):
            yield from enumerate_hom("op", m, n)


def _alignment(X: TruncSSet, Y: TruncSSet) -> list[np.ndarray]:
    if X.N != Y.N:
        raise ShapeError(f"truncations differ: {X.N} vs {Y.N}")
    perms = []
    for n in range(X.N + 1):
        if set(X.levels[n]) != set(Y.levels[n]):
            raise ShapeError(f"level {n} labels differ from the nerve")
        perms.append(np.array([Y.index(n, x) for x in X.levels[n]], dtype=np.int64))
    return perms


def verify_bar_equality(X: TruncSSet, M: FinMonoid) -> BarEquality:
    """Compare ``X`` with ``nerve(M, X.N)`` on every arrow inside the truncation."""
    Y = nerve(M, X.N)
    try:
        perm = _alignment(X, Y)
    except ShapeError as exc:
        return BarEquality(False, None, str(exc))
    for a in all_op_arrows(X.N):
        xa = perm[a.cod_level][eval_arrow(X, a)]
        ya = eval_arrow(Y, a)[perm[a.dom_level]]
        bad = np.flatnonzero(xa != ya)
        if bad.size:
            i = int(bad[0])
            return BarEquality(
                False, a,
                f"{a} sends {X.levels[a.dom_level][i]} to "
                f"{Y.levels[a.cod_level][xa[i]]}, bar construction gives {Y.levels[a.cod_level][ya[i]]}",
            )
    return BarEquality(True)


# -- simplicial identities --------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    word: tuple[Gen, ...]
    canonical: tuple[Gen, ...]
    element: str
    got: str
    expected: str

    def __str__(self):
        w = " then ".join(map(str, self.word))
        c = " then ".join(map(str, self.canonical)) or "identity"
        return f"{w} != {c} at {self.element}: {self.got} vs {self.expected}"


def identity_pairs(N: int) -> list[tuple[tuple[Gen, Gen], tuple[Gen, ...]]]:
    """Every two-generator word within truncation ``N`` that is not already in
    canonical form, paired with the canonical word of the same arrow (both in
    application order on ``X``)."""
    gens = generators(N)
    out = []
    for g1 in gens:
        for g2 in gens:
            if g2.level != g1.target_level:
                continue
            arrow = compose(g2.op_arrow(), g1.op_arrow())
            canonical = tuple(reversed(factorize(arrow)))
            if canonical != (g1, g2):
                out.append(((g1, g2), canonical))
    return out


def simplicial_identities_check(X: TruncSSet, limit: Optional[int] = None) -> list[Violation]:
    violations = []
    for word, canonical in identity_pairs(X.N):
        start = word[0].level
        lhs = eval_word(X, word, start)
        rhs = eval_word(X, canonical, start)
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            i = int(bad[0])
            end = word[-1].target_level
            violations.append(
                Violation(word, canonical, X.levels[start][i], X.levels[end][lhs[i]], X.levels[end][rhs[i]])
            )
            if limit is not None and len(violations) >= limit:
                break
    return violations


# -- files ------------------------------------------------------------------------

def sset_to_document(X: TruncSSet) -> dict:
    def labelled(store, kind):
        out = {}
        for g in generators(X.N):
            if g.kind == kind:
                arr = store[(g.level, g.index)]
                out[f"{g.level},{g.index}"] = [X.levels[g.target_level][v] for v in arr]
        return out

    return {
        "N": X.N,
        "levels": [list(lv) for lv in X.levels],
        "faces": labelled(X.faces, "d"),
        "degeneracies": labelled(X.degeneracies, "s"),
    }


def _generator_tables(doc_map, kind: str, levels, N: int) -> dict:
    if not isinstance(doc_map, dict):
        raise MalformedSSet(f"{kind} must be an object keyed by 'n,i'")
    out = {}
    for key, targets in doc_map.items():
        try:
            n, i = (int(p) for p in key.split(","))
        except ValueError:
            raise MalformedSSet(f"bad generator key {key!r}") from None
        g = Gen("d" if kind == "faces" else "s", i, n)
        if g not in generators(N):
            raise MalformedSSet(f"generator key {key!r} outside truncation N={N}")
        tgt = {x: j for j, x in enumerate(levels[g.target_level])}
        if not isinstance(targets, list):
            raise MalformedSSet(f"{kind}[{key}] must be a list")
        try:
            out[(n, i)] = [tgt[x] for x in targets]
        except (KeyError, TypeError):
            raise MalformedSSet(f"{kind}[{key}] names a label outside level {g.target_level}") from None
    return out


def sset_from_document(doc, check: bool = True) -> TruncSSet:
    if not isinstance(doc, dict):
        raise MalformedSSet("simplicial set document must be an object")
    try:
        N, levels = doc["N"], doc["levels"]
        faces, degens = doc["faces"], doc["degeneracies"]
    except KeyError as exc:
        raise MalformedSSet(f"missing field {exc.args[0]!r}") from None
    if not isinstance(N, int) or N < 0:
        raise MalformedSSet("N must be a natural number")
    if not isinstance(levels, list) or len(levels) != N + 1:
        raise MalformedSSet(f"levels must be a list of {N + 1} label lists")
    if not all(isinstance(lv, list) and all(isinstance(x, str) for x in lv) for lv in levels):
        raise MalformedSSet("levels must contain lists of string labels")
    X = TruncSSet(
        N,
        tuple(tuple(lv) for lv in levels),
        _generator_tables(faces, "faces", levels, N),
        _generator_tables(degens, "degeneracies", levels, N),
    )
    if check:
        violations = simplicial_identities_check(X)
        if violations:
            raise InvalidSimplicialSet(violations)
    return X


def dumps_sset(X: TruncSSet) -> str:
    return json.dumps(sset_to_document(X), indent=2, ensure_ascii=False) + "\n"


def load_sset(path, check: bool = True) -> TruncSSet:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise MalformedSSet(f"{path}: {exc}") from None
    return sset_from_document(doc, check=check)
