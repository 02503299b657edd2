"""Finite monoids, flat tuple sets, and the strict monoidal functor out of
partial maps determined by a monoid.

Elements of ``M^n`` are flat ``n``-tuples of element indices, so
``M^a x M^b`` *is* ``M^(a+b)`` and ``M^0`` is ``{()}``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .simplex_cats import PartialMap, TotalMap

MAX_ENUM_ORDER = 4


class MonoidError(ValueError):
    pass


class MalformedMonoid(MonoidError):
    pass


class NotAssociative(MonoidError):
    def __init__(self, a, b, c):
        self.witness = (a, b, c)
        super().__init__(f"not associative: ({a}·{b})·{c} != {a}·({b}·{c})")


class NotUnit(MonoidError):
    def __init__(self, a):
        self.witness = a
        super().__init__(f"unit law fails at {a}")


class NotCommutative(MonoidError):
    def __init__(self, a, b):
        self.witness = (a, b)
        super().__init__(f"not commutative: {a}·{b} != {b}·{a}")


@dataclass(frozen=True, eq=False)
class FinMonoid:
    elements: tuple[str, ...]
    unit: int
    table: np.ndarray

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def product(self, xs: Sequence[int]) -> int:
        out = self.unit
        for x in xs:
            out = int(self.table[out, x])
        return out

    def commutativity_witness(self):
        bad = np.argwhere(self.table != self.table.T)
        return None if bad.size == 0 else (int(bad[0][0]), int(bad[0][1]))

    def is_commutative(self) -> bool:
        return self.commutativity_witness() is None

    def is_group(self) -> bool:
        return bool(all((row == self.unit).any() for row in self.table))

    def table_rows(self) -> list[list[int]]:
        return self.table.tolist()

    def __eq__(self, other):
        if not isinstance(other, FinMonoid):
            return NotImplemented
        return (
            self.elements == other.elements
            and self.unit == other.unit
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.elements, self.unit, self.table.tobytes()))

    def __repr__(self):
        return f"FinMonoid({list(self.elements)}, unit={self.elements[self.unit]!r}, table={self.table_rows()})"


def validate_monoid(elements: Sequence[str], unit: int, table) -> FinMonoid:
    """Check closure, unit laws and associativity; return the frozen monoid.

    Raises :class:`NotUnit` or :class:`NotAssociative` with element labels as
    witnesses, or :class:`MalformedMonoid` for shape problems.
    """
    elements = tuple(str(e) for e in elements)
    q = len(elements)
    if len(set(elements)) != q:
        raise MalformedMonoid(f"duplicate element labels in {list(elements)}")
    if q == 0:
        raise MalformedMonoid("a monoid needs at least its unit")
    try:
        arr = np.array(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise MalformedMonoid(f"table is not a square integer matrix: {exc}") from None
    if arr.shape != (q, q):
        raise MalformedMonoid(f"table shape {arr.shape} does not match {q} elements")
    if arr.min() < 0 or arr.max() >= q:
        raise MalformedMonoid("table entries outside the element range")
    if not 0 <= unit < q:
        raise MalformedMonoid(f"unit index {unit} out of range")
    bad = kernels.unit_witness(arr, unit)
    if bad >= 0:
        raise NotUnit(elements[bad])
    a, b, c = kernels.assoc_witness(arr)
    if a >= 0:
        raise NotAssociative(elements[a], elements[b], elements[c])
    arr.setflags(write=False)
    return FinMonoid(elements, unit, arr)


def cyclic_group(n: int) -> FinMonoid:
    idx = np.arange(n)
    return validate_monoid([str(i) for i in range(n)], 0, (idx[:, None] + idx[None, :]) % n)


def enumerate_monoids(order: int, labels: Sequence[str] | None = None) -> list[FinMonoid]:
    """Every monoid table on ``order`` labeled elements with unit at index 0."""
    if order < 1:
        raise ValueError("order must be >= 1")
    if order > MAX_ENUM_ORDER:
        raise ValueError(f"order {order} too large for exhaustive search (max {MAX_ENUM_ORDER})")
    if labels is None:
        labels = ["e"] + [chr(ord("a") + i) for i in range(order - 1)]
    codes = np.flatnonzero(kernels.associative_mask(order))
    tables = kernels.tables_from_codes(codes, order)
    out = []
    for t in tables:
        t.setflags(write=False)
        out.append(FinMonoid(tuple(labels), 0, t))
    return out


# -- flat tuple sets -----------------------------------------------------------

@dataclass(frozen=True)
class TupleSet:
    base_size: int
    arity: int

    def __len__(self):
        return self.base_size ** self.arity

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return product(range(self.base_size), repeat=self.arity)

    def digits(self) -> np.ndarray:
        return kernels.decode(np.arange(len(self)), self.base_size, self.arity)

    def code(self, t: Sequence[int]) -> int:
        c = 0
        for x in t:
            c = c * self.base_size + x
        return c


class TupleFunction:
    """A function ``M^source -> M^target`` tabulated on tuple codes."""

    def __init__(self, source: int, target: int, base_size: int, table: np.ndarray):
        self.source = source
        self.target = target
        self.base_size = base_size
        self.table = table

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != self.source:
            raise ValueError(f"expected a {self.source}-tuple, got {tuple(x)}")
        code = TupleSet(self.base_size, self.source).code(x)
        return tuple(int(d) for d in kernels.decode([self.table[code]], self.base_size, self.target)[0])

    def then(self, other: "TupleFunction") -> "TupleFunction":
        return TupleFunction(self.source, other.target, self.base_size, other.table[self.table])

    def __eq__(self, other):
        if not isinstance(other, TupleFunction):
            return NotImplemented
        return (self.source, self.target, self.base_size) == (
            other.source, other.target, other.base_size,
        ) and np.array_equal(self.table, other.table)


def f_eval(g: PartialMap | TotalMap, M: FinMonoid) -> TupleFunction:
    """Image of ``g`` under the strict monoidal functor sending 1 to ``M``.

    Output entry ``j`` is the product, in increasing position order, of the
    input entries mapped to ``j``; empty products give the unit.
    """
    src = TupleSet(M.order, g.source)
    images = np.array([-1 if v is None else v for v in g.images], dtype=np.int64)
    out = kernels.fiber_products(src.digits(), images, g.target, M.table, M.unit)
    return TupleFunction(g.source, g.target, M.order, kernels.encode(out, M.order))


# -- monoid files --------------------------------------------------------------

def monoid_to_document(M: FinMonoid) -> dict:
    return {
        "elements": list(M.elements),
        "unit": M.elements[M.unit],
        "table": [[M.elements[v] for v in row] for row in M.table_rows()],
    }


def monoid_from_document(doc) -> FinMonoid:
    if not isinstance(doc, dict):
        raise MalformedMonoid("monoid document must be an object")
    try:
        elements, unit, table = doc["elements"], doc["unit"], doc["table"]
    except KeyError as exc:
        raise MalformedMonoid(f"missing field {exc.args[0]!r}") from None
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise MalformedMonoid("elements must be a list of strings")
    if len(set(elements)) != len(elements):
        raise MalformedMonoid(f"duplicate element labels in {elements}")
    index = {e: i for i, e in enumerate(elements)}
    if unit not in index:
        raise MalformedMonoid(f"unit {unit!r} is not an element")
    if not isinstance(table, list) or len(table) != len(elements):
        raise MalformedMonoid("table must have one row per element")
    rows = []
    for row in table:
        if not isinstance(row, list) or len(row) != len(elements):
            raise MalformedMonoid("ragged table")
        try:
            rows.append([index[v] for v in row])
        except (KeyError, TypeError):
            raise MalformedMonoid(f"unknown element in row {row}") from None
    return validate_monoid(elements, index[unit], rows)


def dumps_monoid(M: FinMonoid) -> str:
    return json.dumps(monoid_to_document(M), indent=2, ensure_ascii=False) + "\n"


def load_monoid(path) -> FinMonoid:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise MalformedMonoid(f"{path}: {exc}") from None
    return monoid_from_document(doc)
