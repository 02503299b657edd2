"""Finite ordinals and order-preserving maps between them.

Ordinals are plain ints: ``n`` is the chain ``{0, ..., n-1}``.  Four arrow
kinds live here:

* :class:`TotalMap` -- order-preserving functions (arrows of the simplex
  category),
* :class:`PartialMap` -- order-preserving partial functions, ``None`` marks an
  undefined position,
* :class:`IntervalMap` -- total maps between ordinals ``>= 2`` that keep the
  first and last element,
* :class:`OpArrow` -- an arrow ``[m] -> [n]`` of the opposite of the
  topologist's simplex category, stored through its underlying total map
  ``n+1 -> m+1``.

The textual notation ``2→1:[0,0]`` (total), ``1⇀0:[_]`` (partial) and
``[2]→[1]:[0,2]`` (opposite arrow, listing the underlying images) is used for
``str``/``parse_map`` round trips.  ASCII ``->`` and ``~>`` are accepted on
input.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np


class ShapeError(ValueError):
    """Maps that do not fit together, or data that is not a valid map."""


def _check_size(n: int, what: str) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ShapeError(f"{what} must be a natural number, got {n!r}")
    return n


def _fmt_images(images: Sequence[Optional[int]]) -> str:
    return "[" + ",".join("_" if v is None else str(v) for v in images) + "]"


@dataclass(frozen=True)
class TotalMap:
    source: int
    target: int
    images: tuple[int, ...]

    def __post_init__(self):
        _check_size(self.source, "source")
        _check_size(self.target, "target")
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.source:
            raise ShapeError(f"expected {self.source} images, got {len(images)}")
        for v in images:
            if not 0 <= v < self.target:
                raise ShapeError(f"image {v} outside target {self.target}")
        for a, b in zip(images, images[1:]):
            if a > b:
                raise ShapeError(f"images {list(images)} are not nondecreasing")

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __str__(self):
        return f"{self.source}→{self.target}:{_fmt_images(self.images)}"


@dataclass(frozen=True)
class PartialMap:
    source: int
    target: int
    images: tuple[Optional[int], ...]

    def __post_init__(self):
        _check_size(self.source, "source")
        _check_size(self.target, "target")
        images = tuple(None if v is None else int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.source:
            raise ShapeError(f"expected {self.source} images, got {len(images)}")
        defined = [v for v in images if v is not None]
        for v in defined:
            if not 0 <= v < self.target:
                raise ShapeError(f"image {v} outside target {self.target}")
        for a, b in zip(defined, defined[1:]):
            if a > b:
                raise ShapeError(f"defined images {defined} are not nondecreasing")

    def __call__(self, i: int) -> Optional[int]:
        return self.images[i]

    def __str__(self):
        return f"{self.source}⇀{self.target}:{_fmt_images(self.images)}"


@dataclass(frozen=True)
class IntervalMap:
    underlying: TotalMap

    def __post_init__(self):
        f = self.underlying
        if f.source < 2 or f.target < 2:
            raise ShapeError("interval maps need source and target of size >= 2")
        if f.images[0] != 0 or f.images[-1] != f.target - 1:
            raise ShapeError(f"{f} does not preserve the endpoints")

    @classmethod
    def of(cls, source: int, target: int, images: Sequence[int]) -> "IntervalMap":
        return cls(TotalMap(source, target, tuple(images)))

    @property
    def source(self) -> int:
        return self.underlying.source

    @property
    def target(self) -> int:
        return self.underlying.target

    @property
    def images(self) -> tuple[int, ...]:
        return self.underlying.images

    def __call__(self, i: int) -> int:
        return self.underlying.images[i]

    def __str__(self):
        return str(self.underlying)


@dataclass(frozen=True)
class OpArrow:
    """Arrow ``[dom_level] -> [cod_level]``; ``underlying`` goes ``cod+1 -> dom+1``."""

    dom_level: int
    cod_level: int
    underlying: TotalMap

    def __post_init__(self):
        _check_size(self.dom_level, "dom_level")
        _check_size(self.cod_level, "cod_level")
        u = self.underlying
        if u.source != self.cod_level + 1 or u.target != self.dom_level + 1:
            raise ShapeError(
                f"underlying {u} does not fit [{self.dom_level}]→[{self.cod_level}]"
            )

    @classmethod
    def of(cls, dom_level: int, cod_level: int, images: Sequence[int]) -> "OpArrow":
        return cls(dom_level, cod_level, TotalMap(cod_level + 1, dom_level + 1, tuple(images)))

    def __str__(self):
        return f"[{self.dom_level}]→[{self.cod_level}]:{_fmt_images(self.underlying.images)}"


Map = Union[TotalMap, PartialMap, IntervalMap, OpArrow]


def _trusted(cls, source: int, target: int, images: tuple):
    # results of compose/tensor on valid maps are valid; skip re-validation
    obj = object.__new__(cls)
    object.__setattr__(obj, "source", source)
    object.__setattr__(obj, "target", target)
    object.__setattr__(obj, "images", images)
    return obj


# -- identity / compose / tensor ----------------------------------------------

def identity(n: int) -> TotalMap:
    return TotalMap(n, n, tuple(range(n)))


def partial_identity(n: int) -> PartialMap:
    return PartialMap(n, n, tuple(range(n)))


def interval_identity(n: int) -> IntervalMap:
    return IntervalMap(identity(n))


def op_identity(level: int) -> OpArrow:
    return OpArrow(level, level, identity(level + 1))


def as_partial(f: TotalMap) -> PartialMap:
    """The total map ``f`` seen as an arrow of the partial-map category."""
    return PartialMap(f.source, f.target, f.images)


def compose(g: Map, f: Map) -> Map:
    """``g ∘ f`` (apply ``f`` first).  Both maps must be of the same kind."""
    if type(g) is not type(f):
        raise ShapeError(f"cannot compose {type(g).__name__} with {type(f).__name__}")
    if isinstance(f, OpArrow):
        if f.cod_level != g.dom_level:
            raise ShapeError(f"cannot compose {g} after {f}")
        return OpArrow(f.dom_level, g.cod_level, compose(f.underlying, g.underlying))
    if f.target != g.source:
        raise ShapeError(f"cannot compose {g} after {f}: {f.target} != {g.source}")
    if isinstance(f, TotalMap):
        return _trusted(TotalMap, f.source, g.target, tuple(g.images[v] for v in f.images))
    if isinstance(f, IntervalMap):
        return IntervalMap(compose(g.underlying, f.underlying))
    return _trusted(
        PartialMap,
        f.source,
        g.target,
        tuple(None if v is None else g.images[v] for v in f.images),
    )


def tensor(f: Map, f2: Map) -> Map:
    """Place ``f`` and ``f2`` side by side; sizes add."""
    if type(f) is not type(f2):
        raise ShapeError(f"cannot tensor {type(f).__name__} with {type(f2).__name__}")
    if isinstance(f, TotalMap):
        return _trusted(
            TotalMap,
            f.source + f2.source,
            f.target + f2.target,
            f.images + tuple(f.target + v for v in f2.images),
        )
    if isinstance(f, PartialMap):
        return _trusted(
            PartialMap,
            f.source + f2.source,
            f.target + f2.target,
            f.images + tuple(None if v is None else f.target + v for v in f2.images),
        )
    raise ShapeError(f"tensor is not defined on {type(f).__name__}")


# -- generators and hom enumeration ---------------------------------------------

def generator(tag: str) -> Map:
    if tag == "mu1":
        return TotalMap(2, 1, (0, 0))
    if tag == "eta1":
        return TotalMap(0, 1, ())
    if tag == "pi1":
        return PartialMap(1, 0, (None,))
    raise ValueError(f"unknown generator tag {tag!r}")


def _partial_images(n: int, m: int, lo: int):
    if n == 0:
        yield ()
        return
    for rest in _partial_images(n - 1, m, lo):
        yield (None,) + rest
    for v in range(lo, m):
        for rest in _partial_images(n - 1, m, v):
            yield (v,) + rest


def enumerate_hom(kind: str, n: int, m: int) -> list[Map]:
    """All arrows ``n -> m`` of ``kind`` in lexicographic image order
    (undefined sorts before 0)."""
    _check_size(n, "n")
    _check_size(m, "m")
    if kind == "total":
        return [TotalMap(n, m, imgs) for imgs in combinations_with_replacement(range(m), n)]
    if kind == "partial":
        return [PartialMap(n, m, imgs) for imgs in _partial_images(n, m, 0)]
    if kind == "interval":
        if n < 2 or m < 2:
            raise ShapeError("interval homs need n >= 2 and m >= 2")
        return [
            IntervalMap(TotalMap(n, m, (0,) + mid + (m - 1,)))
            for mid in combinations_with_replacement(range(m), n - 2)
        ]
    if kind == "op":
        # n, m are levels: arrows [n] -> [m]
        return [OpArrow(n, m, f) for f in enumerate_hom("total", m + 1, n + 1)]
    raise ValueError(f"unknown hom kind {kind!r}")


# -- batched image arrays --------------------------------------------------------------
#
# A hom-set is held as an int64 array with one row of images per map; -1 marks
# an undefined entry.  These mirror compose/tensor over whole hom-sets at once.

def hom_array(kind: str, n: int, m: int) -> np.ndarray:
    maps = enumerate_hom(kind, n, m)
    rows = [[-1 if v is None else v for v in f.images] for f in maps]
    return np.array(rows, dtype=np.int64).reshape(len(maps), n)


def compose_batch(g_rows: np.ndarray, f_rows: np.ndarray) -> np.ndarray:
    """``out[k, l] = g_rows[k] ∘ f_rows[l]``; shape ``(len(g), len(f), n)``."""
    kg, kf = g_rows.shape[0], f_rows.shape[0]
    if f_rows.shape[1] == 0 or kg == 0:
        return np.empty((kg, kf, f_rows.shape[1]), dtype=np.int64)
    safe = np.where(f_rows < 0, 0, f_rows)
    if g_rows.shape[1] == 0:
        return np.full((kg, kf, f_rows.shape[1]), -1, dtype=np.int64)
    out = g_rows[:, safe]  # (kg, kf, n)
    return np.where(f_rows[None, :, :] < 0, -1, out)


def tensor_batch(f_rows: np.ndarray, f_target: int, f2_rows: np.ndarray) -> np.ndarray:
    """``out[k, l] = f_rows[k] ⊗ f2_rows[l]``; shape ``(len(f), len(f2), n + n2)``."""
    k1, n1 = f_rows.shape
    k2, n2 = f2_rows.shape
    shifted = np.where(f2_rows < 0, -1, f2_rows + f_target)
    left = np.broadcast_to(f_rows[:, None, :], (k1, k2, n1))
    right = np.broadcast_to(shifted[None, :, :], (k1, k2, n2))
    return np.concatenate([left, right], axis=2)


# -- canonical factorization ------------------------------------------------------

class Gen(NamedTuple):
    """A generating arrow of the opposite simplex category.

    ``Gen("d", i, k)`` is the face ``X_k -> X_{k-1}`` (underlying coface
    ``k -> k+1`` skipping ``i``); ``Gen("s", j, k)`` is the degeneracy
    ``X_k -> X_{k+1}`` (underlying codegeneracy ``k+2 -> k+1`` hitting ``j``
    twice).
    """

    kind: str
    index: int
    level: int

    @property
    def target_level(self) -> int:
        return self.level - 1 if self.kind == "d" else self.level + 1

    def op_arrow(self) -> OpArrow:
        k, i = self.level, self.index
        if self.kind == "d":
            if not (k >= 1 and 0 <= i <= k):
                raise ShapeError(f"no face {self}")
            return OpArrow.of(k, k - 1, [v if v < i else v + 1 for v in range(k)])
        if self.kind == "s":
            if not 0 <= i <= k:
                raise ShapeError(f"no degeneracy {self}")
            return OpArrow.of(k, k + 1, [v if v <= i else v - 1 for v in range(k + 2)])
        raise ShapeError(f"unknown generator kind {self.kind!r}")

    def __str__(self):
        return f"{self.kind}{self.index}^{self.level}"


def factorize(a: OpArrow) -> tuple[Gen, ...]:
    """Canonical generator word for ``a``.

    The word is listed in the order the underlying monotone maps are applied:
    codegeneracies first (collapsed index ``j`` decreasing), then cofaces
    (missed index ``i`` increasing).  A simplicial object therefore applies
    the corresponding faces/degeneracies in reverse order.
    """
    f = a.underlying
    word: list[Gen] = []
    level = a.cod_level  # level of the current ordinal minus one
    for j in reversed([j for j in range(f.source - 1) if f.images[j] == f.images[j + 1]]):
        level -= 1
        word.append(Gen("s", j, level))
    hit = set(f.images)
    for i in (i for i in range(f.target) if i not in hit):
        level += 1
        word.append(Gen("d", i, level))
    return tuple(word)


def recompose(word: Sequence[Gen], level: int) -> TotalMap:
    """Compose the underlying maps of ``word`` starting from ordinal ``level+1``."""
    out = identity(level + 1)
    for g in word:
        out = compose(g.op_arrow().underlying, out)
    return out


# -- parsing -----------------------------------------------------------------------

_ARROW = re.compile(
    r"^\s*(?:\[(?P<dom>\d+)\]\s*(?:→|->)\s*\[(?P<cod>\d+)\]"
    r"|(?P<src>\d+)\s*(?P<arr>→|->|⇀|~>)\s*(?P<tgt>\d+))"
    r"\s*:\s*\[(?P<body>[^\]]*)\]\s*$"
)


def parse_map(text: str) -> Map:
    """Inverse of ``str`` on maps; interval maps come back as :class:`TotalMap`."""
    m = _ARROW.match(text)
    if not m:
        raise ShapeError(f"cannot parse map {text!r}")
    body = m["body"].strip()
    tokens = [t.strip() for t in body.split(",")] if body else []
    images: list[Optional[int]] = []
    for t in tokens:
        if t == "_":
            images.append(None)
        elif t.isdigit():
            images.append(int(t))
        else:
            raise ShapeError(f"bad image entry {t!r} in {text!r}")
    if m["dom"] is not None:
        if None in images:
            raise ShapeError(f"opposite arrows cannot have undefined entries: {text!r}")
        return OpArrow.of(int(m["dom"]), int(m["cod"]), images)
    src, tgt = int(m["src"]), int(m["tgt"])
    if m["arr"] in ("⇀", "~>"):
        return PartialMap(src, tgt, tuple(images))
    if None in images:
        raise ShapeError(f"total maps cannot have undefined entries: {text!r}")
    return TotalMap(src, tgt, tuple(images))
