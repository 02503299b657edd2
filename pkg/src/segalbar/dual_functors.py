"""The isomorphism J from the opposite simplex category onto interval maps,
the functor H from interval maps to partial maps, and the edge arrows."""
from __future__ import annotations

from .simplex_cats import IntervalMap, OpArrow, PartialMap, ShapeError, TotalMap, op_identity


def j_ob(level: int) -> int:
    return level + 2


def j_map(a: OpArrow) -> IntervalMap:
    """Interval map ``m+2 -> n+2`` of ``a: [m] -> [n]``.

    Position ``j`` in ``1..m`` goes to the least ``i`` with
    ``a.underlying(i) >= j``, or to the top endpoint ``n+1`` if there is none.
    """
    m, n = a.dom_level, a.cod_level
    f = a.underlying.images
    images = [0]
    for j in range(1, m + 1):
        images.append(next((i for i, v in enumerate(f) if v >= j), n + 1))
    images.append(n + 1)
    return IntervalMap(TotalMap(m + 2, n + 2, tuple(images)))


def j_inverse(g: IntervalMap) -> OpArrow:
    # Galois connection: g(j) <= i  <=>  j <= f(i)
    m, n = g.source - 2, g.target - 2
    images = tuple(max(j for j in range(m + 1) if g.images[j] <= i) for i in range(n + 1))
    return OpArrow(m, n, TotalMap(n + 1, m + 1, images))


def h_ob(n: int) -> int:
    if n < 2:
        raise ShapeError(f"H is defined on ordinals >= 2, got {n}")
    return n - 2


def h_map(f: IntervalMap) -> PartialMap:
    """Drop both endpoints of source and target together with their edges."""
    n, m = f.source, f.target
    images = []
    for i in range(n - 2):
        v = f.images[i + 1]
        images.append(None if v in (0, m - 1) else v - 1)
    return PartialMap(n - 2, m - 2, tuple(images))


def hj_map(a: OpArrow) -> PartialMap:
    return h_map(j_map(a))


def edge_arrow(n: int, j: int) -> OpArrow:
    """The arrow ``[n] -> [1]`` picking the ``j``-th edge (``1 <= j <= n``)."""
    if not 1 <= j <= n:
        raise ShapeError(f"edge index {j} out of range 1..{n}")
    if n == 1:
        return op_identity(1)
    return OpArrow(n, 1, TotalMap(2, n + 1, (j - 1, j)))
