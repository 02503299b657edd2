"""Hot loops over multiplication tables and flat tuple codes.

Every kernel has a numba version (``*_jit``) and a vectorized numpy version
(``*_numpy``).  The public names pick one of them according to
:data:`segalbar._jit.USE_NUMBA`; both stay importable so tests and the
benchmark can compare them directly.

Tables are square ``int64`` arrays with ``table[a, b] = a*b``.  A flat tuple
of length ``n`` over a set of size ``q`` is coded as the base-``q`` integer
whose most significant digit is the first entry, so code order is
lexicographic tuple order.
"""
from __future__ import annotations

import numpy as np

from ._jit import USE_NUMBA, njit

_NO_WITNESS = (-1, -1, -1)
_CHUNK = 1 << 15


# -- associativity and unit ---------------------------------------------------

@njit
def _assoc_witness_jit(table):
    q = table.shape[0]
    for a in range(q):
        for b in range(q):
            ab = table[a, b]
            for c in range(q):
                if table[ab, c] != table[a, table[b, c]]:
                    return a, b, c
    return -1, -1, -1


def _assoc_witness_numpy(table):
    q = table.shape[0]
    if q == 0:
        return _NO_WITNESS
    left = table[table]  # left[a, b, c] = table[table[a, b], c]
    right = table[:, table]  # right[a, b, c] = table[a, table[b, c]]
    bad = np.argwhere(left != right)
    if bad.size == 0:
        return _NO_WITNESS
    a, b, c = bad[0]
    return int(a), int(b), int(c)


@njit
def _unit_witness_jit(table, unit):
    for a in range(table.shape[0]):
        if table[unit, a] != a or table[a, unit] != a:
            return a
    return -1


def _unit_witness_numpy(table, unit):
    idx = np.arange(table.shape[0])
    bad = np.flatnonzero((table[unit] != idx) | (table[:, unit] != idx))
    return int(bad[0]) if bad.size else -1


# -- exhaustive table search --------------------------------------------------

def free_cell_count(order: int) -> int:
    """Number of table cells left free once element 0 is fixed as the unit."""
    return max(order - 1, 0) ** 2


def tables_from_codes(codes, order: int) -> np.ndarray:
    """Decode table codes (free cells in row-major order, first cell most significant)."""
    codes = np.asarray(codes, dtype=np.int64)
    k = free_cell_count(order)
    tables = np.empty((codes.shape[0], order, order), dtype=np.int64)
    idx = np.arange(order, dtype=np.int64)
    tables[:, 0, :] = idx
    tables[:, :, 0] = idx
    if k:
        digits = decode(codes, order, k).reshape(codes.shape[0], order - 1, order - 1)
        tables[:, 1:, 1:] = digits
    return tables


@njit
def _associative_mask_jit(order):
    k = (order - 1) * (order - 1)
    total = 1
    for _ in range(k):
        total *= order
    mask = np.zeros(total, dtype=np.bool_)
    table = np.empty((order, order), dtype=np.int64)
    for i in range(order):
        table[0, i] = i
        table[i, 0] = i
    for code in range(total):
        rest = code
        for cell in range(k - 1, -1, -1):
            table[1 + cell // (order - 1), 1 + cell % (order - 1)] = rest % order
            rest //= order
        ok = True
        for a in range(1, order):
            if not ok:
                break
            for b in range(1, order):
                if not ok:
                    break
                ab = table[a, b]
                for c in range(1, order):
                    if table[ab, c] != table[a, table[b, c]]:
                        ok = False
                        break
        mask[code] = ok
    return mask


def _associative_mask_numpy(order):
    k = free_cell_count(order)
    total = order ** k
    mask = np.zeros(total, dtype=bool)
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        t = tables_from_codes(codes, order)
        rows = np.arange(codes.shape[0])[:, None, None, None]
        left = t[rows, t[:, :, :, None], np.arange(order)[None, None, None, :]]
        right = t[rows, np.arange(order)[None, :, None, None], t[:, None, :, :]]
        mask[start:start + codes.shape[0]] = (left == right).all(axis=(1, 2, 3))
    return mask


# -- flat tuple codes ---------------------------------------------------------

def decode(codes, base: int, length: int) -> np.ndarray:
    """Digits of each code, most significant first; shape ``(len(codes), length)``."""
    codes = np.asarray(codes, dtype=np.int64)
    out = np.empty((codes.shape[0], length), dtype=np.int64)
    rest = codes.copy()
    for pos in range(length - 1, -1, -1):
        out[:, pos] = rest % base
        rest //= base
    return out


def encode(digits, base: int) -> np.ndarray:
    digits = np.asarray(digits, dtype=np.int64)
    codes = np.zeros(digits.shape[0], dtype=np.int64)
    for pos in range(digits.shape[1]):
        codes = codes * base + digits[:, pos]
    return codes


@njit
def _fiber_products_jit(digits, images, target, table, unit):
    rows = digits.shape[0]
    out = np.empty((rows, target), dtype=np.int64)
    for r in range(rows):
        for j in range(target):
            out[r, j] = unit
        for i in range(images.shape[0]):
            j = images[i]
            if j >= 0:
                out[r, j] = table[out[r, j], digits[r, i]]
    return out


def _fiber_products_numpy(digits, images, target, table, unit):
    out = np.full((digits.shape[0], target), unit, dtype=np.int64)
    for i, j in enumerate(images):
        if j >= 0:
            out[:, j] = table[out[:, j], digits[:, i]]
    return out


def fiber_products(digits, images, target: int, table, unit: int) -> np.ndarray:
    """Entry ``j`` of each output row is the ordered product of the input
    entries ``i`` with ``images[i] == j`` (``-1`` marks undefined), or ``unit``
    for an empty fiber."""
    digits = np.ascontiguousarray(digits, dtype=np.int64)
    images = np.ascontiguousarray(images, dtype=np.int64)
    table = np.ascontiguousarray(table, dtype=np.int64)
    if USE_NUMBA:
        return _fiber_products_jit(digits, images, int(target), table, int(unit))
    return _fiber_products_numpy(digits, images, int(target), table, int(unit))


def assoc_witness(table) -> tuple[int, int, int]:
    table = np.ascontiguousarray(table, dtype=np.int64)
    if USE_NUMBA:
        a, b, c = _assoc_witness_jit(table)
        return int(a), int(b), int(c)
    return _assoc_witness_numpy(table)


def unit_witness(table, unit: int) -> int:
    table = np.ascontiguousarray(table, dtype=np.int64)
    if USE_NUMBA:
        return int(_unit_witness_jit(table, int(unit)))
    return _unit_witness_numpy(table, int(unit))


def associative_mask(order: int) -> np.ndarray:
    """Mask over all table codes of ``order`` (unit 0) marking associative tables."""
    if order <= 1:
        return np.ones(1, dtype=bool)
    if USE_NUMBA:
        return _associative_mask_jit(order)
    return _associative_mask_numpy(order)


IMPLEMENTATIONS = {
    "jit": {
        "assoc_witness": _assoc_witness_jit,
        "unit_witness": _unit_witness_jit,
        "associative_mask": _associative_mask_jit,
        "fiber_products": _fiber_products_jit,
    },
    "numpy": {
        "assoc_witness": _assoc_witness_numpy,
        "unit_witness": _unit_witness_numpy,
        "associative_mask": _associative_mask_numpy,
        "fiber_products": _fiber_products_numpy,
    },
}
