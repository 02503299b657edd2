"""Time the numba and pure-numpy kernels side by side.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The jit column is blank when numba is not installed.  Compilation happens in
a warm-up call that is not timed.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from segalbar import kernels
from segalbar._jit import HAS_NUMBA
from segalbar.finset_model import TupleSet, cyclic_group


def _best(fn, repeat: int) -> float:
    fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    M = cyclic_group(4)
    digits = TupleSet(M.order, 8).digits()
    images = np.array([0, 0, 1, -1, 2, 2, 2, 3], dtype=np.int64)
    table = M.table.copy()
    yield "associative_mask(order=4)", "associative_mask", (4,)
    yield "assoc_witness(Z4)", "assoc_witness", (table,)
    yield "fiber_products(Z4, 4^8 tuples)", "fiber_products", (digits, images, 4, table, M.unit)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    print(f"{'kernel':<34} {'numpy (ms)':>11} {'jit (ms)':>11} {'speedup':>8}")
    for label, name, call_args in cases():
        impl = {k: v[name] for k, v in kernels.IMPLEMENTATIONS.items()}
        t_np = _best(lambda: impl["numpy"](*call_args), args.repeat)
        if HAS_NUMBA:
            t_jit = _best(lambda: impl["jit"](*call_args), args.repeat)
            print(f"{label:<34} {t_np * 1e3:>11.2f} {t_jit * 1e3:>11.2f} {t_np / t_jit:>7.1f}x")
        else:
            print(f"{label:<34} {t_np * 1e3:>11.2f} {'':>11} {'':>8}")


if __name__ == "__main__":
    main()
