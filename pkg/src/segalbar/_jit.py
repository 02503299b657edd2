"""Switch between numba-compiled kernels and the pure-numpy fallbacks.

Set ``SEGALBAR_DISABLE_JIT=1`` to force the numpy path even when numba is
installed.
"""
from __future__ import annotations

import os

JIT_OPTIONS = {
    "nogil": True,
    "cache": True,
}


def _env_disabled() -> bool:
    return os.environ.get("SEGALBAR_DISABLE_JIT", "").strip().lower() in {"1", "true", "yes", "on"}


try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and not _env_disabled()


def njit(func):
    """Compile ``func`` with numba when available, otherwise return it unchanged."""
    if not HAS_NUMBA:
        return func
    return numba.njit(**JIT_OPTIONS)(func)
