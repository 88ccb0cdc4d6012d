"""Kernel backend selection.

Hot loops are written once as plain Python over numpy arrays.  When numba is
importable they are compiled with ``njit``; setting ``MACDONALD_KERNELS=numpy``
(or ``NUMBA_DISABLE_JIT=1``) keeps the interpreted versions, and the
vectorisable kernels switch to their pure-numpy formulations.
"""

import os

_requested = os.environ.get("MACDONALD_KERNELS", "numba").strip().lower()

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

USE_NUMBA = (
    _numba is not None
    and _requested != "numpy"
    and os.environ.get("NUMBA_DISABLE_JIT", "0") in ("", "0")
)
BACKEND = "numba" if USE_NUMBA else "numpy"


def njit(func):
    """Compile ``func`` in nopython mode when the numba backend is active."""
    if USE_NUMBA:
        return _numba.njit(cache=True)(func)
    return func


def jit_always(func):
    """Compile ``func`` whenever numba is importable, regardless of the flag.

    Used by the benchmark so both paths can be timed in one process.
    """
    if _numba is not None:
        return _numba.njit(cache=True)(func)
    return func
