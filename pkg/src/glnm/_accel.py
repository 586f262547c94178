"""Numba switch for the recurrence kernels.

Set ``GLNM_DISABLE_NUMBA=1`` to run every kernel as plain Python/numpy.
The kernels are written so the same source runs either way.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("GLNM_DISABLE_NUMBA", "0").lower() not in (
    "1",
    "true",
    "yes",
)


def jit(func):
    """Compile ``func`` with ``numba.njit`` when enabled, else return it unchanged."""
    if USE_NUMBA:
        return numba.njit(cache=True)(func)
    return func


def backend():
    return "numba" if USE_NUMBA else "python"
