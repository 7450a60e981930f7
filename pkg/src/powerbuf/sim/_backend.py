"""Kernel backend selection.

The hot inner loops (cycle simulation, first-passage walks) exist twice:
compiled with numba's @njit and as vectorized pure-numpy fallbacks.  The
environment variable POWERBUF_BACKEND picks between them:

* ``auto``  (default) -- numba when importable, else numpy
* ``numba`` -- require the compiled kernels, fail if numba is missing
* ``numpy`` -- force the pure-numpy path

The variable is read at call time so tests and benchmarks can switch
backends without reimporting the package.  Streams differ between
backends (different generators), so bit-level determinism holds per
(seed, backend) pair.
"""

from __future__ import annotations

import os

ENV_VAR = "POWERBUF_BACKEND"
_CHOICES = ("auto", "numba", "numpy")


def _numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def resolve_backend() -> str:
    """Return "numba" or "numpy" according to the environment."""
    choice = os.environ.get(ENV_VAR, "auto").strip().lower() or "auto"
    if choice not in _CHOICES:
        raise ValueError(
            f"{ENV_VAR} must be one of {_CHOICES}, got {choice!r}")
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not _numba_available():
            raise ImportError(
                f"{ENV_VAR}=numba but numba is not importable")
        return "numba"
    return "numba" if _numba_available() else "numpy"
