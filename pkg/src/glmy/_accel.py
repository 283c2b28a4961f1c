"""Numba switch.

Kernels are written in the numba-compatible subset of numpy.  Setting
``GLMY_DISABLE_NUMBA=1`` (read once, at import) replaces ``njit`` with an
identity decorator so the same kernels run as plain numpy code.
"""

from __future__ import annotations

import functools
import os

_disabled = os.environ.get("GLMY_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _disabled:
        raise ImportError
    from numba import njit as _numba_njit

    NUMBA_ENABLED = True
except ImportError:
    _numba_njit = None
    NUMBA_ENABLED = False


def njit(*args, **kwargs):
    """``numba.njit`` when enabled, otherwise a pass-through decorator."""
    if NUMBA_ENABLED:
        return _numba_njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def wrap(f):
        return functools.wraps(f)(f)

    return wrap


def backend_name() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"


__all__ = ["njit", "NUMBA_ENABLED", "backend_name"]
