"""Kernel backend selection: numba-jitted loops or the pure-numpy fallback.

Pick with the environment variable UDWHARVEST_BACKEND=numba|numpy; the default
is numba when importable, numpy otherwise.  `bench/benchmark_backends.py`
compares the two.
"""

from __future__ import annotations

import os
import warnings

_BACKEND = None
_NAME = None


def backend_name() -> str:
    get_backend()
    return _NAME


def get_backend(force: str | None = None):
    """Return the kernel module in use (cached unless `force` is given)."""
    global _BACKEND, _NAME
    requested = force or os.environ.get("UDWHARVEST_BACKEND", "").strip().lower()
    if _BACKEND is not None and force is None:
        return _BACKEND

    if requested == "numpy":
        from . import _kernels_numpy as mod
        name = "numpy"
    elif requested == "numba":
        from . import _kernels_numba as mod
        name = "numba"
    else:
        try:
            from . import _kernels_numba as mod
            name = "numba"
        except ImportError:
            from . import _kernels_numpy as mod
            name = "numpy"
            warnings.warn("numba unavailable; using the pure-numpy kernel backend")
    if force is None:
        _BACKEND, _NAME = mod, name
    return mod
