"""Selects the Monte Carlo kernel implementation at import time.

The compiled ``_kernels`` extension is preferred; set ``ZFBEND_BACKEND=python``
to force the numpy fallback.
"""
import os

from . import _fallback

BACKENDS = {"python": _fallback}

try:
    from . import _kernels
except ImportError:
    _kernels = None
else:
    BACKENDS["cython"] = _kernels


def get_kernels(name=None):
    if name is None:
        name = os.environ.get("ZFBEND_BACKEND", "").strip().lower() or None
    if name is None:
        return _kernels if _kernels is not None else _fallback
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available; have {sorted(BACKENDS)}") from None


kernels = get_kernels()
BACKEND = kernels.NAME
