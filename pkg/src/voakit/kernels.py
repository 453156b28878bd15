"""Backend selection for the numeric kernels.

The compiled extension is used when it was built; setting
``VOAKIT_PURE_PYTHON=1`` forces the pure-Python implementation.
"""

from __future__ import annotations

import os

from . import _pykernels

__all__ = ["BACKEND", "available_backends", "get_backend", "use_backend",
           "conv_trunc", "partition_counts", "poly_pow_trunc"]

_backends = {"python": _pykernels}
try:
    from . import _ckernels  # type: ignore[attr-defined]
    _backends["cython"] = _ckernels
except ImportError:  # extension not built
    pass

BACKEND = "python" if os.environ.get("VOAKIT_PURE_PYTHON") == "1" or "cython" not in _backends else "cython"
_impl = _backends[BACKEND]


def available_backends() -> list[str]:
    return sorted(_backends)


def get_backend() -> str:
    return BACKEND


def use_backend(name: str) -> None:
    """Switch the active backend (used by tests and benchmarks)."""
    global BACKEND, _impl
    if name not in _backends:
        raise ValueError(f"backend {name!r} not available; have {available_backends()}")
    BACKEND, _impl = name, _backends[name]


def conv_trunc(a, b, n):
    return _impl.conv_trunc(a, b, n)


def partition_counts(n):
    return _impl.partition_counts(n)


def poly_pow_trunc(a, e, n):
    return _impl.poly_pow_trunc(a, e, n)
