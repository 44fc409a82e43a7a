"""Kernel backend selection.

The compiled extension is used when it imports; ``MATNORM_BACKEND=python``
forces the numpy kernels.  Both produce the same counter-based streams.
"""
import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

__all__ = ["get_backend", "available_backends", "default_backend"]


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _ckernels is not None else [])


def get_backend(name: str | None = None):
    """Return the kernel module for ``name`` (``"cython"``, ``"python"`` or ``"auto"``)."""
    name = (name or os.environ.get("MATNORM_BACKEND") or "auto").lower()
    if name == "python":
        return _pykernels
    if name == "cython":
        if _ckernels is None:
            raise ImportError("compiled kernels are not built; reinstall with Cython available")
        return _ckernels
    if name == "auto":
        return _ckernels if _ckernels is not None else _pykernels
    raise ValueError(f"unknown backend {name!r}")


def default_backend():
    return get_backend()
