"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``LEIBNIZ_COH_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _pykernels as pykernels

kernels = pykernels
name = "python"

if os.environ.get("LEIBNIZ_COH_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:  # pragma: no cover - depends on the build
        pass
    else:
        kernels = _ckernels
        name = "cython"


def use(backend: str) -> None:
    """Switch kernels at runtime (``"python"`` or ``"cython"``)."""
    global kernels, name
    if backend == "python":
        kernels, name = pykernels, "python"
    elif backend == "cython":
        from . import _ckernels
        kernels, name = _ckernels, "cython"
    else:
        raise ValueError(f"unknown backend {backend!r}")
