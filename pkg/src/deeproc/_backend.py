"""Kernel backend selection.

The compiled ``_ckernels`` module is used when it was built and importable;
otherwise the numpy fallback in ``_pykernels`` is used. Setting the
environment variable ``DEEPROC_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels


def _select() -> tuple[ModuleType, str]:
    if os.environ.get("DEEPROC_PURE_PYTHON", "") not in ("", "0"):
        return _pykernels, "python"
    try:
        from . import _ckernels
    except ImportError:
        return _pykernels, "python"
    return _ckernels, "compiled"


kernels, BACKEND = _select()


def get_kernels(name: str | None = None) -> ModuleType:
    """Return a kernel module by name ('compiled' or 'python'); default is the active one."""
    if name is None:
        return kernels
    if name == "python":
        return _pykernels
    if name == "compiled":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}")
