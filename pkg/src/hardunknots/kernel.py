"""Kernel selection: the compiled extension when available, else pure Python.

Set ``HARDUNKNOTS_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _pykernel

_compiled = None
if os.environ.get("HARDUNKNOTS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernel as _compiled  # type: ignore[attr-defined]
    except ImportError:
        _compiled = None

_impl = _compiled if _compiled is not None else _pykernel

IMPLEMENTATION = _impl.IMPLEMENTATION
canonical_code = _impl.canonical_code
symmetric_code = _impl.symmetric_code
expand = _impl.expand

__all__ = ["IMPLEMENTATION", "canonical_code", "symmetric_code", "expand", "python_kernel",
           "compiled_kernel"]

python_kernel = _pykernel
compiled_kernel = _compiled
