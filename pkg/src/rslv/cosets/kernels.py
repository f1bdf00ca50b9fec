"""Select the compiled kernels when available, else the pure-Python ones.

Setting ``RSLV_PURE_PYTHON=1`` forces the pure-Python implementation.
"""
from __future__ import annotations

import os

if os.environ.get("RSLV_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as impl
else:
    try:
        from . import _kernels as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as impl

IMPLEMENTATION = impl.IMPLEMENTATION
enumerate_pgl = impl.enumerate_pgl
orbit_labels = impl.orbit_labels
classify_codes = impl.classify_codes
count_gl_and_k0 = impl.count_gl_and_k0
