"""Gain kernels with a compiled fast path.

The Cython extension (_core) and the numpy module (reference) implement the
same flat-array contract; whichever is available is picked at import time.
Set SKYBEAM_KERNEL=fallback to force the numpy path (useful for timing
comparisons), or SKYBEAM_KERNEL=compiled to fail loudly when the extension
did not build.
"""
import os

_requested = os.environ.get("SKYBEAM_KERNEL", "").strip().lower()

if _requested == "fallback":
    from . import reference as _impl

    BACKEND = "fallback"
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise
        from . import reference as _impl

        BACKEND = "fallback"

element_gain_db = _impl.element_gain_db
array_factor_mag = _impl.array_factor_mag
composite_gain_db = _impl.composite_gain_db

__all__ = ["BACKEND", "element_gain_db", "array_factor_mag", "composite_gain_db"]
