"""Kernel selection: compiled extension if available, numpy fallback otherwise.

Set BOOLFUN_PURE=1 to force the fallback (used by the benchmark and the
kernel-parity tests).
"""

import os

import numpy as np

from . import _pykern

if os.environ.get("BOOLFUN_PURE"):
    _impl = _pykern
else:
    try:
        from . import _ckern as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pykern

IMPLEMENTATION = _impl.IMPLEMENTATION
HAVE_COMPILED = IMPLEMENTATION == "compiled"

block_sensitivity = _impl.block_sensitivity
triangle_pairs = _impl.triangle_pairs
erasure_expectation = _impl.erasure_expectation


def wht_inplace(a):
    """Walsh-Hadamard transform along the last axis, in place.

    1-D int64/float64 arrays go through the selected kernel; batched input
    uses the vectorized numpy butterflies (same arithmetic, same order).
    """
    if a.ndim == 1 and a.flags.c_contiguous:
        if a.dtype == np.int64:
            return _impl.wht_i64(a)
        if a.dtype == np.float64:
            return _impl.wht_f64(a)
    return _pykern._wht(a)
