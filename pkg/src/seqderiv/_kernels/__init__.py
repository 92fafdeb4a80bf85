"""Numeric kernels with a compiled fast path.

The compiled extension is selected at import when present; the pure
Python implementation is always available and produces the same values
(same exact integer phase reduction, different register widths).  Set
SEQDERIV_PURE_KERNELS=1 to force the fallback, e.g. for benchmarking.
"""

import os

from . import pure
from .pure import series_tail_terms, weier_one

HAVE_COMPILED = False
_impl = pure
if os.environ.get("SEQDERIV_PURE_KERNELS") != "1":
    try:
        from . import _cweier as _compiled

        _impl = _compiled
        HAVE_COMPILED = True
    except ImportError:
        pass

weier_many = _impl.weier_many
weier_many_pure = pure.weier_many
weier_many_compiled = _impl.weier_many if HAVE_COMPILED else None

__all__ = [
    "HAVE_COMPILED",
    "series_tail_terms",
    "weier_one",
    "weier_many",
    "weier_many_pure",
    "weier_many_compiled",
]
