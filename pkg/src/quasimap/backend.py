"""Selects the polynomial term-arithmetic backend at import time.

The compiled kernel (_fastpoly, Cython) is preferred; the pure-Python
implementation (_slowpoly) is the fallback.  Set QUASIMAP_BACKEND=python
to force the fallback, e.g. for benchmarking.
"""

import os

if os.environ.get("QUASIMAP_BACKEND", "").lower() == "python":
    from . import _slowpoly as _impl
else:
    try:
        from . import _fastpoly as _impl  # type: ignore
    except ImportError:
        from . import _slowpoly as _impl

BACKEND_NAME = _impl.BACKEND_NAME
add_terms = _impl.add_terms
scale_terms = _impl.scale_terms
mul_terms = _impl.mul_terms
