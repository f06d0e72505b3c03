"""Backend selection for the sparse term kernel.

The compiled extension is preferred when it imported cleanly; the pure
Python implementation is the fallback. Set CHERNCERT_BACKEND=python (or
=cython) to force a backend, e.g. for the benchmark or for debugging.
"""

import os

_forced = os.environ.get("CHERNCERT_BACKEND")

if _forced == "python":
    from . import _kernel_py as _impl
elif _forced == "cython":
    from . import _kernel_cy as _impl  # type: ignore[attr-defined]
elif _forced:
    raise RuntimeError(f"unknown CHERNCERT_BACKEND value: {_forced!r}")
else:
    try:
        from . import _kernel_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _impl

BACKEND = _impl.BACKEND
monomial_mul = _impl.monomial_mul
add_terms = _impl.add_terms
scale_terms = _impl.scale_terms
mul_terms = _impl.mul_terms
