"""Backend selection for the hot loops.

The Cython extension is used when it was built; otherwise, or when the
environment variable ``DEPCROSS_PURE`` is set, the numpy fallback is used.
Both produce identical arrays.
"""

import os

from . import _fallback

COMPILED = False
if not os.environ.get("DEPCROSS_PURE"):
    try:
        from . import _kernels as _impl

        COMPILED = True
    except ImportError:  # extension not built
        _impl = _fallback
else:
    _impl = _fallback

BACKEND = "cython" if COMPILED else "python"


def sweep(n, eu, ev, wt, prefix=(), backend=None):
    """Exhaustive (D, C) histogram and per-D B2 sums; see ``_kernels.sweep``."""
    impl = _pick(backend)
    return impl.sweep(n, list(eu), list(ev), list(wt), tuple(prefix))


def cut_dp(n, adj, maximize=False, backend=None):
    """Subset dynamic programme over prefix cuts; see ``_kernels.cut_dp``."""
    impl = _pick(backend)
    return impl.cut_dp(n, list(adj), maximize)


def _pick(backend):
    if backend is None:
        return _impl
    if backend == "python":
        return _fallback
    if backend == "cython":
        if not COMPILED:
            raise RuntimeError("compiled kernels are not available")
        return _impl
    raise ValueError(f"unknown backend {backend!r}")
