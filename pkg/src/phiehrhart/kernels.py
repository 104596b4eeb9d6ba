"""Backend selection for the enumeration kernels.

The compiled extension is used when it imported and every intermediate of
the call provably fits in int64; otherwise the pure-Python version runs.
Set ``PHIEHRHART_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    if os.environ.get("PHIEHRHART_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    import numpy as np

    from . import _kernels as _ext
except ImportError:  # extension not built
    _ext = None

BACKEND = "compiled" if _ext is not None else "python"

_LIMIT = 1 << 62


def _maxabs(rows) -> int:
    return max((abs(x) for row in rows for x in row), default=0)


def fpp_enumerate(U, adj, det, L, diag, open_flags, backend: str | None = None):
    """See ``_kernels_py.fpp_enumerate``; returns lists of tuples."""
    n = len(U)
    use_ext = _ext is not None and backend != "python"
    if use_ext:
        xmax = n * _maxabs(L) * max(diag, default=1)
        bound = max(n * _maxabs(adj) * xmax, n * _maxabs(U) * abs(det), abs(det))
        use_ext = bound < _LIMIT
    if backend == "compiled" and not use_ext:
        raise RuntimeError("compiled backend unavailable or input too large for int64")
    if not use_ext:
        return _kernels_py.fpp_enumerate(U, adj, det, L, diag, open_flags)
    pts, nums = _ext.fpp_enumerate(
        np.array(U, dtype=np.int64).reshape(n, n),
        np.array(adj, dtype=np.int64).reshape(n, n),
        int(det),
        np.array(L, dtype=np.int64).reshape(n, n),
        np.array(diag, dtype=np.int64),
        np.array([1 if f else 0 for f in open_flags], dtype=np.uint8),
    )
    return [tuple(map(int, p)) for p in pts], [tuple(map(int, r)) for r in nums]


def scan_halfspaces(A, c, strict, lo, hi, backend: str | None = None):
    """See ``_kernels_py.scan_halfspaces``; returns a list of tuples."""
    n = len(lo)
    use_ext = _ext is not None and backend != "python"
    if use_ext:
        reach = max((max(abs(a), abs(b)) for a, b in zip(lo, hi)), default=0)
        bound = max((abs(ck) for ck in c), default=0) + 2 * n * _maxabs(A) * (reach + 1)
        use_ext = bound < _LIMIT and reach < _LIMIT
    if backend == "compiled" and not use_ext:
        raise RuntimeError("compiled backend unavailable or input too large for int64")
    if not use_ext:
        return _kernels_py.scan_halfspaces(A, c, strict, lo, hi)
    k = len(A)
    res = _ext.scan_halfspaces(
        np.array(A, dtype=np.int64).reshape(k, n),
        np.array(c, dtype=np.int64).reshape(k),
        np.array([1 if s else 0 for s in strict], dtype=np.uint8).reshape(k),
        np.array(lo, dtype=np.int64).reshape(n),
        np.array(hi, dtype=np.int64).reshape(n),
    )
    return [tuple(map(int, p)) for p in res]
