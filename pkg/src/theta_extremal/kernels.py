"""Backend selection for the search kernels.

The compiled extension is used when it imports; set ``THETA_EXTREMAL_PURE=1``
to force the pure-Python fallback.
"""

from __future__ import annotations

import os

from . import _pykernels
from ._pykernels import ALL, BUDGET, COUNT, EXHAUSTED, FIRST, STOPPED  # noqa: F401

try:
    if os.environ.get("THETA_EXTREMAL_PURE"):
        raise ImportError("pure backend requested")
    from . import _kernels as _ext
except ImportError:
    _ext = None

BACKEND = "cython" if _ext is not None else "python"


def available_backends() -> list[str]:
    return ["cython", "python"] if _ext is not None else ["python"]


def theta_search(g, lengths, mode, budget, backend=None):
    backend = backend or BACKEND
    if backend == "cython":
        if _ext is None:
            raise RuntimeError("compiled kernels are not built")
        indptr, indices = g.csr()
        return _ext.theta_search(indptr, indices, list(lengths), mode, budget)
    return _pykernels.theta_search(g.vertex_count, g.adjacency, lengths, mode, budget)


def cycle_search(g, length, backend=None):
    backend = backend or BACKEND
    if backend == "cython":
        if _ext is None:
            raise RuntimeError("compiled kernels are not built")
        indptr, indices = g.csr()
        return _ext.cycle_search(indptr, indices, length)
    return _pykernels.cycle_search(g.vertex_count, g.adjacency, length)
