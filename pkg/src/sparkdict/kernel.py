"""Backend selection for the subset-search kernel.

The compiled module is used when it imports and the 64-bit bound holds;
``SPARKDICT_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import math
import os

import numpy as np

from . import _pykernel

try:
    if os.environ.get("SPARKDICT_PURE_PYTHON"):
        raise ImportError("pure Python forced")
    from . import _ckernel
except ImportError:
    _ckernel = None

BACKEND = "cython" if _ckernel is not None else "python"


def fits_int64(vecs: np.ndarray, k: int) -> bool:
    """Bareiss entries are minors of at most k vectors, bounded by the product of their norms.

    The kernel multiplies two such values before the exact division, so
    (2k - 1) * log2(max norm) + 1 must stay below 62.
    """
    if vecs.size == 0:
        return True
    max_norm_sq = int(max(sum(int(x) * int(x) for x in row) for row in vecs))
    return (2 * k - 1) * 0.5 * math.log2(max(max_norm_sq, 1)) + 1 < 62


def resolve(vecs: np.ndarray, k: int, backend: str | None = None) -> str:
    """Backend actually used for k-subsets of ``vecs``; ``backend`` in {None, "cython", "python"}."""
    use_c = backend != "python" and _ckernel is not None and fits_int64(vecs, k)
    if backend == "cython" and not use_c:
        raise RuntimeError("compiled kernel unavailable or int64 bound exceeded")
    return "cython" if use_c else "python"


def search_level(vecs: np.ndarray, k: int, first_lo: int, first_hi: int, backend: str | None = None):
    if resolve(vecs, k, backend) == "cython":
        return _ckernel.search_level(np.ascontiguousarray(vecs, dtype=np.int64), k, first_lo, first_hi)
    return _pykernel.search_level(vecs.tolist() if isinstance(vecs, np.ndarray) else vecs,
                                  k, first_lo, first_hi)
