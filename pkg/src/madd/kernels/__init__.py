"""Bitset kernels with a compiled fast path.

At import time the Cython extension is preferred; if it is unavailable
(e.g. a pure-Python install) the NumPy fallback is selected.  Set
``MADD_FORCE_PURE=1`` to force the fallback.  ``BACKEND`` records which
implementation is active.
"""

from __future__ import annotations

import os

if os.environ.get("MADD_FORCE_PURE"):
    from . import _bitops_np as _impl

    BACKEND = "numpy"
else:
    try:
        from . import _bitops as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _bitops_np as _impl

        BACKEND = "numpy"

popcount = _impl.popcount
tanimoto = _impl.tanimoto
mean_pairwise_tanimoto = _impl.mean_pairwise_tanimoto

__all__ = ["BACKEND", "mean_pairwise_tanimoto", "popcount", "tanimoto"]
