"""Pure-NumPy fallback for the compiled bitset kernels."""

from __future__ import annotations

import numpy as np

_POPCOUNT_TABLE = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)


def _popcount_array(words: np.ndarray) -> np.ndarray:
    """Element-wise popcount of a uint64 array (any shape)."""
    as_bytes = words.view(np.uint8)
    return _POPCOUNT_TABLE[as_bytes].reshape(*words.shape, 8).sum(axis=-1)


def popcount(words: np.ndarray) -> int:
    return int(_popcount_array(words).sum())


def tanimoto(a: np.ndarray, b: np.ndarray) -> float:
    inter = int(_popcount_array(a & b).sum())
    union = int(_popcount_array(a | b).sum())
    return inter / union if union else 0.0


def mean_pairwise_tanimoto(fps: np.ndarray) -> float:
    n = fps.shape[0]
    if n < 2:
        return 0.0
    total = 0.0
    pairs = 0
    # row-vs-rest vectorization keeps memory bounded at O(n * words)
    for i in range(n - 1):
        rest = fps[i + 1 :]
        inter = _popcount_array(rest & fps[i]).sum(axis=1)
        union = _popcount_array(rest | fps[i]).sum(axis=1)
        sims = np.where(union > 0, inter / np.maximum(union, 1), 0.0)
        total += float(sims.sum())
        pairs += len(rest)
    return total / pairs
