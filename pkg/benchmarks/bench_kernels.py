#!/usr/bin/env python3
"""Benchmark the compiled bit-kernels against the numpy fallback.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [n_fingerprints] [n_bits]
"""

from __future__ import annotations

import sys
import time

import numpy as np

from madd.kernels import BACKEND, _bitops_np

try:
    from madd.kernels import _bitops as _bitops_c
except ImportError:
    _bitops_c = None


def bench(fn, *args, repeat: int = 5) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 2000
    n_bits = int(sys.argv[2]) if len(sys.argv) > 2 else 2048
    rng = np.random.default_rng(0)
    fps = rng.integers(0, 2**63, size=(n, n_bits // 64), dtype=np.int64).astype(np.uint64)
    a, b = fps[0], fps[1]

    print(f"selected backend: {BACKEND}; {n} fingerprints x {n_bits} bits")
    rows = [("numpy fallback", _bitops_np)]
    if _bitops_c is not None:
        rows.append(("cython", _bitops_c))
    results = {}
    for name, mod in rows:
        t_pop = bench(lambda: [mod.popcount(fps[i]) for i in range(min(n, 500))])
        t_tan = bench(lambda: [mod.tanimoto(a, fps[i]) for i in range(min(n, 500))])
        t_mean = bench(mod.mean_pairwise_tanimoto, fps)
        results[name] = (t_pop, t_tan, t_mean)
        print(
            f"{name:16s} popcount x500: {t_pop*1e3:8.2f} ms   "
            f"tanimoto x500: {t_tan*1e3:8.2f} ms   "
            f"mean pairwise: {t_mean*1e3:8.2f} ms"
        )
    if len(results) == 2:
        np_t = results["numpy fallback"][2]
        cy_t = results["cython"][2]
        print(f"mean-pairwise speedup (cython vs numpy): {np_t / cy_t:.2f}x")

    value_np = _bitops_np.mean_pairwise_tanimoto(fps[:200])
    if _bitops_c is not None:
        value_c = _bitops_c.mean_pairwise_tanimoto(fps[:200])
        assert abs(value_np - value_c) < 1e-12, (value_np, value_c)
        print(f"agreement check passed: {value_np:.12f}")


if __name__ == "__main__":
    main()
