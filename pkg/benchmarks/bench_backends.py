"""Time the JIT kernels against their pure-numpy fallbacks.

Runs each hot kernel on a representative workload with both backends
and prints the per-call times and the speedup. Usage:

    python benchmarks/bench_backends.py [--quick]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from bellkit import kernels


def _best_of(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true",
                        help="smaller workloads, fewer repeats")
    args = parser.parse_args()

    repeats = 2 if args.quick else 4
    n_codes = 1 << (18 if args.quick else 21)
    length = 32  # five sites
    lhv_sites = 8 if args.quick else 10

    rng = np.random.default_rng(0)
    codes = rng.integers(0, 1 << length, size=n_codes, dtype=np.int64)
    lhv_coeffs = rng.integers(-4, 5, size=1 << lhv_sites).astype(np.int64)
    lhv_coeffs[0] += 1  # avoid the all-zero corner case

    workloads = [
        ("wht_rows (%d x %d)" % (n_codes >> 4, length),
         lambda f_signs, f_wht, f_cls, f_lhv: f_wht(
             f_signs(codes[: n_codes >> 4], length))),
        ("classify_batch (%d codes)" % n_codes,
         lambda f_signs, f_wht, f_cls, f_lhv: f_cls(codes, length)),
        ("lhv_max_range (%d sites)" % lhv_sites,
         lambda f_signs, f_wht, f_cls, f_lhv: f_lhv(
             lhv_coeffs, lhv_sites, 0, 1 << (lhv_sites - 1))),
    ]

    numpy_fns = (kernels.signs_from_codes_numpy, kernels.wht_rows_numpy,
                 kernels.classify_batch_numpy, kernels.lhv_max_range_numpy)

    if kernels.HAS_NUMBA:
        numba_fns = (kernels.signs_from_codes_numba, kernels.wht_rows_numba,
                     kernels.classify_batch_numba, kernels.lhv_max_range_numba)
        # trigger compilation outside the timed region
        tiny = np.arange(4, dtype=np.int64)
        numba_fns[1](numba_fns[0](tiny, 4))
        numba_fns[2](tiny, 4)
        numba_fns[3](np.array([1, 1, 1, -1], np.int64), 2, 0, 2)
    else:
        numba_fns = None
        print("numba backend unavailable (BELLKIT_BACKEND=numpy or numba "
              "not installed); timing the numpy path only\n")

    header = f"{'kernel':<34} {'numba [s]':>10} {'numpy [s]':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, run in workloads:
        t_np = _best_of(lambda: run(*numpy_fns), repeats)
        if numba_fns is not None:
            t_nb = _best_of(lambda: run(*numba_fns), repeats)
            print(f"{name:<34} {t_nb:>10.4f} {t_np:>10.4f} {t_np / t_nb:>7.1f}x")
        else:
            print(f"{name:<34} {'-':>10} {t_np:>10.4f} {'-':>8}")


if __name__ == "__main__":
    main()
