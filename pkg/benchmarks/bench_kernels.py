"""Timing comparison of the compiled and pure series kernels.

Evaluates the default rough-function series over batched inputs at
several batch sizes and reports the median per-call time of each
implementation plus the speedup.  Run as a script:

    python3 benchmarks/bench_kernels.py [--sizes 1000,10000,100000]
"""

import argparse
import statistics
import time

import numpy as np

from seqderiv._kernels import (
    HAVE_COMPILED,
    series_tail_terms,
    weier_many_compiled,
    weier_many_pure,
)

A, B = 0.5, 13
TOL = 1e-14


def time_call(fn, xs, a, b, n_terms, repeats=5):
    fn(xs[:64], a, b, n_terms)  # warm up
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(xs, a, b, n_terms)
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument(
        "--sizes",
        default="1000,10000,100000",
        help="comma-separated batch sizes",
    )
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    n_terms = series_tail_terms(A, TOL)
    rng = np.random.default_rng(0)
    print(f"series kernel: a={A}, b={B}, {n_terms} terms, tail below {TOL}")
    print(f"compiled extension available: {HAVE_COMPILED}")
    print()
    header = f"{'batch':>10}  {'pure':>12}  {'compiled':>12}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for size in sizes:
        xs = rng.uniform(-2.0, 2.0, size)
        t_pure = time_call(weier_many_pure, xs, A, B, n_terms, args.repeats)
        if HAVE_COMPILED:
            t_comp = time_call(weier_many_compiled, xs, A, B, n_terms, args.repeats)
            worst = float(
                np.max(
                    np.abs(
                        weier_many_pure(xs, A, B, n_terms)
                        - weier_many_compiled(xs, A, B, n_terms)
                    )
                )
            )
            print(
                f"{size:>10}  {t_pure:>11.4f}s  {t_comp:>11.4f}s"
                f"  {t_pure / t_comp:>7.1f}x"
            )
            assert worst <= 1e-13, f"implementations disagree by {worst}"
        else:
            print(f"{size:>10}  {t_pure:>11.4f}s  {'n/a':>12}  {'n/a':>8}")
    if HAVE_COMPILED:
        print()
        print("implementations agree to 1e-13 on every benchmarked batch")


if __name__ == "__main__":
    main()
