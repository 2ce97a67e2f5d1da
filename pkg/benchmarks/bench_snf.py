"""Benchmark the two Smith-normal-form kernels against each other.

Runs the pure-Python kernel and, when built, the compiled twin on the
same seeded inputs and reports wall times and the speedup.  Two input
families: dense random matrices with small entries, and sparse 0/+-1
matrices shaped like simplicial boundary maps (size rows by 2*size
columns, three entries per column).

Dense integer elimination swells coefficients quickly, so dense sizes
much beyond 28 spend their time in bignum arithmetic where both kernels
converge; the boundary family is the shape the package actually feeds
the kernel and stays fast far longer.

Usage: python3 benchmarks/bench_snf.py [--dense 12,20,28]
       [--boundary 40,80,160] [--trials 3]
"""

import argparse
import random
import time

from barloop.exactlin import _kernel_py

try:
    from barloop.exactlin import _snfcore
except ImportError:
    _snfcore = None


def dense_case(size, seed):
    rng = random.Random(seed)
    return [
        [rng.randrange(-9, 10) for _ in range(size)] for _ in range(size)
    ], size, size


def boundary_case(size, seed):
    rng = random.Random(seed)
    mat = [[0] * (2 * size) for _ in range(size)]
    for j in range(2 * size):
        for i in rng.sample(range(size), min(3, size)):
            mat[i][j] = rng.choice((-1, 1))
    return mat, size, 2 * size


def best_time(kernel, mat, rows, cols, trials):
    best = None
    for _ in range(trials):
        t0 = time.perf_counter()
        kernel(mat, rows, cols)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dense", default="12,20,28")
    ap.add_argument("--boundary", default="40,80,160")
    ap.add_argument("--trials", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    plan = [("dense", dense_case, args.dense),
            ("boundary", boundary_case, args.boundary)]
    print(f"{'case':<10} {'shape':>9} {'python':>10} {'compiled':>10} "
          f"{'speedup':>8}", flush=True)
    for name, build, sizes in plan:
        for size in (int(s) for s in sizes.split(",") if s):
            mat, rows, cols = build(size, args.seed)
            shape = f"{rows}x{cols}"
            t_py = best_time(_kernel_py.smith_kernel, mat, rows, cols,
                             args.trials)
            if _snfcore is None:
                print(f"{name:<10} {shape:>9} {t_py:>9.4f}s {'-':>10} "
                      f"{'-':>8}", flush=True)
                continue
            t_cy = best_time(_snfcore.smith_kernel, mat, rows, cols,
                             args.trials)
            assert _snfcore.smith_kernel(mat, rows, cols) == \
                _kernel_py.smith_kernel(mat, rows, cols)
            print(f"{name:<10} {shape:>9} {t_py:>9.4f}s {t_cy:>9.4f}s "
                  f"{t_py / t_cy:>7.2f}x", flush=True)
    if _snfcore is None:
        print("compiled twin not built; run: python3 setup.py build_ext "
              "--inplace", flush=True)


if __name__ == "__main__":
    main()
