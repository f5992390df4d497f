#!/usr/bin/env python3
"""Benchmark the compiled kernel against its pure-Python twin.

Times the two entry points (Hermitian Jacobi diagonalization, complex
matmul) on seeded inputs across sizes, plus one end-to-end pseudoinversion
workload through the public API.  Run as

    python benchmarks/bench_backends.py [--sizes 2,4,8,16] [--repeat 200]

The compiled kernel must be importable for the comparison; the script also
verifies that both backends produce bit-identical output on every input.
"""

import argparse
import time
from array import array

from mpideals.rng import SplitMix64
from mpideals._kernel import kernel_py

try:
    from mpideals._kernel import _kernel_c
except ImportError:
    _kernel_c = None


def random_hermitian_buffers(rng, n):
    a_re = [0.0] * (n * n)
    a_im = [0.0] * (n * n)
    for i in range(n):
        a_re[i * n + i] = rng.runif(-2.0, 2.0)
        for j in range(i + 1, n):
            re, im = rng.runif(-1.0, 1.0), rng.runif(-1.0, 1.0)
            a_re[i * n + j] = re
            a_im[i * n + j] = im
            a_re[j * n + i] = re
            a_im[j * n + i] = -im
    return a_re, a_im


def run_eig(kernel, n, a_re, a_im):
    ar = array("d", a_re)
    ai = array("d", a_im)
    vr = array("d", bytes(8 * n * n))
    vi = array("d", bytes(8 * n * n))
    for i in range(n):
        vr[i * n + i] = 1.0
    kernel.jacobi_eig(n, ar, ai, vr, vi, 1e-13, 60)
    return ar, ai, vr, vi


def run_matmul(kernel, n, a_re, a_im):
    ar = array("d", a_re)
    ai = array("d", a_im)
    cr = array("d", bytes(8 * n * n))
    ci = array("d", bytes(8 * n * n))
    kernel.matmul(n, n, n, ar, ai, ar, ai, cr, ci)
    return cr, ci


def bench(label, fn, repeat):
    best = float("inf")
    for _ in range(3):
        t0 = time.perf_counter()
        for _ in range(repeat):
            fn()
        best = min(best, (time.perf_counter() - t0) / repeat)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="2,4,8,16")
    parser.add_argument("--repeat", type=int, default=200)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if _kernel_c is None:
        print("compiled kernel not available; showing pure-Python timings only")

    print(f"{'kernel':10s} {'n':>4s} {'eig (us)':>12s} {'matmul (us)':>12s} {'speedup':>9s}")
    for n in sizes:
        rng = SplitMix64(1234 + n)
        a_re, a_im = random_hermitian_buffers(rng, n)
        t_py_eig = bench("py", lambda: run_eig(kernel_py, n, a_re, a_im), args.repeat)
        t_py_mm = bench("py", lambda: run_matmul(kernel_py, n, a_re, a_im), args.repeat)
        print(f"{'python':10s} {n:4d} {t_py_eig*1e6:12.1f} {t_py_mm*1e6:12.1f} {'':>9s}")
        if _kernel_c is not None:
            same = run_eig(kernel_py, n, a_re, a_im) == run_eig(_kernel_c, n, a_re, a_im)
            same = same and (
                run_matmul(kernel_py, n, a_re, a_im) == run_matmul(_kernel_c, n, a_re, a_im)
            )
            t_c_eig = bench("c", lambda: run_eig(_kernel_c, n, a_re, a_im), args.repeat)
            t_c_mm = bench("c", lambda: run_matmul(_kernel_c, n, a_re, a_im), args.repeat)
            tag = f"x{t_py_eig / t_c_eig:5.1f}"
            print(f"{'compiled':10s} {n:4d} {t_c_eig*1e6:12.1f} {t_c_mm*1e6:12.1f} {tag:>9s}")
            print(f"{'identical':10s} {n:4d} {str(same):>12s}")

    # end-to-end pseudoinversion through the selected backend
    from mpideals.generators import random_sigma_matrix
    from mpideals.moore_penrose import mp_inverse
    from mpideals import KERNEL_BACKEND

    rng = SplitMix64(99)
    mats = [random_sigma_matrix(rng, 6, 5, 4) for _ in range(20)]
    t0 = time.perf_counter()
    for m in mats:
        mp_inverse(m)
    dt = (time.perf_counter() - t0) / len(mats)
    print(f"\nmp_inverse 6x5 rank-4 via '{KERNEL_BACKEND}' backend: {dt*1e3:.2f} ms/instance")


if __name__ == "__main__":
    main()
