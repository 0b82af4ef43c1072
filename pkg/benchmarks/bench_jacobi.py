#!/usr/bin/env python3
"""Benchmark the Jacobi eigensolver kernel: numba @njit vs pure numpy.

The two paths run the identical statement sequence, so besides timing we
check that the results agree.  Run from the repository root:

    python3 benchmarks/bench_jacobi.py
"""

import time

import numpy as np

from mdrkit import _kernels


def run_once(kernel, m):
    a = m.copy()
    v = np.eye(m.shape[0])
    t0 = time.perf_counter()
    sweeps = kernel(a, v, 100 * m.shape[0], 1e-14)
    elapsed = time.perf_counter() - t0
    assert sweeps >= 0
    return elapsed, np.sort(np.diag(a))


def main():
    if _kernels.BACKEND != "numba":
        print("numba path is not active (MDRKIT_NO_NUMBA set or numba missing);")
        print("timing the pure-numpy kernel only.\n")
    rng = np.random.default_rng(0)
    print(f"{'dim':>5} {'reps':>5} {'numpy (s)':>12} {'numba (s)':>12} {'speedup':>9}")
    for dim, reps in ((8, 50), (20, 10), (40, 3), (80, 1), (140, 1)):
        m = rng.normal(size=(dim, dim))
        m = (m + m.T) / 2.0
        t_plain = 0.0
        t_fast = 0.0
        for _ in range(reps):
            dt, w_plain = run_once(_kernels.jacobi_cycle_numpy, m)
            t_plain += dt
            dt, w_fast = run_once(_kernels.jacobi_cycle, m)
            t_fast += dt
        agree = np.max(np.abs(w_plain - w_fast)) <= 1e-12 * (1 + np.max(np.abs(w_plain)))
        ratio = t_plain / t_fast if t_fast > 0 else float("inf")
        note = "" if agree else "  RESULTS DIFFER"
        print(f"{dim:>5} {reps:>5} {t_plain:>12.4f} {t_fast:>12.4f} {ratio:>8.1f}x{note}")


if __name__ == "__main__":
    main()
