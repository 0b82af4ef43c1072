"""Hot numerical kernels with an optional numba-compiled fast path.

The cyclic Jacobi sweep below is the single inner loop the whole package
leans on: every definiteness check, low-rank factorization and spectrahedron
membership test reduces to it.  When numba is importable (and not disabled)
the kernel is compiled with ``@njit``; otherwise the plain Python/numpy
definition runs.  Both paths execute the identical statement sequence, so
they produce the same floating-point results.

Set ``MDRKIT_NO_NUMBA=1`` to force the pure-numpy fallback.  The module
constant ``BACKEND`` reports which path is active; ``benchmarks/bench_jacobi.py``
compares the two.
"""

import math
import os

import numpy as np


def _numba_disabled() -> bool:
    return os.environ.get("MDRKIT_NO_NUMBA", "").strip() not in ("", "0")


def jacobi_cycle(a, v, max_sweeps, rel_tol):
    """Diagonalize a symmetric matrix in place by cyclic Jacobi rotations.

    Parameters
    ----------
    a : (n, n) float64 array, symmetric; overwritten with a nearly diagonal
        matrix whose diagonal holds the eigenvalues.
    v : (n, n) float64 array, identity on entry; overwritten with the
        accumulated rotations (columns are eigenvectors).
    max_sweeps : sweep cap; one sweep visits every strict upper pair once.
    rel_tol : convergence threshold, relative to the Frobenius norm of the
        input: stop once the off-diagonal Frobenius norm falls below
        rel_tol * ||a||_F.

    Returns
    -------
    Number of sweeps performed, or -1 if the cap was reached before the
    off-diagonal norm dropped under the threshold.
    """
    n = a.shape[0]
    frob = 0.0
    for i in range(n):
        for j in range(n):
            frob += a[i, j] * a[i, j]
    stop = rel_tol * math.sqrt(frob)
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off += a[i, j] * a[i, j]
        if math.sqrt(2.0 * off) <= stop:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = 0.5 * (a[q, q] - a[p, p]) / apq
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(1.0 + theta * theta))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                tau = s / (1.0 + c)
                h = t * apq
                a[p, p] -= h
                a[q, q] += h
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    if k != p and k != q:
                        g = a[k, p]
                        w = a[k, q]
                        a[k, p] = g - s * (w + g * tau)
                        a[k, q] = w + s * (g - w * tau)
                        a[p, k] = a[k, p]
                        a[q, k] = a[k, q]
                for k in range(n):
                    g = v[k, p]
                    w = v[k, q]
                    v[k, p] = g - s * (w + g * tau)
                    v[k, q] = w + s * (g - w * tau)
    return -1


jacobi_cycle_numpy = jacobi_cycle

if not _numba_disabled():
    try:
        from numba import njit

        jacobi_cycle = njit(cache=True)(jacobi_cycle_numpy)
        # Trigger compilation eagerly so the first real call is not the slow one.
        jacobi_cycle(np.eye(2), np.eye(2), 2, 1e-14)
        BACKEND = "numba"
    except ImportError:
        BACKEND = "numpy"
else:
    BACKEND = "numpy"
