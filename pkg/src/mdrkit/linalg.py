"""Dense real symmetric spectral routines and PSD low-rank machinery.

Matrices are plain float64 numpy arrays stored canonically symmetric
(lower triangle mirrored, see :func:`symmetrize`).  Rank and sign decisions
use the relative threshold ``tol * (1 + max|eigenvalue|)`` so they are
invariant under scaling of the input.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .errors import NumericalFailure, NotPSD

DEFAULT_TOL = 1e-9

#: convergence threshold for the Jacobi sweeps, relative to ||M||_F
_JACOBI_REL_TOL = 1e-14

#: sweep cap factor: at most 100 * dim sweeps before giving up
_SWEEP_CAP_FACTOR = 100


def symmetrize(m) -> np.ndarray:
    """Return a float64 copy of ``m`` with the lower triangle mirrored up.

    This is the canonical storage for symmetric matrices: the result
    satisfies ``out[i, j] == out[j, i]`` exactly.
    """
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] < 1:
        raise ValueError("matrix dimension must be >= 1")
    return np.tril(a) + np.tril(a, -1).T


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition of a symmetric matrix.

    ``eigenvalues`` are sorted descending; column ``i`` of ``eigenvectors``
    is the (orthonormal) eigenvector paired with ``eigenvalues[i]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


class DefinitenessKind(Enum):
    PSD = "PSD"
    NSD = "NSD"
    INDEFINITE = "Indefinite"
    ZERO = "Zero"


@dataclass(frozen=True)
class Definiteness:
    """Sign classification of a symmetric matrix's spectrum.

    ``rank`` counts eigenvalues with ``|lambda| > tol * (1 + max|lambda|)``.
    For an indefinite matrix, one positive and one negative eigenvalue are
    carried as witnesses.
    """

    kind: DefinitenessKind
    rank: int
    pos_witness: float | None = None
    neg_witness: float | None = None

    @property
    def is_nsd(self) -> bool:
        return self.kind in (DefinitenessKind.NSD, DefinitenessKind.ZERO)

    @property
    def is_psd(self) -> bool:
        return self.kind in (DefinitenessKind.PSD, DefinitenessKind.ZERO)


@dataclass(frozen=True)
class PsdFactor:
    """Row matrix R with R^T R equal to the PSD matrix it was built from.

    ``rows`` has one row sqrt(lambda_i) * v_i^T per eigenvalue above the
    rank threshold, so its row count is the numerical rank.
    """

    rows: np.ndarray
    source_norm: float

    @property
    def rank(self) -> int:
        return self.rows.shape[0]

    def gram(self) -> np.ndarray:
        """Reconstruct R^T R."""
        return self.rows.T @ self.rows


def sym_eig(m, max_sweeps: int | None = None) -> Spectrum:
    """Eigendecomposition of a symmetric matrix via cyclic Jacobi sweeps.

    Raises
    ------
    NumericalFailure
        if the off-diagonal norm has not converged after ``100 * dim``
        sweeps (signals pathological input such as NaNs).
    """
    a = symmetrize(m)
    n = a.shape[0]
    v = np.eye(n)
    cap = max_sweeps if max_sweeps is not None else _SWEEP_CAP_FACTOR * n
    sweeps = _kernels.jacobi_cycle(a, v, cap, _JACOBI_REL_TOL)
    if sweeps < 0:
        raise NumericalFailure(f"Jacobi sweeps did not converge within {cap} sweeps")
    w = np.diag(a).copy()
    order = np.argsort(-w, kind="stable")
    return Spectrum(eigenvalues=w[order], eigenvectors=v[:, order])


def _threshold(eigenvalues: np.ndarray, tol: float) -> float:
    return tol * (1.0 + float(np.max(np.abs(eigenvalues))))


def definiteness(m, tol: float = DEFAULT_TOL) -> Definiteness:
    """Classify a symmetric matrix as PSD, NSD, indefinite or (numerically) zero."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    w = sym_eig(m).eigenvalues
    tau = _threshold(w, tol)
    rank = int(np.count_nonzero(np.abs(w) > tau))
    has_pos = bool(w[0] > tau)
    has_neg = bool(w[-1] < -tau)
    if has_pos and has_neg:
        return Definiteness(DefinitenessKind.INDEFINITE, rank,
                            pos_witness=float(w[0]), neg_witness=float(w[-1]))
    if has_pos:
        return Definiteness(DefinitenessKind.PSD, rank)
    if has_neg:
        return Definiteness(DefinitenessKind.NSD, rank)
    return Definiteness(DefinitenessKind.ZERO, 0)


def psd_low_rank_factor(m, tol: float = DEFAULT_TOL) -> PsdFactor:
    """Factor a PSD matrix as R^T R with linearly independent rows.

    Row ``i`` is ``sqrt(lambda_i) * v_i^T`` for each eigenvalue above the
    rank threshold, eigenvalues descending.  Within one build the rows are
    deterministic: each eigenvector is flipped so its entry of largest
    magnitude is positive.  Degenerate eigenvalues still make the factor
    non-unique across builds, so compare Gram matrices, not raw rows.

    Raises
    ------
    NotPSD
        if an eigenvalue falls below ``-tol * (1 + max|lambda|)``.
    """
    a = symmetrize(m)
    spec = sym_eig(a)
    w, vecs = spec.eigenvalues, spec.eigenvectors
    tau = _threshold(w, tol)
    if w[-1] < -tau:
        raise NotPSD(f"matrix has negative eigenvalue {w[-1]:.6g} below -{tau:.3g}")
    rows = []
    for i in range(len(w)):
        if w[i] > tau:
            vec = vecs[:, i]
            if vec[np.argmax(np.abs(vec))] < 0:
                vec = -vec
            rows.append(np.sqrt(w[i]) * vec)
    r = np.array(rows) if rows else np.zeros((0, a.shape[0]))
    return PsdFactor(rows=r, source_norm=float(np.max(np.abs(a))))
