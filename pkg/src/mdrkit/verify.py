"""Independent verification oracle for determinantal representations.

Degree-<=2 coefficients of det(I + sum x_j A_j) are compared exactly via
trace identities; vanishing of the degree->=3 part is certified
probabilistically by sampling the determinant at fixed-seed pseudo-random
points.  Hermitian eigenvalue questions are reduced to the real symmetric
doubling [[Re, -Im], [Im, Re]], whose spectrum is that of the Hermitian
matrix with doubled multiplicity, so a single real eigensolver serves
every path.
"""

import math
from dataclasses import dataclass

import numpy as np

from .construct import HermitianPencil
from .errors import DimensionMismatch, WitnessCheckFailed
from .linalg import DEFAULT_TOL, definiteness, sym_eig
from .quadform import QuadraticPolynomial, evaluate

DEFAULT_SAMPLES = 64
DEFAULT_SEED = 42


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of checking f(x) == det(I + sum x_j A_j).

    ``coeff_residuals`` maps each monomial of degree <= 2 to the absolute
    difference between its coefficient in f and in the determinant;
    ``max_sample_residual`` bounds |det - f| over the sample set, whose
    magnitude scale is recorded in ``scale``.
    """

    ok: bool
    coeff_residuals: dict[str, float]
    max_sample_residual: float
    failing_monomial: str | None
    scale: float


@dataclass(frozen=True)
class ConeWitness:
    """Direction whose ray lies in the spectrahedron with the pencil's
    linear part PSD of rank equal to the polynomial degree."""

    direction: np.ndarray
    pencil_value: np.ndarray
    rank: int
    degree: int


def _check_point(p: HermitianPencil, x) -> np.ndarray:
    xv = np.asarray(x, dtype=float).reshape(-1)
    if xv.shape[0] != p.n:
        raise DimensionMismatch(f"point has {xv.shape[0]} coordinates, expected {p.n}")
    return xv


def linear_part(p: HermitianPencil, x) -> np.ndarray:
    """The homogeneous pencil value sum_j x_j A_j as a complex matrix."""
    xv = _check_point(p, x)
    re = np.tensordot(xv, p.re, axes=1)
    im = np.tensordot(xv, p.im, axes=1)
    return re + 1j * im


def pencil_eval(p: HermitianPencil, x) -> np.ndarray:
    """I + sum_j x_j A_j at a point, as a complex Hermitian matrix."""
    return np.eye(p.size) + linear_part(p, x)


def hermitian_eigenvalues(h: np.ndarray) -> np.ndarray:
    """Eigenvalues (descending) of a Hermitian matrix via the real doubling."""
    re = np.real(h)
    im = np.imag(h)
    if not np.any(im):
        return sym_eig(re).eigenvalues
    k = h.shape[0]
    doubled = np.block([[re, -im], [im, re]])
    w = sym_eig(doubled).eigenvalues
    # spectrum is doubled; adjacent sorted entries pair up
    return w[::2].copy()


def _monomial_order(n: int) -> list[str]:
    names = ["1"]
    names += [f"x{j + 1}" for j in range(n)]
    names += [f"x{j + 1}^2" for j in range(n)]
    names += [f"x{j + 1}*x{k + 1}" for j in range(n) for k in range(j + 1, n)]
    return names


def verify_determinant(f: QuadraticPolynomial, p: HermitianPencil,
                       tol: float = DEFAULT_TOL,
                       samples: int = DEFAULT_SAMPLES,
                       seed: int = DEFAULT_SEED) -> VerifyReport:
    """Check that the pencil represents f.

    Exact part: coeff(x_j) = tr(A_j), coeff(x_j x_k) = tr(A_j) tr(A_k)
    - tr(A_j A_k) for j < k, coeff(x_j^2) = (tr(A_j)^2 - tr(A_j^2)) / 2.
    Sampled part: |det(I + sum x_j A_j) - f(x)| at ``samples`` fixed-seed
    points with coordinates uniform in [-1, 1], certifying that no
    degree->=3 terms survive.  For size-2 pencils the determinant has
    degree <= 2, so the exact part alone already decides.
    """
    if p.n != f.n:
        raise DimensionMismatch(f"pencil has n={p.n}, polynomial n={f.n}")
    n = f.n
    traces = np.einsum("jkk->j", p.re)
    # tr(A_j A_k) is real: re.re part minus im.im part, and the symmetric/
    # antisymmetric split makes both contractions plain elementwise sums
    pair = np.einsum("jab,kab->jk", p.re, p.re) + np.einsum("jab,kab->jk", p.im, p.im)

    residuals: dict[str, float] = {"1": abs(f.c - 1.0)}
    for j in range(n):
        residuals[f"x{j + 1}"] = abs(traces[j] - f.b[j])
    for j in range(n):
        det_coeff = (traces[j] ** 2 - pair[j, j]) / 2.0
        residuals[f"x{j + 1}^2"] = abs(det_coeff - f.A[j, j])
    for j in range(n):
        for k in range(j + 1, n):
            det_coeff = traces[j] * traces[k] - pair[j, k]
            residuals[f"x{j + 1}*x{k + 1}"] = abs(det_coeff - 2.0 * f.A[j, k])

    rng = np.random.default_rng(seed)
    points = rng.uniform(-1.0, 1.0, size=(samples, n))
    max_residual = 0.0
    scale = 1.0
    mats = p.matrices()
    eye = np.eye(p.size)
    for x in points:
        value = evaluate(f, x)
        det = np.linalg.det(eye + np.tensordot(x, mats, axes=1))
        max_residual = max(max_residual, abs(det - value))
        scale = max(scale, abs(value))

    failing = None
    for name in _monomial_order(n):
        if residuals[name] > tol:
            failing = name
            break
    ok = failing is None and max_residual <= tol * (1.0 + scale)
    return VerifyReport(ok=ok, coeff_residuals=residuals,
                        max_sample_residual=float(max_residual),
                        failing_monomial=failing, scale=float(scale))


def spectrahedron_contains(p: HermitianPencil, x, tol: float = DEFAULT_TOL) -> bool:
    """True iff I + sum x_j A_j is PSD at the point (up to the relative
    eigenvalue threshold)."""
    w = hermitian_eigenvalues(pencil_eval(p, x))
    tau = tol * (1.0 + float(np.max(np.abs(w))))
    return bool(w[-1] >= -tau)


def cone_check(f: QuadraticPolynomial, p: HermitianPencil,
               tol: float = DEFAULT_TOL) -> ConeWitness | None:
    """Find a full-dimensional-cone witness, or report there is none.

    If the quadratic part has a positive eigenvalue, its eigenvector v
    (sign fixed so b^T v >= 0) spans a ray inside the spectrahedron along
    which the pencil's linear part is PSD of rank 2.  If A is NSD no such
    direction exists and None is returned.

    Raises
    ------
    WitnessCheckFailed
        if the predicted witness fails numerically, which signals that the
        pencil does not actually represent f.
    """
    if p.n != f.n:
        raise DimensionMismatch(f"pencil has n={p.n}, polynomial n={f.n}")
    d_a = definiteness(f.A, tol)
    if d_a.is_nsd:
        return None
    spec = sym_eig(f.A)
    v = spec.eigenvectors[:, 0].copy()
    if f.b @ v < 0:
        v = -v
    value = linear_part(p, v)
    w = hermitian_eigenvalues(value)
    tau = tol * (1.0 + float(np.max(np.abs(w))))
    rank = int(np.count_nonzero(np.abs(w) > tau))
    if w[-1] < -tau or rank != 2:
        raise WitnessCheckFailed(
            f"predicted witness has min eigenvalue {w[-1]:.3g} and rank {rank}")
    return ConeWitness(direction=v, pencil_value=value, rank=rank, degree=2)


def _real_roots_of_restriction(a2: float, a1: float, tol: float) -> list[float]:
    """Real roots of a2 t^2 + a1 t + 1, degenerating gracefully."""
    if a2 == 0.0:
        return [] if a1 == 0.0 else [-1.0 / a1]
    disc = a1 * a1 - 4.0 * a2
    if disc < 0.0:
        if disc < -tol * (1.0 + a1 * a1 + 4.0 * abs(a2)):
            return []
        disc = 0.0
    sq = math.sqrt(disc)
    q = -(a1 + sq) / 2.0 if a1 >= 0 else -(a1 - sq) / 2.0
    if q == 0.0:
        # a1 == 0 and disc == 0 forces a2 -> 0 handled above; double root at 0
        # cannot happen since the constant term is 1
        return []
    return [q / a2, 1.0 / q]


def root_eigenvalue_check(f: QuadraticPolynomial, p: HermitianPencil, x,
                          tol: float = DEFAULT_TOL) -> bool:
    """Check the correspondence t -> -1/t between the roots of f(t x) and
    the nonzero eigenvalues of sum x_j A_j, counting multiplicity."""
    xv = _check_point(p, x)
    if f.n != p.n:
        raise DimensionMismatch(f"pencil has n={p.n}, polynomial n={f.n}")
    a2 = float(xv @ f.A @ xv)
    a1 = float(f.b @ xv)
    roots = _real_roots_of_restriction(a2, a1, tol)
    recips = sorted(-1.0 / t for t in roots)

    w = hermitian_eigenvalues(linear_part(p, xv))
    tau = tol * (1.0 + float(np.max(np.abs(w), initial=0.0)))
    nonzero = sorted(float(val) for val in w if abs(val) > tau)
    if len(nonzero) != len(recips):
        return False
    return all(abs(a - b) <= tau for a, b in zip(recips, nonzero))
