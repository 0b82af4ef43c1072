"""Unitary/orthogonal equivalence of size-2 pencils.

Every 2x2 Hermitian coefficient matrix splits as (b_j/2) I plus a traceless
part k sigma_z + l sigma_x + m sigma_y, so a size-2 pencil is captured by
the offset vector b and a 3xn row matrix R whose columns are (k, l, m).
Two pencils of the same polynomial are related by R2 = O R1 with O
orthogonal; they are unitarily equivalent iff O can be chosen with
determinant +1, which is automatic when rank(R) <= 2 and splits the rank-3
case into exactly two classes.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .construct import Size2Data, pencil_of, schur_of
from .errors import (
    GramMismatch,
    NotOrthogonal,
    NotRotation,
    NotUnitNorm,
    VerificationMismatch,
    WitnessCheckFailed,
)
from .linalg import DEFAULT_TOL, psd_low_rank_factor, sym_eig
from .quadform import QuadraticPolynomial

SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)


@dataclass(frozen=True)
class FactorData:
    """Traceless decomposition of a size-2 pencil: offset b and the 3xn
    row matrix R (rows alpha_1..alpha_3, zero-padded) with
    R^T R = -(Schur complement)."""

    b: np.ndarray
    rows: np.ndarray
    effective_rank: int

    def gram(self) -> np.ndarray:
        return self.rows.T @ self.rows


class EquivalenceKind(Enum):
    EQUIVALENT = "Equivalent"
    NOT_EQUIVALENT = "NotEquivalent"
    DIFFERENT_POLYNOMIAL = "DifferentPolynomial"


@dataclass(frozen=True)
class EquivalenceVerdict:
    kind: EquivalenceKind
    witness_params: tuple[float, float, float, float] | None = None
    witness_u: np.ndarray | None = None
    connecting_o: np.ndarray | None = None
    connecting_det: float | None = None


class ClassLabel(Enum):
    UNIQUE = "Unique"
    PLUS = "Plus"
    MINUS = "Minus"


def _rank_of_gram3(rows: np.ndarray, tol: float) -> int:
    w = sym_eig(rows @ rows.T).eigenvalues
    tau = tol * (1.0 + float(np.max(np.abs(w))))
    return int(np.count_nonzero(w > tau))


def recover_factor(d: Size2Data, tol: float = DEFAULT_TOL) -> FactorData:
    """Invert the pencil assembly: b = r + s, alpha_1 = (r - s)/2,
    alpha_2 = t, alpha_3 = u."""
    rows = np.vstack([(d.r - d.s) / 2.0, d.t, d.u])
    return FactorData(b=d.r + d.s, rows=rows,
                      effective_rank=_rank_of_gram3(rows, tol))


def connecting_orthogonal(r1: np.ndarray, r2: np.ndarray,
                          tol: float = DEFAULT_TOL) -> np.ndarray | None:
    """Orthogonal 3x3 matrix O with O r1 == r2, given equal Gram matrices.

    Solved as an orthogonal Procrustes problem; when the rows are rank
    deficient the free directions are completed with a determinant-+1
    preference.  Returns None if no orthogonal map actually connects the
    two factors (rows of r2 outside the row space of r1 beyond tolerance).

    Raises
    ------
    GramMismatch
        if r1^T r1 and r2^T r2 differ beyond tolerance.
    """
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    if r1.shape != r2.shape or r1.shape[0] != 3:
        raise GramMismatch(f"expected matching 3xn factors, got {r1.shape} and {r2.shape}")
    g1 = r1.T @ r1
    g2 = r2.T @ r2
    scale = 1.0 + max(float(np.max(np.abs(g1), initial=0.0)),
                      float(np.max(np.abs(g2), initial=0.0)))
    if float(np.max(np.abs(g1 - g2), initial=0.0)) > tol * scale:
        raise GramMismatch("factor Gram matrices differ beyond tolerance")
    u, sig, vt = np.linalg.svd(r2 @ r1.T)
    o = u @ vt
    if np.linalg.det(o) < 0 and sig[-1] <= tol * (1.0 + sig[0]):
        u = u.copy()
        u[:, -1] = -u[:, -1]
        o = u @ vt
    fit_scale = 1.0 + float(np.max(np.abs(r1), initial=0.0)) \
        + float(np.max(np.abs(r2), initial=0.0))
    if float(np.max(np.abs(o @ r1 - r2), initial=0.0)) > 100.0 * tol * fit_scale:
        return None
    return o


def su2_matrix(a: float, b: float, c: float, d: float) -> np.ndarray:
    """The SU(2) element [[a+ib, -c+id], [c+id, a-ib]]."""
    return np.array([[a + 1j * b, -c + 1j * d],
                     [c + 1j * d, a - 1j * b]])


def so3_from_su2(a: float, b: float, c: float, d: float,
                 tol: float = DEFAULT_TOL) -> np.ndarray:
    """Rotation acting on (k, l, m) Pauli coordinates under H -> U* H U.

    Requires a^2 + b^2 + c^2 + d^2 = 1; the result is orthogonal with
    determinant +1.
    """
    norm2 = a * a + b * b + c * c + d * d
    if abs(norm2 - 1.0) > max(tol, 1e-12) * 10:
        raise NotUnitNorm(f"quadruple has squared norm {norm2!r}")
    return np.array([
        [a * a + b * b - c * c - d * d, 2 * a * c + 2 * b * d, 2 * a * d - 2 * b * c],
        [2 * b * d - 2 * a * c, a * a - b * b - c * c + d * d, -2 * a * b - 2 * c * d],
        [-2 * a * d - 2 * b * c, 2 * a * b - 2 * c * d, a * a - b * b + c * c - d * d],
    ])


def su2_from_so3(o: np.ndarray, tol: float = DEFAULT_TOL) -> tuple[float, float, float, float]:
    """Invert :func:`so3_from_su2`, up to global sign.

    The result is canonicalized so its first nonzero component is positive.

    Raises
    ------
    NotRotation
        if det(o) is -1 (no SU(2) preimage exists) or o is not orthogonal.
    """
    o = np.asarray(o, dtype=float)
    if o.shape != (3, 3):
        raise NotRotation(f"expected a 3x3 matrix, got {o.shape}")
    ortho_err = float(np.max(np.abs(o.T @ o - np.eye(3))))
    if ortho_err > 1e-6:
        raise NotRotation(f"matrix is not orthogonal (error {ortho_err:.3g})")
    if np.linalg.det(o) < 0:
        raise NotRotation("determinant is -1; no SU(2) preimage exists")

    a2 = max((np.trace(o) + 1.0) / 4.0, 0.0)
    b2 = max((1.0 + o[0, 0]) / 2.0 - a2, 0.0)
    c2 = max((1.0 + o[2, 2]) / 2.0 - a2, 0.0)
    d2 = max((1.0 + o[1, 1]) / 2.0 - a2, 0.0)
    ab = (o[2, 1] - o[1, 2]) / 4.0
    ac = (o[0, 1] - o[1, 0]) / 4.0
    ad = (o[0, 2] - o[2, 0]) / 4.0
    bc = -(o[0, 2] + o[2, 0]) / 4.0
    bd = (o[0, 1] + o[1, 0]) / 4.0
    cd = -(o[1, 2] + o[2, 1]) / 4.0

    squares = [a2, b2, c2, d2]
    lead = int(np.argmax(squares))
    if lead == 0:
        a = np.sqrt(a2)
        q = (a, ab / a, ac / a, ad / a)
    elif lead == 1:
        b = np.sqrt(b2)
        q = (ab / b, b, bc / b, bd / b)
    elif lead == 2:
        c = np.sqrt(c2)
        q = (ac / c, bc / c, c, cd / c)
    else:
        d = np.sqrt(d2)
        q = (ad / d, bd / d, cd / d, d)
    q = np.array(q)
    q /= np.linalg.norm(q)
    for val in q:
        if abs(val) > 1e-12:
            if val < 0:
                q = -q
            break
    result = (float(q[0]), float(q[1]), float(q[2]), float(q[3]))
    if float(np.max(np.abs(so3_from_su2(*result) - o))) > max(tol, 1e-9) * 100:
        raise NotRotation("matrix is not in the image of the SU(2) covering map")
    return result


def are_equivalent(p1: Size2Data, p2: Size2Data,
                   tol: float = DEFAULT_TOL) -> EquivalenceVerdict:
    """Decide unitary equivalence of two size-2 pencils.

    Pencils of different polynomials (offset b or Gram matrices differ)
    are DifferentPolynomial.  For factor rank <= 2 the connecting
    orthogonal matrix can always be completed to determinant +1, so the
    pencils are Equivalent; for rank 3 they are Equivalent iff the unique
    connecting matrix has determinant +1.  Every Equivalent verdict
    carries a witness U that is checked by direct conjugation.
    """
    f1 = recover_factor(p1, tol)
    f2 = recover_factor(p2, tol)
    if f1.b.shape != f2.b.shape:
        return EquivalenceVerdict(kind=EquivalenceKind.DIFFERENT_POLYNOMIAL)
    b_scale = 1.0 + max(float(np.max(np.abs(f1.b), initial=0.0)),
                        float(np.max(np.abs(f2.b), initial=0.0)))
    if float(np.max(np.abs(f1.b - f2.b), initial=0.0)) > tol * b_scale:
        return EquivalenceVerdict(kind=EquivalenceKind.DIFFERENT_POLYNOMIAL)
    try:
        o = connecting_orthogonal(f1.rows, f2.rows, tol)
    except GramMismatch:
        return EquivalenceVerdict(kind=EquivalenceKind.DIFFERENT_POLYNOMIAL)
    if o is None:
        return EquivalenceVerdict(kind=EquivalenceKind.DIFFERENT_POLYNOMIAL)
    det_o = float(np.linalg.det(o))
    rank = max(f1.effective_rank, f2.effective_rank)
    if rank == 3 and det_o < 0:
        return EquivalenceVerdict(kind=EquivalenceKind.NOT_EQUIVALENT,
                                  connecting_o=o, connecting_det=det_o)
    params = su2_from_so3(o, tol)
    u = su2_matrix(*params)
    m1 = pencil_of(p1).matrices()
    m2 = pencil_of(p2).matrices()
    conj = u.conj().T @ m1 @ u
    scale = 1.0 + float(np.max(np.abs(m1)) + np.max(np.abs(m2)))
    if float(np.max(np.abs(conj - m2))) > 100.0 * tol * scale:
        raise WitnessCheckFailed("extracted unitary fails to conjugate the pencils")
    return EquivalenceVerdict(kind=EquivalenceKind.EQUIVALENT,
                              witness_params=params, witness_u=u,
                              connecting_o=o, connecting_det=det_o)


def class_label(p: Size2Data, f: QuadraticPolynomial,
                tol: float = DEFAULT_TOL) -> ClassLabel:
    """Label the equivalence class of a size-2 pencil of f.

    Rank <= 2 pencils form a single class (Unique).  In the rank-3 case
    the label is the determinant sign of the orthogonal matrix connecting
    this build's canonical factor of -(Schur complement) to the pencil's
    factor; labels are stable within a build and two pencils are
    equivalent iff their labels match.
    """
    fd = recover_factor(p, tol)
    scale = 1.0 + float(np.max(np.abs(f.b), initial=0.0))
    if f.c != 1.0 or float(np.max(np.abs(fd.b - f.b), initial=0.0)) > tol * scale:
        raise VerificationMismatch("pencil offset does not match the polynomial")
    neg_schur = -schur_of(f)
    g = fd.gram()
    g_scale = 1.0 + float(np.max(np.abs(neg_schur)))
    if float(np.max(np.abs(g - neg_schur))) > tol * g_scale * 100:
        raise VerificationMismatch("pencil factor does not match the polynomial")
    if fd.effective_rank <= 2:
        return ClassLabel.UNIQUE
    canonical = np.zeros((3, f.n))
    factor = psd_low_rank_factor(neg_schur, tol)
    canonical[: factor.rank] = factor.rows
    o = connecting_orthogonal(canonical, fd.rows, tol)
    if o is None:
        raise VerificationMismatch("no orthogonal map connects the canonical factor")
    return ClassLabel.PLUS if float(np.linalg.det(o)) > 0 else ClassLabel.MINUS


def orthogonal2_conjugator(o: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """2x2 orthogonal V whose conjugation of k sigma_z + l sigma_x realizes
    the given orthogonal action on (k, l).

    A rotation by theta maps to the rotation by theta/2; a reflection with
    angle theta maps to [[-sin(theta/2), cos(theta/2)],
    [cos(theta/2), sin(theta/2)]].
    """
    o = np.asarray(o, dtype=float)
    if o.shape != (2, 2):
        raise NotOrthogonal(f"expected a 2x2 matrix, got {o.shape}")
    err = float(np.max(np.abs(o.T @ o - np.eye(2))))
    if err > max(tol, 1e-9) * 100:
        raise NotOrthogonal(f"matrix is not orthogonal (error {err:.3g})")
    det = o[0, 0] * o[1, 1] - o[0, 1] * o[1, 0]
    if det > 0:
        theta = np.arctan2(o[0, 1], o[0, 0])
        half = theta / 2.0
        return np.array([[np.cos(half), -np.sin(half)],
                         [np.sin(half), np.cos(half)]])
    theta = np.arctan2(-o[0, 1], -o[0, 0])
    half = theta / 2.0
    return np.array([[-np.sin(half), np.cos(half)],
                     [np.cos(half), np.sin(half)]])
