"""Decision procedure and constructions for monic determinantal
representations (MDRs) of quadratics with constant term 1.

A quadratic f(x) = x^T A x + b^T x + 1 admits an MDR of some size iff
either A is negative semidefinite, or the Schur complement S = A - b b^T/4
is negative semidefinite with rank at most 3.  Size-2 representations come
from a low-rank factorization of -S; the NSD route builds a pencil of size
rank(A) + 1 whose rows can be pairwise merged into complex entries to
shrink the size.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    ANotNSD,
    InvalidPairing,
    NoDiagonalRepresentation,
    NoSize2Representation,
    NotMonic,
    ParseError,
)
from .linalg import DEFAULT_TOL, definiteness, psd_low_rank_factor, symmetrize
from .quadform import QuadraticPolynomial

_HERMITIAN_TOL = 1e-12


@dataclass(frozen=True)
class HermitianPencil:
    """Coefficient matrices A_1..A_n of the monic pencil I + sum_j x_j A_j.

    Stored as real/imaginary parts: ``re[j]`` symmetric, ``im[j]``
    antisymmetric, so each A_j = re[j] + i*im[j] is Hermitian.
    """

    re: np.ndarray  # (n, k, k)
    im: np.ndarray  # (n, k, k)

    def __post_init__(self):
        re = np.asarray(self.re, dtype=float)
        im = np.asarray(self.im, dtype=float)
        if re.ndim != 3 or re.shape[1] != re.shape[2]:
            raise ValueError(f"re must be (n, k, k), got {re.shape}")
        if im.shape != re.shape:
            raise ValueError(f"im shape {im.shape} != re shape {re.shape}")
        # canonicalize: symmetric re, antisymmetric im
        re = (re + re.transpose(0, 2, 1)) / 2.0
        im = (im - im.transpose(0, 2, 1)) / 2.0
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    @property
    def n(self) -> int:
        return self.re.shape[0]

    @property
    def size(self) -> int:
        return self.re.shape[1]

    def is_symmetric(self, tol: float = _HERMITIAN_TOL) -> bool:
        return bool(np.max(np.abs(self.im), initial=0.0) <= tol)

    def matrices(self) -> np.ndarray:
        """The coefficient matrices as a complex (n, k, k) stack."""
        return self.re + 1j * self.im


@dataclass(frozen=True)
class Size2Data:
    """Entry vectors of a size-2 pencil: A_j = [[r_j, t_j - i u_j],
    [t_j + i u_j, s_j]]."""

    r: np.ndarray
    s: np.ndarray
    t: np.ndarray
    u: np.ndarray

    @property
    def n(self) -> int:
        return self.r.shape[0]

    def is_symmetric(self, tol: float = _HERMITIAN_TOL) -> bool:
        return bool(np.max(np.abs(self.u), initial=0.0) <= tol)


class Verdict(Enum):
    NO_MDR = "NoMDR"
    SIZE2_SYMMETRIC = "Size2Symmetric"
    SIZE2_HERMITIAN_ONLY = "Size2HermitianOnly"
    NSD_ONLY = "NSDOnly"


@dataclass(frozen=True)
class DecisionReport:
    """Existence verdict with the certificate ranks and available routes."""

    rz_polynomial: bool
    a_is_nsd: bool
    a_rank: int
    schur_nsd: bool
    schur_rank: int
    verdict: Verdict
    diagonal_possible: bool
    available_sizes: tuple[int, ...]


@dataclass(frozen=True)
class NsdConstruction:
    """Block construction for NSD quadratic part: A = -C^T C and the
    size-(rank+1) pencil with C's columns in the last column/row."""

    C: np.ndarray
    b: np.ndarray
    pencil: HermitianPencil


def _require_monic(f: QuadraticPolynomial):
    if f.c != 1.0:
        raise NotMonic(f"constant term is {f.c!r}, expected exactly 1")


def schur_of(f: QuadraticPolynomial) -> np.ndarray:
    """The certificate matrix A - b b^T / (4c)."""
    return symmetrize(f.A - np.outer(f.b, f.b) / (4.0 * f.c))


def decide(f: QuadraticPolynomial, tol: float = DEFAULT_TOL) -> DecisionReport:
    """Decide which MDRs exist for a monic quadratic.

    An MDR exists iff A is NSD or the Schur complement is NSD with rank
    <= 3; rank <= 2 admits a symmetric size-2 pencil, rank exactly 3 only
    a Hermitian one, rank <= 1 a diagonal one.  ``available_sizes`` lists
    2 when a size-2 pencil exists, plus ceil(r/2)+1 .. r+1 from the NSD
    block construction and its compressions (r = rank A).
    """
    _require_monic(f)
    d_schur = definiteness(schur_of(f), tol)
    d_a = definiteness(f.A, tol)
    schur_nsd = d_schur.is_nsd
    a_is_nsd = d_a.is_nsd
    schur_rank = d_schur.rank
    size2 = schur_nsd and schur_rank <= 3
    if size2:
        verdict = (Verdict.SIZE2_SYMMETRIC if schur_rank <= 2
                   else Verdict.SIZE2_HERMITIAN_ONLY)
    elif a_is_nsd:
        verdict = Verdict.NSD_ONLY
    else:
        verdict = Verdict.NO_MDR
    sizes: set[int] = set()
    if size2:
        sizes.add(2)
    if a_is_nsd:
        r = d_a.rank
        sizes.update(range(math.ceil(r / 2) + 1, r + 2))
    return DecisionReport(
        rz_polynomial=schur_nsd,
        a_is_nsd=a_is_nsd,
        a_rank=d_a.rank,
        schur_nsd=schur_nsd,
        schur_rank=schur_rank,
        verdict=verdict,
        diagonal_possible=schur_nsd and schur_rank <= 1,
        available_sizes=tuple(sorted(sizes)),
    )


def _padded_factor_rows(f: QuadraticPolynomial, tol: float) -> np.ndarray:
    """Rows alpha_1..alpha_3 with -S = sum alpha_i alpha_i^T, zero-padded to 3."""
    factor = psd_low_rank_factor(-schur_of(f), tol)
    rows = np.zeros((3, f.n))
    rows[: factor.rank] = factor.rows
    return rows


def construct_size2(f: QuadraticPolynomial, tol: float = DEFAULT_TOL) -> Size2Data:
    """Size-2 pencil data from the factorization -S = sum_i alpha_i alpha_i^T:
    r = b/2 + alpha_1, s = b/2 - alpha_1, t = alpha_2, u = alpha_3.

    When the Schur rank is <= 2 the third row is zero, so u = 0 and the
    pencil is symmetric.
    """
    report = decide(f, tol)
    if report.verdict not in (Verdict.SIZE2_SYMMETRIC, Verdict.SIZE2_HERMITIAN_ONLY):
        raise NoSize2Representation(report)
    alpha = _padded_factor_rows(f, tol)
    half_b = f.b / 2.0
    return Size2Data(r=half_b + alpha[0], s=half_b - alpha[0],
                     t=alpha[1], u=alpha[2])


def construct_diagonal(f: QuadraticPolynomial, tol: float = DEFAULT_TOL) -> Size2Data:
    """Diagonal size-2 pencil (t = u = 0); exists iff the Schur complement
    is NSD of rank <= 1.  The two diagonal entries of I + sum x_j A_j are
    then the affine factors of f."""
    report = decide(f, tol)
    if not (report.schur_nsd and report.schur_rank <= 1):
        raise NoDiagonalRepresentation(report)
    alpha = _padded_factor_rows(f, tol)
    half_b = f.b / 2.0
    zero = np.zeros(f.n)
    return Size2Data(r=half_b + alpha[0], s=half_b - alpha[0],
                     t=zero, u=zero.copy())


def pencil_of(d: Size2Data) -> HermitianPencil:
    """Assemble the 2x2 coefficient matrices from (r, s, t, u)."""
    n = d.n
    re = np.zeros((n, 2, 2))
    im = np.zeros((n, 2, 2))
    re[:, 0, 0] = d.r
    re[:, 1, 1] = d.s
    re[:, 0, 1] = d.t
    re[:, 1, 0] = d.t
    im[:, 0, 1] = -d.u
    im[:, 1, 0] = d.u
    return HermitianPencil(re=re, im=im)


def _pencil_from_complex_rows(c_re: np.ndarray, c_im: np.ndarray,
                              b: np.ndarray) -> HermitianPencil:
    """Pencil [[0, Cx], [(Cx)^H, b^T x]] from a (possibly complex) row
    matrix C given as re/im parts of shape (m, n)."""
    m, n = c_re.shape
    k = m + 1
    re = np.zeros((n, k, k))
    im = np.zeros((n, k, k))
    for j in range(n):
        re[j, :m, m] = c_re[:, j]
        re[j, m, :m] = c_re[:, j]
        im[j, :m, m] = c_im[:, j]
        im[j, m, :m] = -c_im[:, j]
        re[j, m, m] = b[j]
    return HermitianPencil(re=re, im=im)


def construct_nsd(f: QuadraticPolynomial, tol: float = DEFAULT_TOL) -> NsdConstruction:
    """Symmetric pencil of size rank(A)+1 for NSD quadratic part.

    Factors -A = C^T C and builds A_j with C's column j in the last
    column/row and b_j in the corner; then
    det(I + sum x_j A_j) = 1 + b^T x - ||Cx||^2 = f(x).
    A zero quadratic part gives the 1x1 pencil A_j = [b_j].
    """
    _require_monic(f)
    d_a = definiteness(f.A, tol)
    if not d_a.is_nsd:
        raise ANotNSD(
            f"quadratic part is {d_a.kind.value}; block construction needs NSD")
    c_rows = psd_low_rank_factor(-f.A, tol).rows
    pencil = _pencil_from_complex_rows(c_rows, np.zeros_like(c_rows), f.b)
    return NsdConstruction(C=c_rows, b=f.b.copy(), pencil=pencil)


def compress(nc: NsdConstruction, pairing) -> HermitianPencil:
    """Merge pairs of rows of C into complex rows, shrinking the pencil.

    ``pairing`` is a list of disjoint 1-based row index pairs (p, q); row p
    becomes the real part and row q the imaginary part of one complex row,
    and the pencil size drops by one per pair.  The determinant identity is
    preserved because |(Cx)_p + i (Cx)_q|^2 = (Cx)_p^2 + (Cx)_q^2.
    """
    r = nc.C.shape[0]
    pairs = [(int(p), int(q)) for p, q in pairing]
    used: set[int] = set()
    for p, q in pairs:
        if not (1 <= p <= r and 1 <= q <= r):
            raise InvalidPairing(f"pair ({p},{q}) out of range 1..{r}")
        if p == q or p in used or q in used:
            raise InvalidPairing(f"pair ({p},{q}) reuses a row index")
        used.add(p)
        used.add(q)
    imag_of = {p: q for p, q in pairs}
    skip = {q for _, q in pairs}
    re_rows, im_rows = [], []
    for row in range(1, r + 1):
        if row in skip:
            continue
        re_rows.append(nc.C[row - 1])
        if row in imag_of:
            im_rows.append(nc.C[imag_of[row] - 1])
        else:
            im_rows.append(np.zeros(nc.C.shape[1]))
    c_re = np.array(re_rows) if re_rows else np.zeros((0, nc.C.shape[1]))
    c_im = np.array(im_rows) if im_rows else np.zeros((0, nc.C.shape[1]))
    return _pencil_from_complex_rows(c_re, c_im, nc.b)


def size2_data_from_pencil(p: HermitianPencil) -> Size2Data:
    """Read (r, s, t, u) off a size-2 Hermitian pencil."""
    if p.size != 2:
        raise ParseError(0, f"expected a size-2 pencil, got size {p.size}")
    return Size2Data(r=p.re[:, 0, 0].copy(), s=p.re[:, 1, 1].copy(),
                     t=p.re[:, 0, 1].copy(), u=p.im[:, 1, 0].copy())


# --- JSON form --------------------------------------------------------------

def pencil_to_dict(p: HermitianPencil) -> dict:
    mats = []
    for j in range(p.n):
        entry = {"re": p.re[j].tolist()}
        if np.any(p.im[j]):
            entry["im"] = p.im[j].tolist()
        mats.append(entry)
    return {"n": p.n, "size": p.size, "matrices": mats}


def pencil_from_dict(d: dict) -> HermitianPencil:
    try:
        n = int(d["n"])
        size = int(d["size"])
        re = np.zeros((n, size, size))
        im = np.zeros((n, size, size))
        mats = d["matrices"]
        if len(mats) != n:
            raise ValueError(f"expected {n} matrices, got {len(mats)}")
        for j, entry in enumerate(mats):
            re[j] = np.asarray(entry["re"], dtype=float).reshape(size, size)
            if "im" in entry:
                im[j] = np.asarray(entry["im"], dtype=float).reshape(size, size)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(0, f"bad pencil JSON: {exc}") from exc
    return HermitianPencil(re=re, im=im)
