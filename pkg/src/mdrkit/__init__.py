"""mdrkit: monic determinantal representations of real quadratic polynomials.

Decide whether f(x) = x^T A x + b^T x + 1 can be written as
det(I + x_1 A_1 + ... + x_n A_n) with symmetric or Hermitian coefficient
matrices, construct such pencils (size 2, diagonal, block, compressed),
verify them independently, and classify size-2 pencils up to unitary
equivalence.
"""

from ._kernels import BACKEND
from .construct import (
    DecisionReport,
    HermitianPencil,
    NsdConstruction,
    Size2Data,
    Verdict,
    compress,
    construct_diagonal,
    construct_nsd,
    construct_size2,
    decide,
    pencil_from_dict,
    pencil_of,
    pencil_to_dict,
    size2_data_from_pencil,
)
from .equivalence import (
    ClassLabel,
    EquivalenceKind,
    EquivalenceVerdict,
    FactorData,
    are_equivalent,
    class_label,
    connecting_orthogonal,
    orthogonal2_conjugator,
    recover_factor,
    so3_from_su2,
    su2_from_so3,
    su2_matrix,
)
from .linalg import (
    Definiteness,
    DefinitenessKind,
    PsdFactor,
    Spectrum,
    definiteness,
    psd_low_rank_factor,
    sym_eig,
    symmetrize,
)
from .quadform import (
    QuadraticPolynomial,
    evaluate,
    format_polynomial,
    is_real_zero,
    matrix_representation,
    normalize,
    parse_polynomial,
    poly_from_dict,
    poly_to_dict,
    schur_complement_11,
)
from .verify import (
    ConeWitness,
    VerifyReport,
    cone_check,
    hermitian_eigenvalues,
    linear_part,
    pencil_eval,
    root_eigenvalue_check,
    spectrahedron_contains,
    verify_determinant,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ClassLabel",
    "ConeWitness",
    "DecisionReport",
    "Definiteness",
    "DefinitenessKind",
    "EquivalenceKind",
    "EquivalenceVerdict",
    "FactorData",
    "HermitianPencil",
    "NsdConstruction",
    "PsdFactor",
    "QuadraticPolynomial",
    "Size2Data",
    "Spectrum",
    "Verdict",
    "VerifyReport",
    "are_equivalent",
    "class_label",
    "compress",
    "cone_check",
    "connecting_orthogonal",
    "construct_diagonal",
    "construct_nsd",
    "construct_size2",
    "decide",
    "definiteness",
    "evaluate",
    "format_polynomial",
    "hermitian_eigenvalues",
    "is_real_zero",
    "linear_part",
    "matrix_representation",
    "normalize",
    "orthogonal2_conjugator",
    "parse_polynomial",
    "pencil_eval",
    "pencil_from_dict",
    "pencil_of",
    "pencil_to_dict",
    "poly_from_dict",
    "poly_to_dict",
    "psd_low_rank_factor",
    "recover_factor",
    "root_eigenvalue_check",
    "schur_complement_11",
    "size2_data_from_pencil",
    "so3_from_su2",
    "spectrahedron_contains",
    "su2_from_so3",
    "su2_matrix",
    "sym_eig",
    "symmetrize",
    "verify_determinant",
]
