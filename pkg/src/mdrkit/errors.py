"""Exception hierarchy shared by all mdrkit modules."""


class MdrError(Exception):
    """Base class for all mdrkit errors."""


# --- linear algebra ---------------------------------------------------------

class NumericalFailure(MdrError):
    """Eigensolver hit its sweep cap without converging (pathological input)."""


class NotPSD(MdrError):
    """A matrix expected to be positive semidefinite has a negative eigenvalue."""


# --- polynomial handling ----------------------------------------------------

class ParseError(MdrError):
    """Polynomial text does not conform to the grammar."""

    def __init__(self, position: int, message: str):
        super().__init__(f"at position {position}: {message}")
        self.position = position
        self.message = message


class DegreeError(ParseError):
    """A monomial of degree three or more was encountered."""


class EmptyPolynomial(ParseError):
    """Input contained no terms at all."""

    def __init__(self, message: str = "no terms found"):
        super().__init__(0, message)


class DimensionMismatch(MdrError):
    """Vector/matrix dimensions are inconsistent."""


class NonPositiveConstant(MdrError):
    """Constant term must be positive to scale to a monic representation."""


class ZeroConstantTerm(MdrError):
    """Schur complement / real-zero test requires a nonzero constant term."""


# --- construction -----------------------------------------------------------

class NotMonic(MdrError):
    """Operation requires the polynomial's constant term to be exactly 1."""


class NoSize2Representation(MdrError):
    """No size-2 monic determinantal representation exists; carries the report."""

    def __init__(self, report):
        super().__init__(f"no size-2 representation: verdict {report.verdict.value}")
        self.report = report


class NoDiagonalRepresentation(MdrError):
    """No diagonal monic representation exists (Schur complement rank > 1)."""

    def __init__(self, report):
        super().__init__(f"no diagonal representation: Schur rank {report.schur_rank}")
        self.report = report


class ANotNSD(MdrError):
    """Block construction requires the quadratic part to be negative semidefinite."""


class InvalidPairing(MdrError):
    """Row pairing for pencil compression is out of range or not disjoint."""


# --- verification -----------------------------------------------------------

class WitnessCheckFailed(MdrError):
    """A theory-predicted witness failed its numerical check (inconsistent inputs)."""


# --- equivalence ------------------------------------------------------------

class GramMismatch(MdrError):
    """Factor matrices do not share the same Gram matrix."""


class NotUnitNorm(MdrError):
    """Quadruple (a, b, c, d) is not on the unit sphere."""


class NotRotation(MdrError):
    """Matrix is not a rotation (determinant +1 orthogonal); no SU(2) preimage."""


class NotOrthogonal(MdrError):
    """Matrix is not orthogonal."""


class VerificationMismatch(MdrError):
    """Pencil does not represent the polynomial it was claimed to represent."""
