"""Quadratic polynomial model: parsing, evaluation, matrix representation,
Schur complement and the real-zero test.

A quadratic f(x) = x^T A x + b^T x + c is held as (A, b, c) with A stored
canonically symmetric.  Cross terms from text input are split evenly into
A so the matrix representation is the unique symmetric one.
"""

import re
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegreeError,
    DimensionMismatch,
    EmptyPolynomial,
    NonPositiveConstant,
    ParseError,
    ZeroConstantTerm,
)
from .linalg import DEFAULT_TOL, definiteness, symmetrize


@dataclass(frozen=True)
class QuadraticPolynomial:
    """Real quadratic x^T A x + b^T x + c in n variables x1..xn."""

    A: np.ndarray
    b: np.ndarray
    c: float

    def __post_init__(self):
        object.__setattr__(self, "A", symmetrize(self.A))
        object.__setattr__(self, "b", np.asarray(self.b, dtype=float).reshape(-1))
        object.__setattr__(self, "c", float(self.c))
        if self.A.shape != (self.n, self.n):
            raise DimensionMismatch(
                f"A has shape {self.A.shape}, expected ({self.n}, {self.n})")

    @property
    def n(self) -> int:
        return self.b.shape[0]

    def __call__(self, x) -> float:
        return evaluate(self, x)


# --- text grammar -----------------------------------------------------------
#
#   poly   := term (('+'|'-') term)*
#   term   := number | [number '*'] factor ['*' factor]
#   factor := 'x' index ['^' '2']
#
# '*' is optional; whitespace is ignored.

_TOKEN = re.compile(r"""
    (?P<num>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)
  | (?P<var>x(?P<idx>\d+))
  | (?P<op>[+\-*^])
  | (?P<ws>\s+)
""", re.VERBOSE)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(pos, f"unexpected character {text[pos]!r}")
        if m.lastgroup != "ws":
            if m.lastgroup == "var":
                idx = int(m.group("idx"))
                if idx < 1:
                    raise ParseError(pos, "variable index must be >= 1")
                tokens.append(("var", idx, pos))
            elif m.lastgroup == "num":
                tokens.append(("num", float(m.group("num")), pos))
            else:
                tokens.append((m.group("op"), None, pos))
        pos = m.end()
    return tokens


def parse_polynomial(text: str, nvars: int | None = None) -> QuadraticPolynomial:
    """Parse polynomial text like ``"1 - 5*x1^2 - 8*x1*x2"``.

    Variables are x1..xn; if ``nvars`` is omitted, n is the largest index
    seen (at least 1).  Monomials of degree three or more raise
    :class:`DegreeError`; empty input raises :class:`EmptyPolynomial`.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise EmptyPolynomial()

    # terms: list of (coefficient, {index: power}, position)
    terms = []
    i = 0
    sign = 1.0
    # optional leading sign
    while i < len(tokens) and tokens[i][0] in ("+", "-"):
        if tokens[i][0] == "-":
            sign = -sign
        i += 1
    while i < len(tokens):
        coeff = sign
        powers: dict[int, int] = {}
        start = tokens[i][2]
        saw_item = False
        expect_item = True
        while i < len(tokens) and (tokens[i][0] not in ("+", "-")):
            kind, value, pos = tokens[i]
            if kind == "num":
                coeff *= value
                saw_item = True
                expect_item = False
                i += 1
            elif kind == "var":
                power = 1
                if i + 1 < len(tokens) and tokens[i + 1][0] == "^":
                    if i + 2 >= len(tokens) or tokens[i + 2][0] != "num":
                        raise ParseError(pos, "expected exponent after '^'")
                    exp = tokens[i + 2][1]
                    if exp != int(exp) or exp < 1:
                        raise ParseError(tokens[i + 2][2],
                                         "exponent must be a positive integer")
                    power = int(exp)
                    i += 2
                powers[value] = powers.get(value, 0) + power
                saw_item = True
                expect_item = False
                i += 1
            elif kind == "*":
                if not saw_item:
                    raise ParseError(pos, "unexpected '*'")
                expect_item = True
                i += 1
            else:
                raise ParseError(pos, f"unexpected {kind!r}")
        if not saw_item or expect_item and tokens[i - 1][0] == "*":
            raise ParseError(start, "empty term")
        degree = sum(powers.values())
        if degree > 2:
            raise DegreeError(start, f"monomial of degree {degree} (max 2)")
        terms.append((coeff, powers, start))
        # consume the separating sign(s)
        sign = 1.0
        saw_sep = False
        while i < len(tokens) and tokens[i][0] in ("+", "-"):
            if tokens[i][0] == "-":
                sign = -sign
            saw_sep = True
            i += 1
        if saw_sep and i >= len(tokens):
            raise ParseError(len(text), "dangling sign at end of input")

    if not terms:
        raise EmptyPolynomial()
    max_idx = max((max(p) for _, p, _ in terms if p), default=0)
    if nvars is None:
        n = max(max_idx, 1)
    else:
        if nvars < 1:
            raise ParseError(0, "nvars must be >= 1")
        if max_idx > nvars:
            bad = next(pos for _, p, pos in terms if p and max(p) > nvars)
            raise ParseError(bad, f"variable index {max_idx} exceeds nvars={nvars}")
        n = nvars

    A = np.zeros((n, n))
    b = np.zeros(n)
    c = 0.0
    for coeff, powers, _ in terms:
        if not powers:
            c += coeff
        elif len(powers) == 1:
            ((idx, power),) = powers.items()
            if power == 1:
                b[idx - 1] += coeff
            else:
                A[idx - 1, idx - 1] += coeff
        else:
            (i1, _), (i2, _) = powers.items()
            A[i1 - 1, i2 - 1] += coeff / 2.0
            A[i2 - 1, i1 - 1] += coeff / 2.0
    return QuadraticPolynomial(A=A, b=b, c=c)


def _fmt(value: float) -> str:
    return repr(float(value))


def format_polynomial(f: QuadraticPolynomial) -> str:
    """Render in the text grammar; parses back to identical coefficients."""
    parts: list[tuple[float, str]] = [(f.c, "")]
    for i in range(f.n):
        parts.append((f.b[i], f"x{i + 1}"))
    for i in range(f.n):
        parts.append((f.A[i, i], f"x{i + 1}^2"))
    for i in range(f.n):
        for j in range(i + 1, f.n):
            parts.append((2.0 * f.A[i, j], f"x{i + 1}*x{j + 1}"))
    pieces = []
    for coeff, mono in parts:
        if coeff == 0.0 and mono:
            continue
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        body = _fmt(mag) if not mono else f"{_fmt(mag)}*{mono}"
        pieces.append((sign, body))
    out = ""
    for k, (sign, body) in enumerate(pieces):
        if k == 0:
            out = body if sign == "+" else f"-{body}"
        else:
            out += f" {sign} {body}"
    return out


def evaluate(f: QuadraticPolynomial, x) -> float:
    """Evaluate x^T A x + b^T x + c."""
    xv = np.asarray(x, dtype=float).reshape(-1)
    if xv.shape[0] != f.n:
        raise DimensionMismatch(f"point has {xv.shape[0]} coordinates, expected {f.n}")
    return float(xv @ f.A @ xv + f.b @ xv + f.c)


def normalize(f: QuadraticPolynomial) -> QuadraticPolynomial:
    """Scale so the constant term is exactly 1 (requires c > 0)."""
    if f.c <= 0:
        raise NonPositiveConstant(
            f"constant term {f.c:.6g} must be positive for a monic representation")
    if f.c == 1.0:
        return f
    return QuadraticPolynomial(A=f.A / f.c, b=f.b / f.c, c=1.0)


def matrix_representation(f: QuadraticPolynomial) -> np.ndarray:
    """The unique symmetric (n+1)x(n+1) matrix Q with f = [1 x]^T Q [1 x]."""
    n = f.n
    q = np.zeros((n + 1, n + 1))
    q[0, 0] = f.c
    q[0, 1:] = f.b / 2.0
    q[1:, 0] = f.b / 2.0
    q[1:, 1:] = f.A
    return q


def schur_complement_11(q: np.ndarray) -> np.ndarray:
    """Schur complement of Q with respect to its (1,1) entry: A - b b^T / (4c)."""
    q = symmetrize(q)
    c = q[0, 0]
    if c == 0.0:
        raise ZeroConstantTerm("Q[0,0] is zero; Schur complement undefined")
    half_b = q[0, 1:]
    return symmetrize(q[1:, 1:] - np.outer(half_b, half_b) / c)


def is_real_zero(f: QuadraticPolynomial, tol: float = DEFAULT_TOL) -> bool:
    """True iff every restriction of f to a line through the origin has only
    real roots, i.e. 4Ac - b b^T is negative semidefinite."""
    if f.c == 0.0:
        raise ZeroConstantTerm("real-zero test requires a nonzero constant term")
    m = 4.0 * f.A * f.c - np.outer(f.b, f.b)
    return definiteness(m, tol).is_nsd


# --- JSON form --------------------------------------------------------------

def poly_to_dict(f: QuadraticPolynomial) -> dict:
    return {"n": f.n, "A": f.A.tolist(), "b": f.b.tolist(), "c": f.c}


def poly_from_dict(d: dict) -> QuadraticPolynomial:
    try:
        n = int(d["n"])
        f = QuadraticPolynomial(A=np.asarray(d["A"], dtype=float),
                                b=np.asarray(d["b"], dtype=float),
                                c=float(d["c"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(0, f"bad polynomial JSON: {exc}") from exc
    if f.n != n:
        raise ParseError(0, f"JSON says n={n} but b has length {f.n}")
    return f
