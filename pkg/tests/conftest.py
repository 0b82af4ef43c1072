"""Shared fixtures: golden example polynomials/pencils and random generators."""

import numpy as np
import pytest

from mdrkit import QuadraticPolynomial, Size2Data, parse_polynomial

# --- golden quadratics -------------------------------------------------------

ITEM1_TEXT = "1 - 8*x1*x2 - 4*x1*x3 - 100*x2^2 - 12*x2*x3 - x3^2 - 5*x1^2"
ITEM2_TEXT = "1 + 4*x1 + 10*x2 - x1^2 - 2*x1*x2 - x2^2"
ITEM3_TEXT = "1 + 2*x1 + x1^2 - x2^2 - x3^2 - x4^2"
BALL5_TEXT = "1 - x1^2 - x2^2 - x3^2 - x4^2 - x5^2"


@pytest.fixture
def item1() -> QuadraticPolynomial:
    return parse_polynomial(ITEM1_TEXT)


@pytest.fixture
def item2() -> QuadraticPolynomial:
    return parse_polynomial(ITEM2_TEXT)


@pytest.fixture
def item3() -> QuadraticPolynomial:
    return parse_polynomial(ITEM3_TEXT)


@pytest.fixture
def ball5() -> QuadraticPolynomial:
    return parse_polynomial(BALL5_TEXT)


def item1_published_pencil() -> Size2Data:
    """Displayed symmetric size-2 pencil for the dense rank-2 example."""
    return Size2Data(r=np.array([11 / 5, 0.0, 4 / 5]),
                     s=np.array([-11 / 5, 0.0, -4 / 5]),
                     t=np.array([2 / 5, 10.0, 3 / 5]),
                     u=np.zeros(3))


def item3_published_pencil() -> Size2Data:
    """Displayed Hermitian pencil (I, sigma_y, sigma_x, sigma_z) for the
    shifted hyperbolic example."""
    return Size2Data(r=np.array([1.0, 0.0, 0.0, 1.0]),
                     s=np.array([1.0, 0.0, 0.0, -1.0]),
                     t=np.array([0.0, 0.0, 1.0, 0.0]),
                     u=np.array([0.0, 1.0, 0.0, 0.0]))


def item3_swapped_pencil() -> Size2Data:
    """Same with the two off-diagonal factor rows swapped (the other class)."""
    base = item3_published_pencil()
    return Size2Data(r=base.r, s=base.s, t=base.u, u=base.t)


# --- random instance generators ----------------------------------------------

def random_size2_data(rng: np.random.Generator, n: int,
                      symmetric: bool = False) -> Size2Data:
    r = rng.normal(size=n)
    s = rng.normal(size=n)
    t = rng.normal(size=n)
    u = np.zeros(n) if symmetric else rng.normal(size=n)
    return Size2Data(r=r, s=s, t=t, u=u)


def polynomial_of_size2(d: Size2Data) -> QuadraticPolynomial:
    """Expand det(I + sum x_j A_j) for a size-2 pencil through the closed
    form (1 + r.x)(1 + s.x) - (t.x)^2 - (u.x)^2."""
    A = (np.outer(d.r, d.s) + np.outer(d.s, d.r)) / 2.0 \
        - np.outer(d.t, d.t) - np.outer(d.u, d.u)
    return QuadraticPolynomial(A=A, b=d.r + d.s, c=1.0)


def random_nsd_polynomial(rng: np.random.Generator, n: int,
                          rank: int) -> QuadraticPolynomial:
    """Quadratic with A = -G^T G of the requested rank and random b."""
    g = rng.normal(size=(rank, n))
    return QuadraticPolynomial(A=-(g.T @ g), b=rng.normal(size=n), c=1.0)


# --- acceptance summary ------------------------------------------------------

def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance" in rep.nodeid and rep.when == "call":
                rows.append((rep.nodeid.split("::")[-1], outcome))
    if rows:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, outcome in sorted(rows):
            mark = "PASS" if outcome == "passed" else "FAIL"
            terminalreporter.write_line(f"{mark}  {name}")
