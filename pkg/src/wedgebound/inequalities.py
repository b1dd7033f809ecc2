"""Randomised numerical checks of the inequalities behind the eigenvalue bound.

* Szego's rearrangement inequality
  ``Phi(int_E psi) <= int_E phi(Psi(x)) psi(x) dx`` for nondecreasing phi.
* The weighted isoperimetric inequality
  ``int_dG w^2 ds >= (pi/2a) Upsilon((2a/pi) int_G w^2 da)``, tight on sectors.
* The pointwise conditions on the half-plane comparison map f.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numpy.polynomial import Polynomial

from .domains import StarDomain, boundary_weight_integral, moment
from .geometry import cal_f, comparison_f, comparison_f_product, upsilon
from .numerics import integrate


@dataclass(frozen=True)
class IntervalSet:
    """Finite union of disjoint half-open intervals [a_i, b_i), sorted."""

    intervals: tuple

    def __post_init__(self):
        ivs = tuple((float(a), float(b)) for a, b in self.intervals)
        for a, b in ivs:
            if not (0 <= a < b and math.isfinite(b)):
                raise ValueError(f"bad interval [{a}, {b})")
        for (_, b0), (a1, _) in zip(ivs, ivs[1:]):
            if a1 < b0:
                raise ValueError("intervals must be sorted and disjoint")
        object.__setattr__(self, "intervals", ivs)

    @property
    def measure(self) -> float:
        return sum(b - a for a, b in self.intervals)

    def symmetric_difference_from_initial(self) -> float:
        """|E delta [0, |E|]|, zero exactly when E is an initial interval."""
        m = self.measure
        overlap = sum(max(0.0, min(b, m) - a) for a, b in self.intervals)
        return 2.0 * (m - overlap)

    def is_initial_interval(self, eps: float = 1e-9) -> bool:
        return self.symmetric_difference_from_initial() < eps


@dataclass(frozen=True)
class SzegoResult:
    lhs: float
    rhs: float
    ok: bool
    equality: bool


def _primitive(g, tol):
    return lambda y: np.vectorize(lambda v: integrate(g, 0.0, v, tol).value)(y)


def check_szego(psi: Callable, phi: Callable, E: IntervalSet, tol: float = 1e-10,
                Psi: Optional[Callable] = None, Phi: Optional[Callable] = None) -> SzegoResult:
    """Evaluate both sides of Szego's inequality on the set E.

    ``Psi`` and ``Phi`` are the primitives vanishing at 0; quadrature is used
    for any that are not supplied.
    """
    Psi = Psi or _primitive(psi, tol / 100)
    Phi = Phi or _primitive(phi, tol / 100)
    quad_tol = tol / (10 * max(len(E.intervals), 1))
    mass = sum(integrate(psi, a, b, quad_tol).value for a, b in E.intervals)
    lhs = float(Phi(mass))
    integrand = lambda x: phi(Psi(x)) * psi(x)
    rhs = sum(integrate(integrand, a, b, quad_tol).value for a, b in E.intervals)
    return SzegoResult(lhs, rhs, lhs <= rhs + tol, abs(lhs - rhs) <= tol)


@dataclass(frozen=True)
class SzegoInstance:
    psi: Polynomial
    phi: Polynomial
    E: IntervalSet
    omega: float

    def run(self, tol: float = 1e-10) -> SzegoResult:
        return check_szego(self.psi, self.phi, self.E, tol, Psi=self.psi.integ(), Phi=self.phi.integ())


def random_interval_set(rng, omega: float, max_pieces: int = 5) -> IntervalSet:
    pieces = int(rng.integers(1, max_pieces + 1))
    cuts = np.sort(rng.uniform(size=2 * pieces, low=0.0, high=omega))
    return IntervalSet(tuple((cuts[2 * i], cuts[2 * i + 1]) for i in range(pieces) if cuts[2 * i] < cuts[2 * i + 1]))


def random_szego_instance(rng, omega: float = 3.0, degree: int = 3) -> SzegoInstance:
    """psi, phi with nonnegative coefficients: psi >= 0 and phi strictly increasing on [0, inf)."""
    psi = Polynomial(rng.uniform(size=degree + 1, low=0.0, high=1.0) + np.r_[0.05, np.zeros(degree)])
    phi_coef = rng.uniform(size=degree + 1, low=0.0, high=1.0)
    phi_coef[1] += 0.1
    return SzegoInstance(psi, Polynomial(phi_coef), random_interval_set(rng, omega), omega)


def isoperimetric_sides(G: StarDomain, tol: float = 1e-10):
    """(boundary moment, isoperimetric lower bound) for the domain G."""
    alpha = G.alpha
    boundary = boundary_weight_integral(G, tol)
    I = moment(G, tol).moment
    bound = math.pi / (2 * alpha) * upsilon(2 * alpha * I / math.pi, alpha, min(tol, 1e-12))
    return boundary, bound


def isoperimetric_deficit(G: StarDomain, tol: float = 1e-10) -> float:
    """Boundary moment minus its isoperimetric lower bound; zero for sectors."""
    boundary, bound = isoperimetric_sides(G, tol)
    return boundary - bound


@dataclass(frozen=True)
class DesiderataReport:
    alpha: float
    points: int
    cube_max_rel_error: float  # |f^3 - F| / F
    slack_min: float  # min over the grid of (alpha tan^2a - f^2 f') / (alpha tan^2a)
    derivative_max_rel_error: float  # closed-form f^2 f' versus finite differences
    ok: bool


def check_desiderata(alpha: float, grid: int = 1000) -> DesiderataReport:
    rho = np.linspace(0.0, math.pi, grid + 2)[1:-1]
    F = cal_f(rho, alpha)
    f = comparison_f(rho, alpha)
    cube_err = float(np.max(np.abs(f**3 - F) / F))

    product = comparison_f_product(rho, alpha)
    cap = alpha * np.tan(rho / 2) ** (2 * alpha)
    slack = float(np.min((cap - product) / cap))

    h = 1e-5 * np.minimum(rho, math.pi - rho)
    df = (comparison_f(rho + h, alpha) - comparison_f(rho - h, alpha)) / (2 * h)
    fd_err = float(np.max(np.abs(f**2 * df - product) / product))

    ok = cube_err <= 1e-10 and slack >= -1e-12 and fd_err <= 1e-6
    return DesiderataReport(alpha, grid, cube_err, slack, fd_err, ok)


def moment_inequality_ratio(alpha: float, rho, theta, d_rho, d_theta):
    """Ratio LHS/RHS of the pointwise metric comparison (should be >= 1).

    LHS = alpha^2 tan^(4a)(rho/2) sin^4(a theta) (d_rho^2 + sin^2 rho d_theta^2),
    RHS = y^4 (dx^2 + dy^2) for the half-plane image (x, y).
    """
    rho = np.asarray(rho, dtype=float)
    lhs = (
        alpha**2 * np.tan(rho / 2) ** (4 * alpha) * np.sin(alpha * theta) ** 4
        * (d_rho**2 + np.sin(rho) ** 2 * d_theta**2)
    )
    f = comparison_f(rho, alpha)
    h = 1e-6 * np.minimum(rho, math.pi - rho)
    df = (comparison_f(rho + h, alpha) - comparison_f(rho - h, alpha)) / (2 * h)
    y = f * np.sin(alpha * theta)
    rhs = y**4 * (df**2 * d_rho**2 + alpha**2 * f**2 * d_theta**2)
    return lhs / rhs


def weight_laplacian(alpha: float, rho, theta, h: float):
    """Second-difference Laplace-Beltrami of the harmonic weight.

    Delta w = (1/sin rho) d/drho (sin rho dw/drho) + (1/sin^2 rho) d^2w/dtheta^2,
    discretised with the flux form in rho; O(h^2) accurate.
    """
    w = lambda r, t: np.tan(r / 2) ** alpha * np.sin(alpha * t)
    s = np.sin(rho)
    radial = (
        np.sin(rho + h / 2) * (w(rho + h, theta) - w(rho, theta))
        - np.sin(rho - h / 2) * (w(rho, theta) - w(rho - h, theta))
    ) / (h**2 * s)
    angular = (w(rho, theta + h) - 2 * w(rho, theta) + w(rho, theta - h)) / (h**2 * s**2)
    return radial + angular
