"""Star-shaped domains in the wedge, described by a radius function r(theta).

A domain is ``{(rho, theta): 0 <= theta <= pi/alpha, 0 <= rho <= r(theta)}``.
Besides truncated sectors this module provides the tetrahedral face T
(vertex angle 2 pi/3, so alpha = 3/2), its quadrature-free majorant, randomly
generated smooth domains, and CSV-backed sampled radius tables.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import PchipInterpolator

from .geometry import RHO_MAX, WedgeParam, big_z, big_z_inverse, cal_f
from .numerics import integrate
from .specfun import DomainError

EDGE_LENGTH = math.acos(-1 / 3)  # epsilon: vertex-to-vertex distance of T
DIAMETER = math.acos(-1 / math.sqrt(3))  # delta: vertex to opposite edge midpoint


class IngestionError(ValueError):
    """A radius table could not be read."""


@dataclass(frozen=True)
class StarDomain:
    wedge: WedgeParam
    radius: Callable[[np.ndarray], np.ndarray]
    label: str
    dradius: Optional[Callable[[np.ndarray], np.ndarray]] = None
    kind: str = "custom"
    breakpoints: tuple = ()
    params: dict = field(default_factory=dict, compare=False)

    @property
    def alpha(self) -> float:
        return self.wedge.alpha

    @property
    def opening(self) -> float:
        return self.wedge.opening

    def r(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = np.asarray(self.radius(theta), dtype=float)
        if out.shape != theta.shape:
            out = np.broadcast_to(out, theta.shape).copy()
        return float(out) if out.ndim == 0 else out

    def dr(self, theta):
        theta = np.asarray(theta, dtype=float)
        if self.dradius is not None:
            out = np.asarray(self.dradius(theta), dtype=float)
            if out.shape != theta.shape:
                out = np.broadcast_to(out, theta.shape).copy()
        else:
            h = 1e-5
            lo = np.clip(theta - h, 0.0, self.opening)
            hi = np.clip(theta + h, 0.0, self.opening)
            out = (np.asarray(self.r(hi)) - np.asarray(self.r(lo))) / (hi - lo)
        return float(out) if out.ndim == 0 else out

    def validate(self, samples: int = 513):
        theta = np.linspace(0.0, self.opening, samples)
        r = np.asarray(self.r(theta))
        if not np.all(np.isfinite(r)) or np.any(r < 0) or np.any(r >= math.pi):
            raise DomainError(f"{self.label}: radius leaves [0, pi)")
        return self


@dataclass(frozen=True)
class MomentReport:
    moment: float
    tol: float
    evaluations: int
    error_estimate: float = 0.0


def sector(r: float, alpha: float) -> StarDomain:
    """Truncated sector S(r) of the wedge with parameter ``alpha``."""
    wedge = WedgeParam(alpha)
    if not 0 <= r < math.pi:
        raise DomainError(f"sector radius must lie in [0, pi), got {r}")
    r = float(r)
    return StarDomain(
        wedge,
        lambda theta: np.full(np.shape(theta), r),
        label=f"S({r:.8g})",
        dradius=lambda theta: np.zeros(np.shape(theta)),
        kind="sector",
        params={"r": r},
    )


def tetra_radius(theta):
    return math.pi / 2 + np.arctan(np.cos(np.asarray(theta) - math.pi / 3) / math.sqrt(2))


def tetra_dradius(theta):
    u = np.asarray(theta) - math.pi / 3
    return -np.sin(u) / math.sqrt(2) / (1 + np.cos(u) ** 2 / 2)


def tetra_triangle() -> StarDomain:
    """Face of the regular tetrahedral tessellation, seen from one vertex."""
    return StarDomain(
        WedgeParam(1.5), tetra_radius, label="T", dradius=tetra_dradius,
        kind="tetra", breakpoints=(math.pi / 3,),
    )


@dataclass(frozen=True)
class HatTetra:
    """The majorant domain with Z(r_hat(theta)) = A1 + A2 cos(theta - pi/3) + A3 (1 - cos 6 theta)."""

    domain: StarDomain
    a1: float
    a2: float
    a3: float
    curvature: float  # matched second derivative of Z(r(theta)) at pi/3

    def profile(self, theta):
        theta = np.asarray(theta, dtype=float)
        return (
            self.a1
            + self.a2 * np.cos(theta - math.pi / 3)
            + self.a3 * (1 - np.cos(6 * theta))
        )

    def profile_derivative(self, theta):
        theta = np.asarray(theta, dtype=float)
        return -self.a2 * np.sin(theta - math.pi / 3) + 6 * self.a3 * np.sin(6 * theta)

    @property
    def closed_form_moment(self) -> float:
        """int_0^{2pi/3} T(theta) sin^2(3 theta / 2) dtheta, term by term."""
        return math.pi / 3 * self.a1 + 9 * math.sqrt(3) / 16 * self.a2 + math.pi / 3 * self.a3


def _richardson_second_derivative(g, x, h):
    d = lambda s: (g(x + s) - 2 * g(x) + g(x - s)) / s**2
    return (4 * d(h / 2) - d(h)) / 3


def hat_tetra(tol: float = 1e-12) -> HatTetra:
    """Solve the 3x3 matching system for the majorant of T.

    The profile matches Z(r(theta)) at theta = 0 and theta = pi/3, and its
    second derivative matches there too at pi/3.
    """
    alpha = 1.5
    g = lambda theta: big_z(tetra_radius(theta), alpha, tol)
    curvature = _richardson_second_derivative(g, math.pi / 3, 1e-3)
    # rows: T(0), T(pi/3), T''(pi/3) for unknowns (A1, A2, A3)
    system = np.array([
        [1.0, 0.5, 0.0],
        [1.0, 1.0, 0.0],
        [0.0, -1.0, 36.0],
    ])
    rhs = np.array([g(0.0), g(math.pi / 3), curvature])
    a1, a2, a3 = np.linalg.solve(system, rhs)

    partial = HatTetra(None, a1, a2, a3, curvature)

    def radius(theta):
        vals = np.atleast_1d(partial.profile(theta))
        out = np.array([big_z_inverse(v, alpha, tol) for v in vals.ravel()])
        out = out.reshape(vals.shape)
        return out if np.ndim(theta) else float(out[0])

    def dradius(theta):
        return partial.profile_derivative(theta) / cal_f(radius(theta), alpha)

    domain = StarDomain(
        WedgeParam(alpha), radius, label="hatT", dradius=dradius,
        kind="hat_tetra", breakpoints=(math.pi / 3,),
        params={"A1": a1, "A2": a2, "A3": a3},
    )
    return HatTetra(domain, a1, a2, a3, curvature)


def fourier_domain(alpha: float, coeffs, lo: float = 0.3, hi: float = 2.9, label=None) -> StarDomain:
    """r(theta) = clamp(c0 + sum_k c_k cos(k alpha theta), lo, hi)."""
    coeffs = np.asarray(coeffs, dtype=float)
    k = np.arange(1, len(coeffs))
    wedge = WedgeParam(alpha)

    def raw(theta):
        theta = np.asarray(theta, dtype=float)
        return coeffs[0] + np.cos(np.multiply.outer(theta, k * alpha)) @ coeffs[1:]

    def radius(theta):
        return np.clip(raw(theta), lo, hi)

    def dradius(theta):
        theta = np.asarray(theta, dtype=float)
        d = -np.sin(np.multiply.outer(theta, k * alpha)) @ (coeffs[1:] * k * alpha)
        inside = (raw(theta) > lo) & (raw(theta) < hi)
        return np.where(inside, d, 0.0)

    return StarDomain(
        wedge, radius, label=label or "fourier", dradius=dradius, kind="fourier",
        params={"coeffs": coeffs.tolist()},
    )


def random_star_domain(rng, alpha: float, modes: int = 4, lo: float = 0.5, hi: float = 2.8) -> StarDomain:
    """A smooth random domain whose radius stays within [lo, hi].

    The mean radius is drawn first and the cosine amplitudes are scaled so the
    clamp in :func:`fourier_domain` never engages, keeping r smooth.
    """
    c0 = rng.uniform(low=lo + 0.2, high=hi - 0.2)
    room = min(c0 - lo, hi - c0)
    raw = rng.uniform(size=modes, low=-1.0, high=1.0) / np.arange(1, modes + 1)
    scale = rng.uniform(low=0.2, high=0.95) * room / np.sum(np.abs(raw))
    coeffs = np.concatenate([[c0], raw * scale])
    return fourier_domain(alpha, coeffs, lo=0.3, hi=2.9, label="random")


def table_domain(theta, r, alpha: float, label: str = "table") -> StarDomain:
    theta = np.asarray(theta, dtype=float)
    r = np.asarray(r, dtype=float)
    interp = PchipInterpolator(theta, r, extrapolate=True)
    deriv = interp.derivative()
    wedge = WedgeParam(alpha)
    top = wedge.opening
    clip = lambda t: np.clip(t, 0.0, top)
    return StarDomain(
        wedge, lambda t: interp(clip(t)), label=label, dradius=lambda t: deriv(clip(t)),
        kind="table", breakpoints=tuple(theta[1:-1]),
        params={"samples": len(theta)},
    )


def load_radius_csv(path, alpha: Optional[float] = None) -> StarDomain:
    """Read a ``theta,r`` table and interpolate it with a monotone cubic.

    The header line is optional. When ``alpha`` is omitted it is inferred
    from the last angle, which must then equal pi/alpha.
    """
    thetas, radii = [], []
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            if lineno == 1 and [c.strip().lower() for c in row] == ["theta", "r"]:
                continue
            if len(row) != 2:
                raise IngestionError(f"{path}:{lineno}: expected 2 columns, got {len(row)}")
            try:
                t, r = float(row[0]), float(row[1])
            except ValueError as exc:
                raise IngestionError(f"{path}:{lineno}: {exc}") from None
            if not (math.isfinite(t) and math.isfinite(r)):
                raise IngestionError(f"{path}:{lineno}: non-finite value")
            if not 0 <= r < math.pi:
                raise IngestionError(f"{path}:{lineno}: r = {r} outside [0, pi)")
            if thetas and t <= thetas[-1]:
                raise IngestionError(f"{path}:{lineno}: theta not strictly increasing")
            thetas.append(t)
            radii.append(r)
    if len(thetas) < 2:
        raise IngestionError(f"{path}: need at least two samples")
    if alpha is None:
        alpha = math.pi / thetas[-1]
    if abs(thetas[0]) > 1e-9 or abs(thetas[-1] - math.pi / alpha) > 1e-9:
        raise IngestionError(
            f"{path}: samples must span [0, pi/alpha] = [0, {math.pi / alpha:.10g}]"
        )
    thetas[0], thetas[-1] = 0.0, math.pi / alpha
    return table_domain(thetas, radii, alpha, label=f"file:{path}")


def moment(G: StarDomain, tol: float = 1e-10) -> MomentReport:
    """I(G) = int_G w^2 da = int_0^{pi/alpha} Z(r(theta)) sin^2(alpha theta) dtheta."""
    alpha = G.alpha
    inner_tol = tol / 10

    def integrand(theta):
        r = np.asarray(G.r(theta))
        if np.any(r > RHO_MAX):
            raise DomainError(f"{G.label}: radius too close to pi")
        return big_z(r, alpha, inner_tol) * np.sin(alpha * theta) ** 2

    res = integrate(integrand, 0.0, G.opening, tol, points=G.breakpoints)
    return MomentReport(res.value, tol, res.evaluations, res.error_estimate)


def boundary_weight_integral(G: StarDomain, tol: float = 1e-10) -> float:
    """int over the curved boundary of w^2 ds; radial edges carry w = 0."""
    alpha = G.alpha

    def integrand(theta):
        r = np.asarray(G.r(theta))
        dr = np.asarray(G.dr(theta))
        w2 = np.tan(r / 2) ** (2 * alpha) * np.sin(alpha * theta) ** 2
        return w2 * np.sqrt(dr**2 + np.sin(r) ** 2)

    return integrate(integrand, 0.0, G.opening, tol, points=G.breakpoints).value
