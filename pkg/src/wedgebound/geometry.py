"""Scalar functions on the spherical wedge {0 <= theta <= pi/alpha, 0 <= rho < pi}.

The round metric in polar coordinates about the wedge vertex is
``ds^2 = drho^2 + sin(rho)^2 dtheta^2``. Everything here is parameterised by
``alpha > 1``; the wedge opening angle is ``pi/alpha``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import Bracket, find_root, integrate
from .specfun import DomainError

# Z and F blow up like (pi - rho)^(-2 alpha); inputs are rejected past this.
RHO_MAX = math.pi - 1e-6
# Z reaches ~1e24 near RHO_MAX, where only a relative target is meaningful
_Z_RTOL = 1e-13


@dataclass(frozen=True)
class WedgeParam:
    alpha: float

    def __post_init__(self):
        if not self.alpha > 1.0:
            raise DomainError(f"wedge parameter alpha must exceed 1, got {self.alpha}")

    @property
    def opening(self) -> float:
        """Opening angle pi/alpha of the wedge."""
        return math.pi / self.alpha


@dataclass(frozen=True)
class PolarPoint:
    rho: float
    theta: float


def _alpha(w) -> float:
    alpha = w.alpha if isinstance(w, WedgeParam) else float(w)
    if not alpha > 1.0:
        raise DomainError(f"wedge parameter alpha must exceed 1, got {alpha}")
    return alpha


def _check_rho(rho, upper=math.pi):
    arr = np.asarray(rho, dtype=float)
    if np.any(arr < 0) or np.any(arr >= upper):
        raise DomainError(f"rho must lie in [0, {upper:.9g}), got {rho}")
    return arr


def weight(rho, theta, w):
    """Harmonic weight tan^alpha(rho/2) sin(alpha theta), zero on the wedge edges."""
    alpha = _alpha(w)
    rho = _check_rho(rho)
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < 0) or np.any(theta > math.pi / alpha * (1 + 1e-12)):
        raise DomainError("theta outside [0, pi/alpha]")
    out = np.tan(rho / 2) ** alpha * np.sin(alpha * theta)
    # sin(alpha * pi/alpha) rounds to ~1e-16, not zero
    out = np.where((theta == 0) | np.isclose(theta, math.pi / alpha, rtol=0, atol=1e-15), 0.0, out)
    return float(out) if out.ndim == 0 else out


def cal_f(r, w):
    """F(r) = tan^(2 alpha)(r/2) sin r, the radial density of Z."""
    alpha = _alpha(w)
    r = _check_rho(r)
    out = np.tan(r / 2) ** (2 * alpha) * np.sin(r)
    return float(out) if out.ndim == 0 else out


def _z_closed_three_halves(r):
    return 4 * np.tan(r / 2) + np.sin(r) - 3 * r


def big_z(r, w, tol=1e-12, method="auto"):
    """Z(r) = int_0^r tan^(2 alpha)(rho/2) sin(rho) drho.

    ``method`` is ``"quad"``, ``"closed"`` (alpha = 3/2 only) or ``"auto"``
    (closed form when alpha = 3/2). Array input is integrated cumulatively
    over the sorted radii.
    """
    alpha = _alpha(w)
    r_arr = _check_rho(r, RHO_MAX + 1e-15)
    if method == "auto":
        method = "closed" if alpha == 1.5 else "quad"
    if method == "closed":
        if alpha != 1.5:
            raise DomainError("closed-form Z is only available for alpha = 3/2")
        # cancels relatively near 0 (Z ~ r^5/40) but stays accurate in absolute terms
        out = _z_closed_three_halves(r_arr)
        return float(out) if np.ndim(out) == 0 else out
    if method != "quad":
        raise ValueError(f"unknown method {method!r}")

    density = lambda rho: np.tan(rho / 2) ** (2 * alpha) * np.sin(rho)
    if r_arr.ndim == 0:
        return integrate(density, 0.0, float(r_arr), tol, rtol=_Z_RTOL).value
    flat = r_arr.ravel()
    order = np.argsort(flat)
    values = np.empty_like(flat)
    seg_tol = tol / max(len(flat), 1)
    acc = 0.0
    prev = 0.0
    for idx in order:
        cur = flat[idx]
        if cur > prev:
            acc += integrate(density, prev, cur, seg_tol, rtol=_Z_RTOL).value
            prev = cur
        values[idx] = acc
    return values.reshape(r_arr.shape)


def big_z_inverse(y, w, tol=1e-12):
    """The radius r with Z(r) = y; Z is strictly increasing from Z(0) = 0."""
    alpha = _alpha(w)
    y = float(y)
    if y < 0:
        raise DomainError(f"Z^-1 needs y >= 0, got {y}")
    if y == 0:
        return 0.0
    g = lambda r: big_z(r, alpha, tol) - y
    hi = math.pi / 2
    g_hi = g(hi)
    gap = math.pi / 2
    while g_hi < 0:
        if hi >= RHO_MAX:
            raise DomainError(f"y = {y} exceeds Z(pi - 1e-6)")
        gap /= 10
        hi = max(math.pi - gap, RHO_MAX) if gap < 1e-6 else math.pi - gap
        g_hi = g(hi)
    # Z' = F is tiny near 0 and huge near pi, so a tight x-tolerance keeps the
    # residual |Z(r) - y| well under tol everywhere
    return find_root(g, Bracket(0.0, hi, -y, g_hi), tol=min(tol, 1e-14))


def upsilon(y, w, tol=1e-12):
    """Isoperimetric profile F(Z^-1(y)): nonnegative and increasing."""
    return cal_f(big_z_inverse(y, w, tol), w)


def comparison_f(rho, w):
    """f(rho) = 2^(1/3) sin^((1+2a)/3)(rho/2) cos^((1-2a)/3)(rho/2); f^3 = F."""
    alpha = _alpha(w)
    rho = _check_rho(rho)
    out = (
        2 ** (1 / 3)
        * np.sin(rho / 2) ** ((1 + 2 * alpha) / 3)
        * np.cos(rho / 2) ** ((1 - 2 * alpha) / 3)
    )
    return float(out) if out.ndim == 0 else out


def comparison_f_product(rho, w):
    """f^2 f' in closed form: tan^(2 alpha)(rho/2) (2 alpha + cos rho)/3."""
    alpha = _alpha(w)
    rho = _check_rho(rho)
    out = np.tan(rho / 2) ** (2 * alpha) * (2 * alpha + np.cos(rho)) / 3
    return float(out) if out.ndim == 0 else out


def half_plane_map(rho, theta, w):
    """Image (x, y) = f(rho) (cos alpha theta, sin alpha theta) in the upper half plane."""
    alpha = _alpha(w)
    f = comparison_f(rho, alpha)
    return f * np.cos(alpha * theta), f * np.sin(alpha * theta)
