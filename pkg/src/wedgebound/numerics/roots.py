"""Bracketed scalar root finding (Brent's safeguarded hybrid)."""

from __future__ import annotations

import math
from dataclasses import dataclass

_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")
        if self.f_lo * self.f_hi > 0:
            raise ValueError(
                f"no sign change on [{self.lo}, {self.hi}]: "
                f"f = {self.f_lo:.3g}, {self.f_hi:.3g}"
            )

    @classmethod
    def around(cls, f, lo, hi):
        return cls(lo, hi, float(f(lo)), float(f(hi)))


@dataclass(frozen=True)
class RootResult:
    root: float
    f_root: float
    lo: float
    hi: float
    iterations: int


def find_root(f, bracket, tol=1e-12, *, maxiter=500, full_output=False):
    """Locate a sign change of ``f`` inside ``bracket``.

    ``bracket`` is a :class:`Bracket` or a ``(lo, hi)`` pair. Combines inverse
    quadratic interpolation, secant steps and bisection; the bracket always
    shrinks so termination is guaranteed. The returned point has the smallest
    ``|f|`` of the final bracket ends, and the final bracket is no wider than
    ``tol`` (plus a few ulps).
    """
    if not isinstance(bracket, Bracket):
        bracket = Bracket.around(f, *bracket)
    a, b = bracket.lo, bracket.hi
    fa, fb = bracket.f_lo, bracket.f_hi

    def done(root, froot, lo, hi, it):
        if full_output:
            return RootResult(root, froot, min(lo, hi), max(lo, hi), it)
        return root

    if fa == 0.0:
        return done(a, fa, a, a, 0)
    if fb == 0.0:
        return done(b, fb, b, b, 0)

    c, fc = a, fa
    d = e = b - a
    for it in range(1, maxiter + 1):
        if fb * fc > 0:
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2.0 * _EPS * abs(b) + 0.5 * tol
        xm = 0.5 * (c - b)
        if abs(xm) <= tol1 or fb == 0.0:
            return done(b, fb, b, c, it)
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * xm * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            p = abs(p)
            if 2.0 * p < min(3.0 * xm * q - abs(tol1 * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = xm
        else:
            d = e = xm
        a, fa = b, fb
        b += d if abs(d) > tol1 else math.copysign(tol1, xm)
        fb = float(f(b))
    return done(b, fb, b, c, maxiter)
