"""Gauss hypergeometric function on real parameters, 0 <= x <= 1."""

from __future__ import annotations

import math
from dataclasses import dataclass

TERM_BUDGET = 100_000
GAUSS_SWITCH = 0.05


class DomainError(ValueError):
    """Arguments outside the supported parameter region."""


class SeriesDivergenceError(ArithmeticError):
    """The series did not meet its tolerance within the term budget."""

    def __init__(self, message, partial_sum, terms):
        super().__init__(message)
        self.partial_sum = partial_sum
        self.terms = terms


@dataclass(frozen=True)
class Hyp2F1Args:
    a: float
    b: float
    c: float
    x: float

    def __post_init__(self):
        if not self.c > 0:
            raise DomainError(f"c must be positive, got {self.c}")
        if not 0.0 <= self.x <= 1.0:
            raise DomainError(f"x must lie in [0, 1], got {self.x}")
        if self.x == 1.0 and not self.c - self.a - self.b > 0:
            raise DomainError("x = 1 requires c - a - b > 0")

    @property
    def excess(self) -> float:
        """c - a - b, the exponent governing behaviour at x = 1."""
        return self.c - self.a - self.b


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms: int
    method: str


def log_gamma(z: float) -> float:
    """ln Gamma(z) for z > 0."""
    if not z > 0:
        raise DomainError(f"log_gamma needs z > 0, got {z}")
    return math.lgamma(z)


def rgamma(z: float) -> float:
    """1/Gamma(z); continuous through the poles of Gamma, where it vanishes."""
    if z > 0:
        return math.exp(-log_gamma(z))
    if z == math.floor(z):
        return 0.0
    # reflection: 1/Gamma(z) = sin(pi z) Gamma(1 - z) / pi
    return math.sin(math.pi * z) / math.pi * math.exp(log_gamma(1.0 - z))


def _series(a, b, c, x, tol):
    """Sum sum_k (a)_k (b)_k / ((c)_k k!) x^k by term-ratio recurrence."""
    total = 1.0
    term = 1.0
    tol = tol / 8.0  # headroom for rounding in the partial sums
    settle = max(0.0, -a, -b, -c) + 2.0
    for k in range(TERM_BUDGET):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x
        total += term
        n = k + 1
        if term == 0.0:
            return total, n
        if n < settle:
            continue
        if x < 1.0:
            ratio = abs((a + n) * (b + n) / ((c + n) * (n + 1.0))) * x
            q = max(ratio, x)
            if q < 1.0 and abs(term) * q / (1.0 - q) <= tol:
                return total, n
        else:
            # terms decay like n^-(s+1); the tail is about n |term| / s
            s = c - a - b
            if abs(term) * (n + 1.0) / s <= tol:
                return total, n
    raise SeriesDivergenceError(
        f"2F1({a}, {b}; {c}; {x}) not converged in {TERM_BUDGET} terms",
        total, TERM_BUDGET,
    )


def _gauss_sum(a, b, c):
    s = c - a - b
    return math.exp(log_gamma(c) + log_gamma(s)) * rgamma(c - a) * rgamma(c - b)


def hyp2f1_series(args: Hyp2F1Args, tol: float = 1e-12, method: str = "auto") -> SeriesResult:
    """Evaluate 2F1 with diagnostics.

    ``method`` is ``"auto"``, ``"direct"`` (plain series), ``"euler"``
    (series after the Euler transformation) or ``"gauss"`` (closed-form value
    at x = 1). ``"auto"`` uses the direct series for x <= 1/2, the Euler
    form for 1/2 < x < 1, the direct series at x = 1 when c - a - b is large
    and Gauss's summation otherwise.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    a, b, c, x = args.a, args.b, args.c, args.x
    if x == 0.0:
        return SeriesResult(1.0, 0, "direct")

    if method == "auto":
        if x == 1.0:
            # the x = 1 series needs ~ (1/tol)^(1/s) terms
            s = args.excess
            method = "direct" if s > GAUSS_SWITCH and tol ** (-1.0 / s) < TERM_BUDGET / 10 else "gauss"
        else:
            method = "direct" if x <= 0.5 else "euler"

    if method == "gauss":
        if x != 1.0:
            raise DomainError("Gauss summation applies only at x = 1")
        return SeriesResult(_gauss_sum(a, b, c), 0, "gauss")
    if method == "direct":
        value, n = _series(a, b, c, x, tol)
        return SeriesResult(value, n, "direct")
    if method == "euler":
        if x == 1.0:
            raise DomainError("the Euler transformation is singular at x = 1")
        s = args.excess
        prefactor = (1.0 - x) ** s
        value, n = _series(c - a, c - b, c, x, tol / max(prefactor, 1e-300))
        return SeriesResult(prefactor * value, n, "euler")
    raise ValueError(f"unknown method {method!r}")


def hyp2f1(a: float, b: float, c: float, x: float, tol: float = 1e-12, method: str = "auto") -> float:
    """Gauss's hypergeometric function 2F1(a, b; c; x) for real parameters.

    >>> round(hyp2f1(1.0, 1.0, 2.0, 0.5), 10)
    1.3862943611
    """
    return hyp2f1_series(Hyp2F1Args(a, b, c, x), tol, method).value
