"""Seeded verification suites driving the inequality lab and the eigensolver.

Each suite returns a :class:`SuiteResult` with one detail row per check; trial
``i`` of seed ``s`` always draws from substream ``i`` of ``s``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bound import oracle_agreement
from .domains import random_star_domain, sector
from .eigensolver import verify_theorem
from .geometry import big_z
from .inequalities import (
    check_desiderata,
    check_szego,
    isoperimetric_sides,
    random_interval_set,
    random_szego_instance,
)
from .numerics import RngStream

SUITES = ("szego", "isoperimetric", "theorem", "desiderata", "oracles")
ISOPERIMETRIC_TOL = 1e-8
ORACLE_TOL = 1e-7
DESIDERATA_ALPHAS = (1.01, 1.5, 2.0, 5.0)
EQUALITY_SECTORS = (0.8, 1.2, math.pi / 2, 2.0, 2.6)


@dataclass
class SuiteResult:
    name: str
    rows: list = field(default_factory=list)  # dicts, each with an "ok" key and an "id"

    @property
    def failures(self) -> list:
        return [r["id"] for r in self.rows if not r["ok"]]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "suite": self.name,
            "checks": len(self.rows),
            "passed": len(self.rows) - len(self.failures),
            "failed": len(self.failures),
            "failing": " ".join(str(f) for f in self.failures),
        }


def _psi_tetra(x):
    return np.tan(np.asarray(x) / 2) ** 3 * np.sin(x)


def szego_suite(seed: int = 0, trials: int = 100, tol: float = 1e-10) -> SuiteResult:
    """Random polynomial instances plus the weight-shaped pair psi = F, phi = cube root."""
    res = SuiteResult("szego")
    root = RngStream(seed)
    Phi = lambda y: 0.75 * np.cbrt(y) ** 4
    for i in range(trials):
        rng = root.substream(i)
        inst = random_szego_instance(rng)
        poly = inst.run(tol)
        E = random_interval_set(rng, 3.0)
        shaped = check_szego(_psi_tetra, np.cbrt, E, tol, Psi=lambda x: big_z(x, 1.5), Phi=Phi)
        res.rows.append({
            "id": f"{seed}:{i}",
            "poly_lhs": poly.lhs, "poly_rhs": poly.rhs,
            "shaped_lhs": shaped.lhs, "shaped_rhs": shaped.rhs,
            "initial_interval": E.is_initial_interval(),
            "ok": poly.ok and shaped.ok,
        })
    return res


def isoperimetric_suite(seed: int = 0, trials: int = 100, tol: float = 1e-10) -> SuiteResult:
    """Deficit >= -1e-8 (relative to the boundary moment) on random domains; ~0 on sectors."""
    res = SuiteResult("isoperimetric")
    for r in (0.8, math.pi / 2, 2.0):
        for alpha in (1.5, 2.0):
            boundary, bound = isoperimetric_sides(sector(r, alpha), tol)
            scale = max(1.0, boundary)
            res.rows.append({
                "id": f"S({r:.6g}),a={alpha:g}", "alpha": alpha, "boundary": boundary,
                "bound": bound, "deficit": boundary - bound,
                "ok": abs(boundary - bound) <= ISOPERIMETRIC_TOL * scale,
            })
    root = RngStream(seed)
    for i in range(trials):
        alpha = (1.5, 2.0, 2.5, 3.0)[i % 4]
        G = random_star_domain(root.substream(i), alpha)
        boundary, bound = isoperimetric_sides(G, tol)
        res.rows.append({
            "id": f"{seed}:{i}", "alpha": alpha, "boundary": boundary, "bound": bound,
            "deficit": boundary - bound,
            "ok": boundary - bound >= -ISOPERIMETRIC_TOL * max(1.0, boundary),
        })
    return res


def theorem_suite(seed: int = 0, trials: int = 20, n: int = 48) -> SuiteResult:
    """Finite-element lambda_1 against the bound on random domains and sectors."""
    res = SuiteResult("theorem")
    root = RngStream(seed)
    for i in range(trials):
        check = verify_theorem(random_star_domain(root.substream(i), 1.5), n)
        res.rows.append({
            "id": f"{seed}:{i}", "lambda1": check.lambda1_numeric, "lambda_star": check.lambda_star,
            "margin": check.margin, "error": check.error_estimate, "ok": not check.violation,
        })
    for r in EQUALITY_SECTORS:
        check = verify_theorem(sector(r, 1.5), n)
        res.rows.append({
            "id": f"S({r:.6g})", "lambda1": check.lambda1_numeric, "lambda_star": check.lambda_star,
            "margin": check.margin, "error": check.error_estimate,
            "ok": abs(check.margin) <= 1.5 * check.error_estimate,
        })
    return res


def desiderata_suite(grid: int = 1000) -> SuiteResult:
    res = SuiteResult("desiderata")
    for alpha in DESIDERATA_ALPHAS:
        rep = check_desiderata(alpha, grid)
        res.rows.append({
            "id": f"a={alpha:g}", "cube_error": rep.cube_max_rel_error, "slack": rep.slack_min,
            "fd_error": rep.derivative_max_rel_error, "ok": rep.ok,
        })
    return res


def oracles_suite() -> SuiteResult:
    res = SuiteResult("oracles")
    for r, alpha, hyp, ode, diff in oracle_agreement():
        res.rows.append({
            "id": f"r={r:g},a={alpha:g}", "lambda_hyp": hyp, "lambda_ode": ode,
            "difference": diff, "ok": diff <= ORACLE_TOL,
        })
    return res


def run_suite(name: str, seed: int = 0, trials=None) -> SuiteResult:
    if name == "szego":
        return szego_suite(seed, 100 if trials is None else trials)
    if name == "isoperimetric":
        return isoperimetric_suite(seed, 100 if trials is None else trials)
    if name == "theorem":
        return theorem_suite(seed, 20 if trials is None else trials)
    if name == "desiderata":
        return desiderata_suite()
    if name == "oracles":
        return oracles_suite()
    raise ValueError(f"unknown suite {name!r}")
