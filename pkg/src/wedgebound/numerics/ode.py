"""Adaptive Dormand-Prince 5(4) integration for small non-stiff systems."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
)
_B = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84)
# difference between the 5th-order weights and the embedded 4th-order ones
_E = (
    71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40,
)


class StiffnessError(RuntimeError):
    """Step size fell below the representable resolution of ``t``."""


@dataclass
class OdeSolution:
    t: np.ndarray
    y: np.ndarray
    steps: int
    rejected: int
    evaluations: int


def solve_ode(rhs, t0, t1, y0, tol=1e-10, *, first_step=None, max_steps=1_000_000):
    """Integrate ``y' = rhs(t, y)`` from ``t0`` to ``t1`` and keep every step.

    Error control is mixed absolute/relative with the same ``tol`` for both.
    Returns an :class:`OdeSolution` holding the accepted mesh and states.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    y = np.array(y0, dtype=float, ndmin=1)
    t = float(t0)
    t1 = float(t1)
    ts = [t]
    ys = [y.copy()]
    if t1 == t:
        return OdeSolution(np.array(ts), np.array(ys), 0, 0, 0)
    direction = 1.0 if t1 > t else -1.0
    span = abs(t1 - t)

    k1 = np.asarray(rhs(t, y), dtype=float)
    nfev = 1
    if first_step is None:
        scale = tol + tol * np.abs(y)
        d0 = np.sqrt(np.mean((y / scale) ** 2))
        d1 = np.sqrt(np.mean((k1 / scale) ** 2))
        h = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
        h = min(h, span)
    else:
        h = min(abs(first_step), span)

    steps = rejected = 0
    while direction * (t1 - t) > 0:
        if steps + rejected >= max_steps:
            raise RuntimeError(f"step budget {max_steps} exhausted at t={t}")
        if h < 16 * np.spacing(abs(t)) + 1e-300:
            raise StiffnessError(f"step size underflow at t={t} (h={h:.3g})")
        last = h >= abs(t1 - t)
        if last:
            h = abs(t1 - t)
        hs = direction * h
        k = [k1]
        for stage in range(1, 6):
            incr = sum(a * kj for a, kj in zip(_A[stage], k))
            k.append(np.asarray(rhs(t + _C[stage] * hs, y + hs * incr), dtype=float))
        y_new = y + hs * sum(b * kj for b, kj in zip(_B, k) if b)
        k7 = np.asarray(rhs(t + hs, y_new), dtype=float)
        nfev += 6
        k.append(k7)
        err_vec = hs * sum(e * kj for e, kj in zip(_E, k) if e)
        scale = tol + tol * np.maximum(np.abs(y), np.abs(y_new))
        err = float(np.sqrt(np.mean((err_vec / scale) ** 2)))

        if err <= 1.0:
            t = t1 if last else t + hs
            y = y_new
            k1 = k7
            steps += 1
            ts.append(t)
            ys.append(y.copy())
            factor = 5.0 if err == 0 else min(5.0, 0.9 * err ** -0.2)
        else:
            rejected += 1
            factor = max(0.2, 0.9 * err ** -0.2)
        h *= factor

    return OdeSolution(np.array(ts), np.array(ys), steps, rejected, nfev)


def integrate_ode(rhs, t0, t1, y0, tol=1e-10, **kwargs):
    """State at ``t1`` of ``y' = rhs(t, y)``, ``y(t0) = y0``."""
    return solve_ode(rhs, t0, t1, y0, tol, **kwargs).y[-1]
