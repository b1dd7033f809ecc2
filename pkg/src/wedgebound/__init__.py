"""Lower bounds for the first Dirichlet eigenvalue of domains in a spherical wedge.

A domain G inside the wedge ``{0 <= theta <= pi/alpha}`` of the unit sphere is
compared with the truncated sector carrying the same weighted moment; the
sector's eigenvalue bounds lambda_1(G) from below.
"""

from .bound import (
    BoundReport,
    check_capture_threshold,
    decay_exponent_3d,
    equalizing_radius,
    payne_weinberger_bound,
    shoot_lambda_hyp,
    shoot_lambda_ode,
)
from .domains import StarDomain, hat_tetra, load_radius_csv, moment, sector, tetra_triangle
from .eigensolver import assemble, lambda1_direct, verify_theorem
from .geometry import WedgeParam, big_z, big_z_inverse, upsilon
from .specfun import hyp2f1

__all__ = [
    "BoundReport",
    "StarDomain",
    "WedgeParam",
    "assemble",
    "big_z",
    "big_z_inverse",
    "check_capture_threshold",
    "decay_exponent_3d",
    "equalizing_radius",
    "hat_tetra",
    "hyp2f1",
    "lambda1_direct",
    "load_radius_csv",
    "moment",
    "payne_weinberger_bound",
    "sector",
    "shoot_lambda_hyp",
    "shoot_lambda_ode",
    "tetra_triangle",
    "upsilon",
    "verify_theorem",
]
