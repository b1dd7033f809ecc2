from .ode import OdeSolution, StiffnessError, integrate_ode, solve_ode
from .quadrature import QuadratureError, QuadratureResult, integrate
from .rng import RngStream, rng_stream
from .roots import Bracket, RootResult, find_root

__all__ = [
    "Bracket",
    "OdeSolution",
    "QuadratureError",
    "QuadratureResult",
    "RngStream",
    "RootResult",
    "StiffnessError",
    "find_root",
    "integrate",
    "integrate_ode",
    "rng_stream",
    "solve_ode",
]
