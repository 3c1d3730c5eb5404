"""Recurrence coefficients of the generalized Krawtchouk weight and their Painleve V structure."""

from .dpsystem import SingularTrajectoryError, XYState, initial_state, iterate, step, trajectory
from .moments import JacobiCoefficients, hankel_b0, stieltjes
from .numerics import EXACT, float_mode
from .weight import WeightParams, kummer_m_terminating, laguerre, potential_u, weight_at

__all__ = [
    "EXACT",
    "JacobiCoefficients",
    "SingularTrajectoryError",
    "WeightParams",
    "XYState",
    "float_mode",
    "hankel_b0",
    "initial_state",
    "iterate",
    "kummer_m_terminating",
    "laguerre",
    "potential_u",
    "step",
    "stieltjes",
    "trajectory",
    "weight_at",
]
__version__ = "0.1.0"
