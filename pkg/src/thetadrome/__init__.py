"""Numerical hyperelliptic periods, theta functions, and an isomonodromic
tau function, verified identity by identity at desk scale."""

from .curves import Curve, Place, make_curve, omega_at, continue_along
from .theta import Characteristic, ThetaArg, theta, theta_deriv

__all__ = [
    "Curve", "Place", "make_curve", "omega_at", "continue_along",
    "Characteristic", "ThetaArg", "theta", "theta_deriv",
]

__version__ = "0.1.0"
