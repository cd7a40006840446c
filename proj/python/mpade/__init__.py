"""Multipoint Pade approximants and L2 critical points of Markov functions on several intervals."""

from ._mpade import (
    Model,
    NumericalError,
    RationalApproximant,
    ValidationError,
    run_scenario,
    theta,
    verify,
)

__all__ = [
    "Model",
    "NumericalError",
    "RationalApproximant",
    "ValidationError",
    "run_scenario",
    "theta",
    "verify",
]
__version__ = "0.1.0"
