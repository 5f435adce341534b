"""Generalized Toom-Cook multiplication with arbitrary integer evaluation points."""

from .multiplier import NonIntegralResult, problem_size, sign_combine, toomk
from .params import ConfigError, ToomConfig, subproblem_bound, validate

__all__ = [
    "ConfigError",
    "NonIntegralResult",
    "ToomConfig",
    "problem_size",
    "sign_combine",
    "subproblem_bound",
    "toomk",
    "validate",
]
__version__ = "0.1.0"
