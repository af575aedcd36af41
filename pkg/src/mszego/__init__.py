"""Multiple Szego curves and planar orthogonal-polynomial asymptotics.

Public surface: configuration handling (:mod:`mszego.core`), the level
solver and curve tracer (:mod:`mszego.szego`), branch-cut calculus
(:mod:`mszego.branches`), the truncated-exponential special function
(:mod:`mszego.specfun`), the strong-asymptotics evaluators
(:mod:`mszego.asym`), the exact moment-matrix oracle
(:mod:`mszego.oracle`), and the command-line interface
(:mod:`mszego.cli`).
"""

__version__ = "0.1.0"

from .core import Configuration, config_from_json, validate_config
from .szego import solve_structure, trace_curve
from .asym import build_model

__all__ = [
    "__version__",
    "Configuration",
    "config_from_json",
    "validate_config",
    "solve_structure",
    "trace_curve",
    "build_model",
]
