from .errors import (
    AdmissibilityError,
    ConfigurationError,
    ConvergenceError,
    GeometricDegeneracyError,
    InfeasiblePolyhedronError,
    InvalidSetError,
    ReverseTriangleError,
    SolverError,
    StepTooLargeError,
    SweepError,
)
from .grid import TimeGrid
from .handler import Handler, Pipeline, T, U, V
from .tolerances import DEFAULT_TOLERANCES, Tolerances
from .types import FloatArray, as_point

__all__ = [
    "DEFAULT_TOLERANCES",
    "AdmissibilityError",
    "ConfigurationError",
    "ConvergenceError",
    "FloatArray",
    "GeometricDegeneracyError",
    "Handler",
    "InfeasiblePolyhedronError",
    "InvalidSetError",
    "Pipeline",
    "ReverseTriangleError",
    "SolverError",
    "StepTooLargeError",
    "SweepError",
    "T",
    "TimeGrid",
    "Tolerances",
    "U",
    "V",
    "as_point",
]
