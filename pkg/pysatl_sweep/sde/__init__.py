from .brownian import BrownianPath, Seed, brownian_path, brownian_refine
from .euler import EulerProjectHandler, SdeSolution, euler_maruyama, euler_project
from .fields import FieldCheck, FieldPair, VectorField
from .studies import (
    MIN_PATHS,
    MONITORING_BIAS,
    MeanEstimate,
    PathwiseRow,
    StabilityReport,
    StabilityRow,
    deterministic_limit,
    pathwise_convergence,
    reflected_bm_mean,
    reflected_bm_reference,
    stability_sweep,
)

__all__ = [
    "MIN_PATHS",
    "MONITORING_BIAS",
    "BrownianPath",
    "EulerProjectHandler",
    "FieldCheck",
    "FieldPair",
    "MeanEstimate",
    "PathwiseRow",
    "SdeSolution",
    "Seed",
    "StabilityReport",
    "StabilityRow",
    "VectorField",
    "brownian_path",
    "brownian_refine",
    "deterministic_limit",
    "euler_maruyama",
    "euler_project",
    "pathwise_convergence",
    "reflected_bm_mean",
    "reflected_bm_reference",
    "stability_sweep",
]
