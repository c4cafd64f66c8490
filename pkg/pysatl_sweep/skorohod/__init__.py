from .analysis import (
    BvReport,
    HolderReport,
    RefinementRow,
    SupportViolation,
    bv_uniformity,
    halfline_reflection_oracle,
    holder_stability_check,
    refine_compare,
    support_check,
)
from .catching_up import catching_up
from .driver import Driver, Increment, Provenance
from .scheme import CatchingUpHandler, ProjectionSchemeHandler, SchemeState
from .solution import SkorohodSolution, StepRecord

__all__ = [
    "BvReport",
    "CatchingUpHandler",
    "Driver",
    "HolderReport",
    "Increment",
    "ProjectionSchemeHandler",
    "Provenance",
    "RefinementRow",
    "SchemeState",
    "SkorohodSolution",
    "StepRecord",
    "SupportViolation",
    "bv_uniformity",
    "catching_up",
    "halfline_reflection_oracle",
    "holder_stability_check",
    "refine_compare",
    "support_check",
]
