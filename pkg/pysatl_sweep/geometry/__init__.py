from .abstract import MovingSet
from .checks import (
    GoodDirection,
    VariationSample,
    Violation,
    active_constraints,
    gamma_estimate,
    good_direction,
    hausdorff_estimate,
    hypomonotonicity_check,
    lipschitz_variation_bound,
    proximal_normal_test,
    set_variation_check,
)
from .constraint_set import ConstraintSet
from .constraints import (
    ActiveSet,
    AffineConstraint,
    DiskContactConstraint,
    RadiusSchedule,
    SmoothConstraint,
    WallDistanceConstraint,
)
from .dilated import DilatedSet, dilate
from .projections import project_ball_exterior, project_halfspace
from .sets import BallExterior, BallExteriorUnion, Halfspace, WholeSpace
from .window import Window

__all__ = [
    "ActiveSet",
    "AffineConstraint",
    "BallExterior",
    "BallExteriorUnion",
    "ConstraintSet",
    "DilatedSet",
    "DiskContactConstraint",
    "GoodDirection",
    "Halfspace",
    "MovingSet",
    "RadiusSchedule",
    "SmoothConstraint",
    "VariationSample",
    "Violation",
    "WallDistanceConstraint",
    "WholeSpace",
    "Window",
    "active_constraints",
    "dilate",
    "gamma_estimate",
    "good_direction",
    "hausdorff_estimate",
    "hypomonotonicity_check",
    "lipschitz_variation_bound",
    "project_ball_exterior",
    "project_halfspace",
    "proximal_normal_test",
    "set_variation_check",
]
