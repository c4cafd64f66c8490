"""Numerical certificates for prox-regularity, admissibility and set variation."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from pysatl_sweep.cones import GeneratedCone, min_norm_in_hull, polar_decompose
from pysatl_sweep.core.errors import AdmissibilityError, ConfigurationError, ReverseTriangleError
from pysatl_sweep.core.random import make_generator
from pysatl_sweep.core.tolerances import DEFAULT_TOLERANCES, Tolerances
from pysatl_sweep.core.types import FloatArray, as_point

from .abstract import MovingSet
from .constraint_set import ConstraintSet
from .constraints import ActiveSet
from .window import Window

__all__ = [
    "GoodDirection",
    "VariationSample",
    "Violation",
    "active_constraints",
    "gamma_estimate",
    "good_direction",
    "hausdorff_estimate",
    "hypomonotonicity_check",
    "lipschitz_variation_bound",
    "proximal_normal_test",
    "set_variation_check",
]

logger = logging.getLogger(__name__)

# unit normals are accepted when their norm is within this distance of 1
_UNIT_TOLERANCE = 1e-9


def active_constraints(constraint_set: ConstraintSet, t: float, x: Any, threshold: float) -> ActiveSet:
    """Return the indices i with g_i(t, x) <= threshold."""
    return constraint_set.active(t, x, threshold)


def proximal_normal_test(moving_set: MovingSet, t: float, x: Any, w: Any, s: float) -> bool:
    """Test whether w is a proximal normal of C(t) at the boundary point x.

    :param moving_set: The set
    :param t: Time
    :param x: Point of C(t)
    :param w: Nonzero candidate direction
    :param s: Probe length in (0, eta / 2)
    :return: True iff x is the projection of x + s w / |w|
    :raises ConfigurationError: If x is not in the set, w is zero or s is out of range
    """
    point = as_point(x)
    direction = as_point(w)
    if not moving_set.contains(t, point):
        raise ConfigurationError("Proximal normal test needs a point of the set")
    norm = float(np.linalg.norm(direction))
    if norm == 0.0:
        raise ConfigurationError("Proximal normal test needs a nonzero direction")
    if not 0.0 < s < moving_set.prox_constant / 2.0:
        raise ConfigurationError(f"Probe length must lie in (0, eta / 2), got {s}")
    projected = moving_set.project(t, point + s * direction / norm)
    return float(np.linalg.norm(projected - point)) <= moving_set.tolerances.normal_test


@dataclass(frozen=True)
class Violation:
    """Sampled triple breaking <y - x, v> <= |v| |x - y|^2 / (2 eta).

    :param point: Boundary point x
    :param normal: Unit proximal normal v at x
    :param other: Point y of the set
    :param lhs: <y - x, v>
    :param rhs: |x - y|^2 / (2 eta)
    """

    point: FloatArray
    normal: FloatArray
    other: FloatArray
    lhs: float
    rhs: float


def hypomonotonicity_check(
    moving_set: MovingSet,
    t: float,
    eta: float,
    n_samples: int,
    seed: int,
    window: Window,
    tolerance: float = 1e-12,
) -> list[Violation]:
    """Sample the hypomonotonicity inequality of an eta-prox-regular set.

    Boundary points with unit proximal normals come from projecting infeasible window
    points; each is paired with an independently drawn point of the set.

    :param moving_set: The set
    :param t: Time
    :param eta: Claimed prox-regularity constant, math.inf for convex sets
    :param n_samples: Number of sampled pairs
    :param seed: Seed of the sampling streams
    :param window: Sampling window
    :param tolerance: Absolute slack of the inequality
    :return: Every violating triple; an empty list means the check passed
    :raises ConfigurationError: If the window holds no boundary or no interior sample
    """
    if eta <= 0.0:
        raise ConfigurationError(f"Claimed prox constant must be positive, got {eta}")
    points, normals = moving_set.sample_boundary(t, window, n_samples, make_generator(seed, 0))
    others = moving_set.sample_interior(t, window, n_samples, make_generator(seed, 1))
    count = min(len(points), len(others))
    points, normals, others = points[:count], normals[:count], others[:count]

    lhs = np.einsum("ij,ij->i", others - points, normals)
    rhs = np.zeros(count) if math.isinf(eta) else np.sum((others - points) ** 2, axis=1) / (2.0 * eta)
    failing = np.flatnonzero(lhs > rhs + tolerance)
    logger.debug("hypomonotonicity: %d pairs, %d violations", count, len(failing))
    return [Violation(points[k], normals[k], others[k], float(lhs[k]), float(rhs[k])) for k in failing]


def gamma_estimate(unit_normals: Sequence[Any], tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Return the reverse triangle constant 1 / dist(0, conv{n_i}).

    It is the smallest gamma with sum(lambda_i) <= gamma |sum(lambda_i n_i)| for all
    lambda >= 0.

    :raises ConfigurationError: If the list is empty or a vector is not of unit length
    :raises ReverseTriangleError: If the origin lies in the convex hull

    Example:
        ```python
        gamma_estimate([[1.0, 0.0], [0.0, 1.0]])  # 1.4142...
        ```
    """
    if len(unit_normals) == 0:
        raise ConfigurationError("gamma estimate needs at least one normal")
    normals = np.vstack([as_point(n) for n in unit_normals])
    if np.any(np.abs(np.linalg.norm(normals, axis=1) - 1.0) > _UNIT_TOLERANCE):
        raise ConfigurationError("gamma estimate needs unit normals")
    hull = min_norm_in_hull(normals, tolerances)
    if hull.distance <= tolerances.boundary:
        raise ReverseTriangleError()
    return max(1.0, 1.0 / hull.distance)


@dataclass(frozen=True)
class GoodDirection:
    """Certified inward direction at a point of a constraint set.

    :param direction: Unit vector u
    :param nu: Certified lower bound on <grad g_i, u> over the active constraints
    :param inner_products: <grad g_i, u> for every active i
    :param active: Active set the certificate refers to
    :param gamma: Reverse triangle constant used
    """

    direction: FloatArray
    nu: float
    inner_products: FloatArray
    active: ActiveSet
    gamma: float


def good_direction(
    constraint_set: ConstraintSet, t: float, x: Any, threshold: float | None = None
) -> GoodDirection:
    """Build a direction entering every active constraint at a uniform rate.

    Each active gradient is split as grad g_i = a_i + b_i with a_i in the cone generated by
    the negated active gradients and b_i in its polar; u = sum b_i / |sum b_i|. The bound
    nu = alpha^2 / (4 gamma^2 p beta) uses p the number of constraints of the set, the
    declared alpha and beta widened by the observed gradient norms and gamma the larger
    of the declared and the observed reverse triangle constants.

    :raises ConfigurationError: If no constraint is active
    :raises ReverseTriangleError: If the active unit normals violate the reverse triangle inequality
    :raises AdmissibilityError: If sum b_i vanishes or the certificate fails numerically
    """
    point = as_point(x)
    active = constraint_set.active(t, point, threshold)
    if not active:
        raise ConfigurationError("good direction needs at least one active constraint")
    tolerances = constraint_set.tolerances
    gradients = constraint_set.gradients(t, point, active.indices)
    norms = np.linalg.norm(gradients, axis=1)
    alpha = min(constraint_set.alpha, float(np.min(norms)))
    beta = max(constraint_set.beta, float(np.max(norms)))
    gamma = gamma_estimate(gradients / norms[:, None], tolerances)
    if constraint_set.gamma is not None:
        gamma = max(gamma, constraint_set.gamma)

    cone = GeneratedCone(-gradients)
    total = np.zeros(constraint_set.dim)
    for gradient in gradients:
        total += polar_decompose(gradient, cone, tolerances).b
    length = float(np.linalg.norm(total))
    if length <= tolerances.boundary:
        raise AdmissibilityError("Polar components of the active gradients cancel out")

    direction = total / length
    nu = alpha**2 / (4.0 * gamma**2 * len(constraint_set) * beta)
    inner_products = gradients @ direction
    if np.any(inner_products < nu - tolerances.normal_test):
        raise AdmissibilityError(
            f"Good direction certificate failed: min <grad g_i, u> = "
            f"{float(np.min(inner_products)):.6g} < nu = {nu:.6g}"
        )
    return GoodDirection(direction, nu, inner_products, active, gamma)


def lipschitz_variation_bound(constraint_set: ConstraintSet, t: float, x: Any) -> float:
    """Return beta / nu, the Lipschitz constant of t -> Q(t) certified at (t, x)."""
    certificate = good_direction(constraint_set, t, x)
    return constraint_set.beta / certificate.nu


def hausdorff_estimate(
    set_a: MovingSet, t_a: float, set_b: MovingSet, t_b: float, window: Window, n: int, seed: int
) -> float:
    """Estimate d_H(A(t_a), B(t_b)) restricted to a window from below.

    Returns max(max d_B over sampled points of A, max d_A over sampled points of B). The
    samples of a call are a prefix of the samples of any call with larger n and the same
    seed, so the estimate is nondecreasing in n.

    :raises ConfigurationError: If the window holds no point of one of the sets
    """
    if n < 1:
        raise ConfigurationError(f"Sample count must be positive, got {n}")
    from_a = set_a.sample_interior(t_a, window, n, make_generator(seed, 0))
    from_b = set_b.sample_interior(t_b, window, n, make_generator(seed, 1))
    forward = max(set_b.distance(t_b, z) for z in from_a)
    backward = max(set_a.distance(t_a, z) for z in from_b)
    return max(forward, backward)


@dataclass(frozen=True)
class VariationSample:
    """Sampled Hausdorff distance between two times against the declared bound |v(t) - v(s)|."""

    s: float
    t: float
    estimate: float
    bound: float
    ok: bool


def set_variation_check(
    moving_set: MovingSet, times: Sequence[float], window: Window, n: int, seed: int, tolerance: float = 1e-9
) -> list[VariationSample]:
    """Compare sampled d_H(C(s), C(t)) with |v(t) - v(s)| on consecutive listed times.

    :raises ConfigurationError: If the set declares no variation function or fewer than two times are given
    """
    if len(times) < 2:
        raise ConfigurationError("set variation check needs at least two times")
    ordered = sorted(float(time) for time in times)
    report = []
    for index, (s, t) in enumerate(zip(ordered, ordered[1:])):
        v_s, v_t = moving_set.variation(s), moving_set.variation(t)
        if v_s is None or v_t is None:
            raise ConfigurationError(f"{moving_set!r} declares no variation function")
        estimate = hausdorff_estimate(moving_set, s, moving_set, t, window, n, seed + index)
        bound = abs(v_t - v_s)
        report.append(VariationSample(s, t, estimate, bound, estimate <= bound + tolerance))
    return report
