"""Moving set Q(t) = {x : g_i(t, x) >= 0 for all i} defined by smooth constraints."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from typing import Any

import numpy as np

from pysatl_sweep.cones import Polyhedron, polyhedron_project
from pysatl_sweep.core.errors import ConfigurationError, ConvergenceError, StepTooLargeError
from pysatl_sweep.core.tolerances import DEFAULT_TOLERANCES, Tolerances
from pysatl_sweep.core.types import FloatArray

from .abstract import MovingSet
from .constraints import ActiveSet, SmoothConstraint

__all__ = ["ConstraintSet"]

logger = logging.getLogger(__name__)


class ConstraintSet(MovingSet):
    """Intersection of the regions {g_i(t, .) >= 0} of finitely many smooth constraints.

    The constants follow the usual admissibility assumptions: the gradients have norms in
    [alpha, beta] near the boundary, |d/dt g_i| <= beta, the Hessians are bounded by M and
    the active unit normals satisfy the reverse triangle inequality with constant gamma.
    When eta is not given, the heuristic alpha / (2 M gamma^2) is used (gamma = 1 when
    unknown); it is not a certified prox-regularity constant.

    Projection uses sequential linearization: y_{k+1} = P_{Q~(t, y_k)}(z) with y_0 = z,
    where Q~(t, y) keeps the constraints active at y with threshold rho, linearized at y.
    For constraint functions convex in x, which covers the whole built-in catalogue,
    every iterate after the first is feasible and |z - y_k| is nonincreasing.

    :param constraints: Constraint functions sharing one dimension
    :param alpha: Lower bound on the gradient norms
    :param beta: Upper bound on the gradient norms and time derivatives
    :param hessian_bound: Bound M on the Hessian norms
    :param threshold: Activation threshold rho
    :param gamma: Reverse triangle constant, None if unknown
    :param eta: Prox-regularity constant, None to use the heuristic default
    :param tolerances: Numerical tolerances
    """

    def __init__(
        self,
        constraints: Sequence[SmoothConstraint],
        alpha: float,
        beta: float,
        hessian_bound: float = 0.0,
        threshold: float = 0.1,
        gamma: float | None = None,
        eta: float | None = None,
        tolerances: Tolerances = DEFAULT_TOLERANCES,
    ) -> None:
        if not constraints:
            raise ConfigurationError("A constraint set needs at least one constraint")
        dims = {constraint.dim for constraint in constraints}
        if len(dims) != 1:
            raise ConfigurationError(f"Constraints have mismatched dimensions {sorted(dims)}")
        super().__init__(dims.pop(), tolerances)
        if not 0.0 < alpha <= beta:
            raise ConfigurationError(f"Gradient bounds must satisfy 0 < alpha <= beta, got {alpha}, {beta}")
        if hessian_bound < 0.0 or threshold < 0.0:
            raise ConfigurationError("Hessian bound and activation threshold must be nonnegative")
        if gamma is not None and gamma < 1.0:
            raise ConfigurationError(f"Reverse triangle constant must be at least 1, got {gamma}")
        if eta is not None and eta <= 0.0:
            raise ConfigurationError(f"Prox constant must be positive, got {eta}")
        self.constraints = tuple(constraints)
        self.alpha = float(alpha)
        self.beta = float(beta)
        self.hessian_bound = float(hessian_bound)
        self.threshold = float(threshold)
        self.gamma = gamma
        self._eta = eta

    @property
    def prox_constant(self) -> float:
        if self._eta is not None:
            return self._eta
        if self.hessian_bound == 0.0:
            return math.inf
        gamma = 1.0 if self.gamma is None else self.gamma
        return self.alpha / (2.0 * self.hessian_bound * gamma**2)

    def __len__(self) -> int:
        return len(self.constraints)

    def values(self, t: float, x: FloatArray) -> FloatArray:
        return np.array([constraint.value(t, x) for constraint in self.constraints])

    def gradients(self, t: float, x: FloatArray, indices: Sequence[int] | None = None) -> FloatArray:
        chosen = range(len(self.constraints)) if indices is None else indices
        return np.array([self.constraints[i].gradient(t, x) for i in chosen]).reshape(-1, self.dim)

    def active(self, t: float, x: Any, threshold: float | None = None) -> ActiveSet:
        rho = self.threshold if threshold is None else threshold
        if rho < 0.0:
            raise ConfigurationError(f"Activation threshold must be nonnegative, got {rho}")
        values = self.values(t, self._check_point(x))
        return ActiveSet(tuple(int(i) for i in np.flatnonzero(values <= rho)), rho)

    def linearization(self, t: float, x: FloatArray, indices: Sequence[int]) -> Polyhedron:
        """Return Q~(t, x): rows <grad g_i(t, x), y> >= <grad g_i(t, x), x> - g_i(t, x)."""
        normals = self.gradients(t, x, indices)
        values = np.array([self.constraints[i].value(t, x) for i in indices])
        return Polyhedron(normals, normals @ x - values)

    def distance(self, t: float, x: Any) -> float:
        point = self._check_point(x)
        if np.all(self.values(t, point) >= 0.0):
            return 0.0
        return float(np.linalg.norm(point - self._project(t, point)))

    def project(self, t: float, z: Any) -> FloatArray:
        point = self._check_point(z)
        if np.all(self.values(t, point) >= 0.0):
            return point
        projected = self._project(t, point)
        distance = float(np.linalg.norm(point - projected))
        if distance >= self.tube_radius():
            raise StepTooLargeError(
                f"Point at distance {distance:.6g} from the constraint set exceeds the projection tube "
                f"{self.tube_radius():.6g}; reduce the step size",
                distance=distance,
                eta=self.prox_constant,
            )
        return projected

    def _project(self, t: float, z: FloatArray) -> FloatArray:
        tol = self.boundary_tolerance
        current = z
        step = math.inf
        for iteration in range(1, self.tolerances.max_iter + 1):
            following = self._linearized_step(t, current, z)
            step = float(np.linalg.norm(following - current))
            current = following
            if step <= tol:
                logger.debug("constraint set projection: %d linearizations", iteration)
                break
        else:
            raise ConvergenceError("Sequential linearized projection exceeded its iteration cap", {"step": step})

        violation = float(-np.min(self.values(t, current)))
        if violation > tol:
            raise ConvergenceError("Sequential linearized projection ended outside the set", {"violation": violation})
        return current

    def _linearized_step(self, t: float, anchor: FloatArray, z: FloatArray) -> FloatArray:
        values = self.values(t, anchor)
        indices = set(np.flatnonzero(values <= self.threshold).tolist())
        while True:
            if not indices:
                return z
            polyhedron = self.linearization(t, anchor, sorted(indices))
            candidate = polyhedron_project(z, polyhedron, self.tolerances).point
            violated = set(np.flatnonzero(self.values(t, candidate) < -self.boundary_tolerance).tolist())
            missing = violated - indices
            if not missing:
                return candidate
            indices |= missing
