"""Concrete moving sets of the catalogue: half-spaces, ball exteriors, the whole space."""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from typing import Any

import numpy as np

from pysatl_sweep.core.errors import ConfigurationError, InvalidSetError
from pysatl_sweep.core.tolerances import DEFAULT_TOLERANCES, Tolerances
from pysatl_sweep.core.types import FloatArray, as_point

from .abstract import MovingSet
from .projections import project_ball_exterior, project_halfspace

__all__ = ["BallExterior", "BallExteriorUnion", "Halfspace", "Offset", "WholeSpace"]

Offset = float | Callable[[float], float]


class Halfspace(MovingSet):
    """Moving half-space C(t) = {y : <a, y> >= b(t)}.

    With d = 1 and a = 1 this is the half-line [b(t), inf). Half-spaces are convex, so
    eta is infinite, and d_H(C(t), C(s)) = |b(t) - b(s)| / |a|.

    :param normal: Nonzero normal a
    :param offset: Constant offset b or a callable t -> b(t)
    :param tolerances: Numerical tolerances

    Example:
        ```python
        wall = Halfspace([1.0], offset=lambda t: t)  # C(t) = [t, inf)
        wall.project(0.5, [0.2])  # array([0.5])
        ```
    """

    def __init__(self, normal: Any, offset: Offset = 0.0, tolerances: Tolerances = DEFAULT_TOLERANCES) -> None:
        a = as_point(normal)
        super().__init__(a.size, tolerances)
        norm = float(np.linalg.norm(a))
        if norm == 0.0:
            raise InvalidSetError("Half-space normal vector must be nonzero")
        self.normal = a
        self._norm = norm
        self.offset = offset

    def offset_at(self, t: float) -> float:
        return float(self.offset(t)) if callable(self.offset) else float(self.offset)

    @property
    def prox_constant(self) -> float:
        return math.inf

    def distance(self, t: float, x: Any) -> float:
        gap = self.offset_at(t) - float(self.normal @ as_point(x))
        return max(0.0, gap / self._norm)

    def _project(self, t: float, z: FloatArray) -> FloatArray:
        return project_halfspace(self.normal, self.offset_at(t), z)

    def variation(self, t: float) -> float | None:
        return self.offset_at(t) / self._norm


class BallExterior(MovingSet):
    """Exterior {y : |y - c(t)| >= r} of a ball with center c(t) = c + t * velocity.

    The exterior of a ball of radius r is r-prox-regular.

    :param center: Center at time 0
    :param radius: Positive radius r
    :param velocity: Constant velocity of the center, defaults to zero
    :param tolerances: Numerical tolerances
    """

    def __init__(
        self,
        center: Any,
        radius: float,
        velocity: Any = None,
        tolerances: Tolerances = DEFAULT_TOLERANCES,
    ) -> None:
        c = as_point(center)
        super().__init__(c.size, tolerances)
        if radius <= 0.0:
            raise ConfigurationError(f"Ball radius must be positive, got {radius}")
        self.center = c
        self.radius = float(radius)
        self.velocity = np.zeros_like(c) if velocity is None else as_point(velocity)
        if self.velocity.shape != c.shape:
            raise ConfigurationError("Ball velocity must have the dimension of its center")

    def center_at(self, t: float) -> FloatArray:
        return self.center + t * self.velocity

    @property
    def prox_constant(self) -> float:
        return self.radius

    def distance(self, t: float, x: Any) -> float:
        return max(0.0, self.radius - float(np.linalg.norm(as_point(x) - self.center_at(t))))

    def _project(self, t: float, z: FloatArray) -> FloatArray:
        return project_ball_exterior(self.center_at(t), self.radius, z)

    def variation(self, t: float) -> float | None:
        return t * float(np.linalg.norm(self.velocity))


class BallExteriorUnion(MovingSet):
    """Complement of a union of pairwise disjoint closed balls.

    A point inside ball i is projected radially onto sphere i; the balls being disjoint,
    the result lies outside every other ball. Every boundary point sits on one sphere, so
    the set is eta-prox-regular with eta the smallest radius.

    :param centers: Ball centers
    :param radii: Ball radii
    :param tolerances: Numerical tolerances
    """

    def __init__(
        self, centers: Sequence[Any], radii: Sequence[float], tolerances: Tolerances = DEFAULT_TOLERANCES
    ) -> None:
        if not centers or len(centers) != len(radii):
            raise ConfigurationError("A ball union needs as many radii as centers, at least one")
        self.balls = [BallExterior(c, r, tolerances=tolerances) for c, r in zip(centers, radii)]
        super().__init__(self.balls[0].dim, tolerances)
        for i, first in enumerate(self.balls):
            if first.dim != self.dim:
                raise ConfigurationError("All ball centers must have the same dimension")
            for second in self.balls[i + 1 :]:
                gap = float(np.linalg.norm(first.center - second.center)) - first.radius - second.radius
                if gap <= 0.0:
                    raise InvalidSetError("Balls of a union exterior must be pairwise disjoint")

    @property
    def prox_constant(self) -> float:
        return min(ball.radius for ball in self.balls)

    def distance(self, t: float, x: Any) -> float:
        return max(ball.distance(t, x) for ball in self.balls)

    def _project(self, t: float, z: FloatArray) -> FloatArray:
        for ball in self.balls:
            if ball.distance(t, z) > 0.0:
                return ball._project(t, z)
        return z

    def variation(self, t: float) -> float | None:
        return 0.0


class WholeSpace(MovingSet):
    """The unconstrained set R^d: the projection is the identity."""

    @property
    def prox_constant(self) -> float:
        return math.inf

    def distance(self, t: float, x: Any) -> float:
        return 0.0

    def _project(self, t: float, z: FloatArray) -> FloatArray:
        return z

    def variation(self, t: float) -> float | None:
        return 0.0
