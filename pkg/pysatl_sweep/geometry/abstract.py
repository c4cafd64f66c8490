from __future__ import annotations

import math
from abc import ABC, abstractmethod
from typing import Any

import numpy as np

from pysatl_sweep.core.errors import ConfigurationError, StepTooLargeError
from pysatl_sweep.core.tolerances import DEFAULT_TOLERANCES, Tolerances
from pysatl_sweep.core.types import FloatArray, as_point

from .window import Window

__all__ = ["MovingSet"]

# candidates drawn per batch by the rejection samplers
SAMPLING_BATCH = 4096
# batches tried before a sampling window is declared empty
SAMPLING_MAX_BATCHES = 256


class MovingSet(ABC):
    """Abstract moving closed set t -> C(t) in R^d with a uniform prox-regularity constant.

    Concrete sets implement the distance function and the raw metric projection. The
    public :meth:`project` refuses points farther than ``tube_factor * eta`` from the set,
    where the projection is no longer guaranteed to be single-valued.

    :param dim: Ambient dimension d
    :param tolerances: Numerical tolerances, the boundary tolerance among them
    """

    def __init__(self, dim: int, tolerances: Tolerances = DEFAULT_TOLERANCES) -> None:
        if dim < 1:
            raise ConfigurationError(f"Dimension must be positive, got {dim}")
        self._dim = dim
        self._tolerances = tolerances

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def tolerances(self) -> Tolerances:
        return self._tolerances

    @property
    def boundary_tolerance(self) -> float:
        return self._tolerances.boundary

    @property
    @abstractmethod
    def prox_constant(self) -> float:
        """Return eta such that C(t) is eta-prox-regular for every t (math.inf if convex)."""
        pass

    @abstractmethod
    def distance(self, t: float, x: Any) -> float:
        """Return d_{C(t)}(x)."""
        pass

    @abstractmethod
    def _project(self, t: float, z: FloatArray) -> FloatArray:
        """Return the metric projection of z onto C(t), z within the tube."""
        pass

    def variation(self, t: float) -> float | None:
        """Return v(t) with d_H(C(t), C(s)) <= |v(t) - v(s)|, or None if not declared."""
        return None

    def tube_radius(self) -> float:
        """Return the largest distance at which :meth:`project` accepts a point."""
        return self._tolerances.tube_factor * self.prox_constant

    def project(self, t: float, z: Any) -> FloatArray:
        """Project z onto C(t).

        :param t: Time
        :param z: Point of R^d
        :return: The unique nearest point of C(t)
        :raises StepTooLargeError: If d_{C(t)}(z) >= tube_factor * eta
        """
        point = self._check_point(z)
        distance = self.distance(t, point)
        if distance >= self.tube_radius():
            raise StepTooLargeError(
                f"Point at distance {distance:.6g} from the set exceeds the projection tube "
                f"{self.tube_radius():.6g}; reduce the step size",
                distance=distance,
                eta=self.prox_constant,
            )
        if distance == 0.0:
            return point
        return self._project(t, point)

    def contains(self, t: float, x: Any) -> bool:
        return self.distance(t, x) <= self.boundary_tolerance

    def _check_point(self, z: Any) -> FloatArray:
        point = as_point(z)
        if point.size != self._dim:
            raise ConfigurationError(f"Expected a point of dimension {self._dim}, got {point.size}")
        if not np.all(np.isfinite(point)):
            raise ConfigurationError("Point coordinates must be finite")
        return point

    def sample_interior(self, t: float, window: Window, n: int, rng: np.random.Generator) -> FloatArray:
        """Draw up to n points of C(t) inside the window by rejection.

        Points are accepted only when their distance is exactly zero, so strict feasibility
        holds. The accepted points of a call with n samples are a prefix of the accepted
        points of any call with more samples and the same generator state.

        :raises ConfigurationError: If the window contains no feasible point
        """
        return self._rejection_sample(window, n, rng, lambda z: self.distance(t, z) == 0.0)

    def sample_boundary(
        self, t: float, window: Window, n: int, rng: np.random.Generator
    ) -> tuple[FloatArray, FloatArray]:
        """Draw boundary points with unit proximal normals.

        Infeasible points z of the window inside the projection tube are projected; the
        projection x lies on the boundary and (z - x) / |z - x| is a proximal normal at x.

        :return: Points x as a (k, d) array and unit normals v as a (k, d) array, k <= n
        :raises ConfigurationError: If the window has no point inside the tube
        """
        radius = self.tube_radius()

        def admissible(z: FloatArray) -> bool:
            distance = self.distance(t, z)
            return self.boundary_tolerance < distance < radius

        outside = self._rejection_sample(window, n, rng, admissible)
        points = np.array([self._project(t, z) for z in outside])
        normals = outside - points
        normals /= np.linalg.norm(normals, axis=1, keepdims=True)
        return points, normals

    def _rejection_sample(
        self, window: Window, n: int, rng: np.random.Generator, accept: Any
    ) -> FloatArray:
        if window.dim != self._dim:
            raise ConfigurationError(f"Window of dimension {window.dim} does not match set dimension {self._dim}")
        accepted: list[FloatArray] = []
        for _ in range(SAMPLING_MAX_BATCHES):
            for candidate in window.sample(rng, SAMPLING_BATCH):
                if accept(candidate):
                    accepted.append(candidate)
                    if len(accepted) == n:
                        return np.array(accepted)
        if not accepted:
            raise ConfigurationError("Sampling window contains no admissible point")
        return np.array(accepted)

    def __repr__(self) -> str:
        eta = "inf" if math.isinf(self.prox_constant) else f"{self.prox_constant:g}"
        return f"{type(self).__name__}(dim={self._dim}, eta={eta})"
