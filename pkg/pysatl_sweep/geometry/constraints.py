"""Smooth constraint functions g(t, x) whose nonnegativity defines a constraint set."""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Iterator
from dataclasses import dataclass
from typing import Any

import numpy as np

from pysatl_sweep.core.errors import ConfigurationError, GeometricDegeneracyError, InvalidSetError
from pysatl_sweep.core.types import FloatArray, as_point

__all__ = [
    "ActiveSet",
    "AffineConstraint",
    "DiskContactConstraint",
    "RadiusSchedule",
    "SmoothConstraint",
    "WallDistanceConstraint",
]


class SmoothConstraint(ABC):
    """Abstract C^2 constraint function with the feasible region {x : g(t, x) >= 0}.

    :param dim: Dimension of the configuration space
    :param time_bound: Bound on |d/dt g(t, x)|
    """

    def __init__(self, dim: int, time_bound: float = 0.0) -> None:
        if dim < 1:
            raise ConfigurationError(f"Constraint dimension must be positive, got {dim}")
        if time_bound < 0.0:
            raise ConfigurationError(f"Time-derivative bound must be nonnegative, got {time_bound}")
        self.dim = dim
        self.time_bound = float(time_bound)

    @abstractmethod
    def value(self, t: float, x: FloatArray) -> float:
        """Return g(t, x)."""
        pass

    @abstractmethod
    def gradient(self, t: float, x: FloatArray) -> FloatArray:
        """Return the gradient of g(t, .) at x."""
        pass

    def time_derivative(self, t: float, x: FloatArray) -> float | None:
        """Return d/dt g(t, x), or None when the constraint does not expose it."""
        return None

    def gradient_check(self, t: float, x: Any, eps: float = 1e-6) -> float:
        """Return the largest forward-difference mismatch along the coordinate axes.

        The mismatch |(g(t, x + eps e) - g(t, x)) / eps - <grad g, e>| is O(eps) for a
        gradient consistent with the value.
        """
        point = as_point(x)
        base = self.value(t, point)
        gradient = self.gradient(t, point)
        worst = 0.0
        for axis in range(point.size):
            shifted = point.copy()
            shifted[axis] += eps
            worst = max(worst, abs((self.value(t, shifted) - base) / eps - gradient[axis]))
        return worst


class AffineConstraint(SmoothConstraint):
    """Affine constraint g(t, x) = <a, x> - b - c t.

    :param normal: Nonzero vector a
    :param offset: Offset b
    :param velocity: Drift c of the offset
    """

    def __init__(self, normal: Any, offset: float = 0.0, velocity: float = 0.0) -> None:
        a = as_point(normal)
        if not np.any(a):
            raise InvalidSetError("Affine constraint normal must be nonzero")
        super().__init__(a.size, abs(velocity))
        self.normal = a
        self.offset = float(offset)
        self.velocity = float(velocity)

    def value(self, t: float, x: FloatArray) -> float:
        return float(self.normal @ x) - self.offset - self.velocity * t

    def gradient(self, t: float, x: FloatArray) -> FloatArray:
        return self.normal.copy()

    def time_derivative(self, t: float, x: FloatArray) -> float | None:
        return -self.velocity

    def __repr__(self) -> str:
        return f"AffineConstraint(normal={self.normal.tolist()}, offset={self.offset}, velocity={self.velocity})"


@dataclass(frozen=True)
class RadiusSchedule:
    """Disk radius r(t) = base + rate * t.

    :param base: Radius at time 0
    :param rate: Growth rate, the Lipschitz constant of r being |rate|
    """

    base: float
    rate: float = 0.0

    def __post_init__(self) -> None:
        if self.base <= 0.0:
            raise ConfigurationError(f"Disk radius must be positive, got {self.base}")

    def __call__(self, t: float) -> float:
        return self.base + self.rate * t

    @property
    def lipschitz(self) -> float:
        return abs(self.rate)

    def lower_bound(self, horizon: float) -> float:
        """Return the smallest radius on [0, horizon]."""
        return min(self.base, self(horizon))


Radius = float | RadiusSchedule


def _schedule(radius: Radius) -> RadiusSchedule:
    return radius if isinstance(radius, RadiusSchedule) else RadiusSchedule(float(radius))


def _disk_slice(disk: int, n_disks: int, plane_dim: int) -> slice:
    if not 0 <= disk < n_disks:
        raise ConfigurationError(f"Disk index {disk} out of range for {n_disks} disks")
    return slice(disk * plane_dim, (disk + 1) * plane_dim)


class DiskContactConstraint(SmoothConstraint):
    """Non-overlap of disks i and j: g(t, q) = |q_i - q_j| - (r_i(t) + r_j(t)).

    The configuration q stacks the centers of ``n_disks`` disks of the plane. The
    gradient has norm sqrt(2) wherever the centers differ.
    """

    def __init__(
        self, i: int, j: int, radius_i: Radius, radius_j: Radius, n_disks: int, plane_dim: int = 2
    ) -> None:
        if i == j:
            raise ConfigurationError("A contact constraint needs two distinct disks")
        self.radius_i = _schedule(radius_i)
        self.radius_j = _schedule(radius_j)
        super().__init__(n_disks * plane_dim, self.radius_i.lipschitz + self.radius_j.lipschitz)
        self.pair = (i, j)
        self._slice_i = _disk_slice(i, n_disks, plane_dim)
        self._slice_j = _disk_slice(j, n_disks, plane_dim)

    def separation(self, x: FloatArray) -> FloatArray:
        return x[self._slice_i] - x[self._slice_j]

    def value(self, t: float, x: FloatArray) -> float:
        return float(np.linalg.norm(self.separation(x))) - self.radius_i(t) - self.radius_j(t)

    def gradient(self, t: float, x: FloatArray) -> FloatArray:
        separation = self.separation(x)
        norm = float(np.linalg.norm(separation))
        if norm == 0.0:
            raise GeometricDegeneracyError(f"Disks {self.pair[0]} and {self.pair[1]} have coincident centers")
        unit = separation / norm
        gradient = np.zeros(self.dim)
        gradient[self._slice_i] = unit
        gradient[self._slice_j] = -unit
        return gradient

    def time_derivative(self, t: float, x: FloatArray) -> float | None:
        return -(self.radius_i.rate + self.radius_j.rate)

    def __repr__(self) -> str:
        return f"DiskContactConstraint(pair={self.pair})"


class WallDistanceConstraint(SmoothConstraint):
    """Disk kept on one side of a straight wall: g(t, q) = <n, q_disk - p> - r(t).

    :param disk: Index of the disk
    :param point: A point p of the wall
    :param normal: Normal n pointing to the admissible side, normalized on construction
    :param radius: Radius of the disk
    :param n_disks: Number of disks in the configuration
    """

    def __init__(
        self, disk: int, point: Any, normal: Any, radius: Radius, n_disks: int, plane_dim: int = 2
    ) -> None:
        self.radius = _schedule(radius)
        super().__init__(n_disks * plane_dim, self.radius.lipschitz)
        n = as_point(normal)
        norm = float(np.linalg.norm(n))
        if norm == 0.0 or n.size != plane_dim:
            raise InvalidSetError(f"Wall normal must be a nonzero vector of dimension {plane_dim}")
        self.disk = disk
        self.point = as_point(point)
        self.normal = n / norm
        self._slice = _disk_slice(disk, n_disks, plane_dim)

    def value(self, t: float, x: FloatArray) -> float:
        return float(self.normal @ (x[self._slice] - self.point)) - self.radius(t)

    def gradient(self, t: float, x: FloatArray) -> FloatArray:
        gradient = np.zeros(self.dim)
        gradient[self._slice] = self.normal
        return gradient

    def time_derivative(self, t: float, x: FloatArray) -> float | None:
        return -self.radius.rate

    def __repr__(self) -> str:
        return f"WallDistanceConstraint(disk={self.disk}, normal={self.normal.tolist()})"


@dataclass(frozen=True)
class ActiveSet:
    """Indices i with g_i(t, x) <= threshold.

    :param indices: Active constraint indices in increasing order
    :param threshold: Activation threshold rho
    """

    indices: tuple[int, ...]
    threshold: float

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __contains__(self, index: object) -> bool:
        return index in self.indices
