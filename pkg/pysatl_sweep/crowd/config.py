from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np

from pysatl_sweep.core.errors import ConfigurationError
from pysatl_sweep.core.grid import TimeGrid
from pysatl_sweep.core.tolerances import DEFAULT_TOLERANCES, Tolerances
from pysatl_sweep.core.types import FloatArray, as_point
from pysatl_sweep.geometry import (
    ConstraintSet,
    DiskContactConstraint,
    RadiusSchedule,
    SmoothConstraint,
    WallDistanceConstraint,
)

from .velocity import VelocityField

__all__ = ["CrowdConfig", "Noise", "Wall"]

Noise = float | Sequence[float] | Callable[[float, FloatArray], FloatArray]


@dataclass(frozen=True)
class Wall:
    """Straight wall through ``point``; disks stay on the side ``normal`` points to."""

    point: FloatArray
    normal: FloatArray


@dataclass(frozen=True)
class CrowdConfig:
    """Disks in the plane with spontaneous velocities and a shared scalar noise.

    :param positions: Initial centers, shape (N, 2)
    :param radii: One radius or radius schedule per disk
    :param velocity: Spontaneous velocity field U
    :param grid: Time grid
    :param noise: sigma as a scalar amplitude, a vector of R^{2N} or a callable (t, q) -> R^{2N}
    :param noise_bound: Bound on |sigma| for callable noise
    :param threshold: Activation threshold rho, None for the default
    :param walls: Straight walls applied to every disk
    :param eta: Prox constant of the constraint set, None for the heuristic default
    :param tolerances: Numerical tolerances
    """

    positions: FloatArray
    radii: Sequence[float | RadiusSchedule]
    velocity: VelocityField
    grid: TimeGrid
    noise: Noise = 0.0
    noise_bound: float | None = None
    threshold: float | None = None
    walls: Sequence[Wall] = ()
    eta: float | None = None
    tolerances: Tolerances = DEFAULT_TOLERANCES
    schedules: tuple[RadiusSchedule, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        positions = np.atleast_2d(np.asarray(self.positions, dtype=np.float64))
        if positions.ndim != 2 or positions.shape[1] != 2 or len(positions) == 0:
            raise ConfigurationError(f"Disk centers must have shape (N, 2), got {positions.shape}")
        if len(self.radii) != len(positions):
            raise ConfigurationError(f"Expected {len(positions)} radii, got {len(self.radii)}")
        schedules = tuple(r if isinstance(r, RadiusSchedule) else RadiusSchedule(float(r)) for r in self.radii)
        if min(schedule.lower_bound(self.grid.horizon) for schedule in schedules) <= 0.0:
            raise ConfigurationError("Disk radii must stay positive over the horizon")
        if self.threshold is not None and self.threshold < 0.0:
            raise ConfigurationError(f"Activation threshold must be nonnegative, got {self.threshold}")
        if callable(self.noise) and self.noise_bound is None:
            raise ConfigurationError("Callable noise needs a declared noise_bound")
        if not callable(self.noise) and as_point(self.noise).size not in (1, 2 * len(positions)):
            raise ConfigurationError("Noise amplitude must be a scalar or a vector of R^{2N}")
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "schedules", schedules)
        object.__setattr__(self, "walls", tuple(self.walls))

        values = [constraint.value(0.0, self.q0) for constraint in self.constraints()]
        if values and min(values) < -self.tolerances.boundary:
            raise ConfigurationError(f"Initial configuration overlaps: min D = {min(values):.6g}")

    @property
    def n_disks(self) -> int:
        return len(self.positions)

    @property
    def dim(self) -> int:
        return 2 * self.n_disks

    @property
    def q0(self) -> FloatArray:
        return self.positions.reshape(-1)

    def sigma(self, t: float, q: FloatArray) -> FloatArray:
        if callable(self.noise):
            return as_point(self.noise(t, q))
        amplitude = as_point(self.noise)
        return np.full(self.dim, amplitude[0]) if amplitude.size == 1 else amplitude

    def sigma_bound(self) -> float:
        if self.noise_bound is not None:
            return self.noise_bound
        return float(np.linalg.norm(self.sigma(0.0, self.q0)))

    def radius_lipschitz(self) -> float:
        return max(schedule.lipschitz for schedule in self.schedules)

    def activation_threshold(self) -> float:
        """Return rho, by default 2 (h L + 4 |sigma| sqrt(h)) with L = |U| bound + 2 max radius rate."""
        if self.threshold is not None:
            return self.threshold
        h = self.grid.step
        speed = self.velocity.bound + 2.0 * self.radius_lipschitz()
        return 2.0 * (h * speed + 4.0 * self.sigma_bound() * math.sqrt(h))

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n_disks) for j in range(i + 1, self.n_disks)]

    def constraints(self) -> list[SmoothConstraint]:
        """Return the pairwise contact constraints in (i, j) order, then one row per wall and disk."""
        rows: list[SmoothConstraint] = [
            DiskContactConstraint(i, j, self.schedules[i], self.schedules[j], self.n_disks) for i, j in self.pairs()
        ]
        for wall in self.walls:
            rows.extend(
                WallDistanceConstraint(disk, wall.point, wall.normal, self.schedules[disk], self.n_disks)
                for disk in range(self.n_disks)
            )
        return rows

    def constraint_set(self) -> ConstraintSet | None:
        """Return Q(t) as a constraint set, None for a single disk without walls."""
        constraints = self.constraints()
        if not constraints:
            return None
        alpha = 1.0 if self.walls else math.sqrt(2.0)
        smallest = min(schedule.lower_bound(self.grid.horizon) for schedule in self.schedules)
        return ConstraintSet(
            constraints,
            alpha=alpha,
            beta=math.sqrt(2.0),
            hessian_bound=1.0 / smallest,
            threshold=self.activation_threshold(),
            eta=self.eta,
            tolerances=self.tolerances,
        )

