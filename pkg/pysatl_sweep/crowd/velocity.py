"""Spontaneous velocity fields U(q) of the crowd model."""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import numpy as np

from pysatl_sweep.core.errors import ConfigurationError
from pysatl_sweep.core.types import FloatArray, as_point

__all__ = ["VelocityField"]


def _towards(targets: FloatArray, positions: FloatArray, speed: float, slowdown: float) -> FloatArray:
    offsets = targets - positions
    distances = np.linalg.norm(offsets, axis=1, keepdims=True)
    return speed * offsets / np.maximum(distances, slowdown)


@dataclass(frozen=True)
class VelocityField:
    """Velocity field q -> U(q) in R^{2N} with a bound on |U(q)|.

    :param func: Map from the stacked centers (N, 2) to velocities (N, 2)
    :param bound: Bound on the norm of the stacked velocity vector
    :param name: Catalogue name
    """

    func: Callable[[FloatArray], FloatArray]
    bound: float
    name: str

    def __call__(self, q: FloatArray) -> FloatArray:
        return np.asarray(self.func(q.reshape(-1, 2)), dtype=np.float64).reshape(-1)

    @classmethod
    def constant(cls, velocities: Any) -> VelocityField:
        """Each disk keeps its own constant velocity."""
        table = np.atleast_2d(np.asarray(velocities, dtype=np.float64))
        if table.shape[1] != 2:
            raise ConfigurationError(f"Constant velocities must be given as (N, 2), got shape {table.shape}")
        return cls(lambda positions: table, float(np.linalg.norm(table)), "constant")

    @classmethod
    def target(cls, point: Any, speed: float, n_disks: int, slowdown: float = 1.0) -> VelocityField:
        """Every disk walks towards a common target at the given speed, slowing down within ``slowdown`` of it."""
        goal = as_point(point)
        if goal.size != 2 or speed < 0.0 or slowdown <= 0.0:
            raise ConfigurationError("Target field needs a planar point, a nonnegative speed and a positive slowdown")
        return cls(lambda positions: _towards(goal, positions, speed, slowdown), speed * math.sqrt(n_disks), "target")

    @classmethod
    def corridor(
        cls, exit_point: Any, speed: float, width: float, n_disks: int, slowdown: float = 1.0
    ) -> VelocityField:
        """Every disk walks towards the nearest point of a vertical door of the given width centered at the exit."""
        door = as_point(exit_point)
        if door.size != 2 or speed < 0.0 or width <= 0.0 or slowdown <= 0.0:
            raise ConfigurationError("Corridor field needs a planar exit, a nonnegative speed and positive sizes")
        half = width / 2.0

        def towards_door(positions: FloatArray) -> FloatArray:
            targets = np.empty_like(positions)
            targets[:, 0] = door[0]
            targets[:, 1] = np.clip(positions[:, 1], door[1] - half, door[1] + half)
            return _towards(targets, positions, speed, slowdown)

        return cls(towards_door, speed * math.sqrt(n_disks), "corridor")
