"""Closed-form projections onto the elementary sets of the catalogue."""

from __future__ import annotations

from typing import Any

import numpy as np

from pysatl_sweep.core.errors import ConfigurationError, InvalidSetError
from pysatl_sweep.core.types import FloatArray, as_point

__all__ = ["project_ball_exterior", "project_halfspace"]


def project_halfspace(a: Any, b: float, z: Any) -> FloatArray:
    """Project z onto the half-space {y : <a, y> >= b}.

    :param a: Nonzero normal vector
    :param b: Offset
    :param z: Point to project
    :return: z if feasible, otherwise z + ((b - <a, z>) / |a|^2) a
    :raises InvalidSetError: If a is the zero vector

    Example:
        ```python
        project_halfspace([1.0, 1.0], 0.0, [-1.0, -1.0])  # array([0., 0.])
        ```
    """
    normal, point = as_point(a), as_point(z)
    squared = float(normal @ normal)
    if squared == 0.0:
        raise InvalidSetError("Half-space normal vector must be nonzero")
    gap = b - float(normal @ point)
    if gap <= 0.0:
        return point
    return point + (gap / squared) * normal


def project_ball_exterior(center: Any, radius: float, z: Any) -> FloatArray:
    """Project z onto the exterior {y : |y - center| >= radius} of a ball.

    The projection of the center itself is not unique; the first coordinate axis is used.

    :param center: Center of the ball
    :param radius: Positive radius
    :param z: Point to project
    :return: z if already exterior, otherwise its radial projection onto the sphere
    """
    if radius <= 0.0:
        raise ConfigurationError(f"Ball radius must be positive, got {radius}")
    middle, point = as_point(center), as_point(z)
    offset = point - middle
    norm = float(np.linalg.norm(offset))
    if norm >= radius:
        return point
    if norm == 0.0:
        direction = np.zeros_like(point)
        direction[0] = 1.0
        return middle + radius * direction
    return middle + (radius / norm) * offset
