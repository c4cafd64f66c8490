from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from pysatl_sweep.core.errors import ConfigurationError
from pysatl_sweep.core.types import FloatArray, as_point
from pysatl_sweep.geometry import DiskContactConstraint

from .config import CrowdConfig

__all__ = ["ContactConstraint", "contact_constraints", "pair_distances", "project_two_disks"]


@dataclass(frozen=True)
class ContactConstraint:
    """Evaluated contact constraint between disks i < j.

    :param pair: Disk indices (i, j)
    :param value: D_ij(q, t) = |q_i - q_j| - (r_i(t) + r_j(t))
    :param gradient: Gradient in R^{2N}: e_ij at slot i, -e_ij at slot j
    """

    pair: tuple[int, int]
    value: float
    gradient: FloatArray


def _contact_rows(config: CrowdConfig) -> list[DiskContactConstraint]:
    return [row for row in config.constraints() if isinstance(row, DiskContactConstraint)]


def pair_distances(config: CrowdConfig, q: Any, t: float) -> FloatArray:
    """Return D_ij(q, t) for every pair i < j in lexicographic order."""
    point = as_point(q)
    return np.array([row.value(t, point) for row in _contact_rows(config)])


def contact_constraints(config: CrowdConfig, q: Any, t: float, threshold: float) -> list[ContactConstraint]:
    """Return the pairs with D_ij(q, t) <= threshold together with their gradients.

    :raises GeometricDegeneracyError: If an active pair has coincident centers

    Example:
        ```python
        contact_constraints(config, [-1.0, 0.0, 1.0, 0.0], 0.0, 0.1)[0].gradient  # [-1, 0, 1, 0]
        ```
    """
    point = as_point(q)
    if point.size != config.dim:
        raise ConfigurationError(f"Configuration must have dimension {config.dim}, got {point.size}")
    if threshold < 0.0:
        raise ConfigurationError(f"Activation threshold must be nonnegative, got {threshold}")
    active = []
    for row in _contact_rows(config):
        value = row.value(t, point)
        if value <= threshold:
            active.append(ContactConstraint(row.pair, value, row.gradient(t, point)))
    return active


def project_two_disks(q: Any, distance: float) -> FloatArray:
    """Exact projection of (q_1, q_2) in R^4 onto {|q_1 - q_2| >= distance}.

    The midpoint is kept and the separation is pushed radially to ``distance``;
    coincident centers are separated along the first axis.
    """
    point = as_point(q)
    if point.size != 4 or distance <= 0.0:
        raise ConfigurationError("Two-disk projection needs q in R^4 and a positive contact distance")
    first, second = point[:2], point[2:]
    separation = first - second
    norm = float(np.linalg.norm(separation))
    if norm >= distance:
        return point
    unit = np.array([1.0, 0.0]) if norm == 0.0 else separation / norm
    middle = 0.5 * (first + second)
    return np.concatenate((middle + 0.5 * distance * unit, middle - 0.5 * distance * unit))
