"""Euclidean projection onto a polyhedron {y : <a_i, y> >= b_i} by dual coordinate ascent."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from pysatl_sweep.core.errors import ConfigurationError, ConvergenceError, InfeasiblePolyhedronError, InvalidSetError
from pysatl_sweep.core.tolerances import DEFAULT_TOLERANCES, Tolerances
from pysatl_sweep.core.types import FloatArray, as_point

from .cone import MAX_GENERATORS

__all__ = ["Polyhedron", "PolyhedronProjection", "polyhedron_project"]

logger = logging.getLogger(__name__)

# distance (relative to the problem scale) beyond which the polyhedron is declared empty
_DIVERGENCE_BOUND = 10.0


@dataclass(frozen=True)
class Polyhedron:
    """Intersection of half-spaces <a_i, y> >= b_i.

    :param normals: Row vectors a_i as a (m, d) array, each nonzero
    :param offsets: Right-hand sides b_i as a (m,) array
    """

    normals: FloatArray
    offsets: FloatArray

    def __post_init__(self) -> None:
        normals = np.atleast_2d(np.asarray(self.normals, dtype=np.float64))
        offsets = np.atleast_1d(np.asarray(self.offsets, dtype=np.float64))
        if normals.size == 0:
            raise ConfigurationError("A polyhedron needs at least one row")
        if len(normals) != len(offsets):
            raise ConfigurationError("Polyhedron normals and offsets must have the same length")
        if len(normals) > MAX_GENERATORS:
            raise ConfigurationError(f"At most {MAX_GENERATORS} rows are supported, got {len(normals)}")
        if np.any(np.linalg.norm(normals, axis=1) == 0.0):
            raise InvalidSetError("Polyhedron rows must have nonzero normals")
        object.__setattr__(self, "normals", normals)
        object.__setattr__(self, "offsets", offsets)

    @classmethod
    def from_rows(cls, rows: Sequence[tuple[Any, float]]) -> Polyhedron:
        return cls(np.vstack([as_point(a) for a, _ in rows]), np.array([float(b) for _, b in rows]))

    @property
    def dim(self) -> int:
        return int(self.normals.shape[1])

    def __len__(self) -> int:
        return len(self.offsets)

    def violation(self, y: FloatArray) -> float:
        """Return max_i (b_i - <a_i, y>), nonpositive for feasible points."""
        return float(np.max(self.offsets - self.normals @ y))

    def contains(self, y: FloatArray, tol: float) -> bool:
        return self.violation(y) <= tol


@dataclass(frozen=True)
class PolyhedronProjection:
    """Projection y of z with multipliers mu: y - z = sum_i mu_i a_i, mu >= 0.

    :param point: The projection y
    :param multipliers: Nonnegative multipliers mu
    :param violation: max_i (b_i - <a_i, y>)
    :param complementarity: max_i mu_i |<a_i, y> - b_i|
    :param iterations: Number of sweeps over the rows
    """

    point: FloatArray
    multipliers: FloatArray
    violation: float
    complementarity: float
    iterations: int


def _project_single_row(point: FloatArray, polyhedron: Polyhedron) -> PolyhedronProjection:
    normal, offset = polyhedron.normals[0], float(polyhedron.offsets[0])
    gap = offset - float(normal @ point)
    if gap <= 0.0:
        return PolyhedronProjection(point.copy(), np.zeros(1), gap, 0.0, 0)
    multiplier = gap / float(normal @ normal)
    y = point + multiplier * normal
    slack = float(normal @ y) - offset
    return PolyhedronProjection(y, np.array([multiplier]), -slack, multiplier * abs(slack), 1)


def polyhedron_project(
    z: Any,
    polyhedron: Polyhedron,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    relaxation: float = 1.2,
) -> PolyhedronProjection:
    """Project z onto a polyhedron.

    The dual of min |y - z|^2 / 2 subject to <a_i, y> >= b_i is solved by cyclic
    coordinate ascent on the multipliers (Hildreth's method), over-relaxed by
    ``relaxation`` in (0, 2). The primal point y = z + sum_i mu_i a_i is updated in place
    so every sweep costs O(m d). A single row is projected in closed form.

    :param z: Point to project
    :param polyhedron: Feasible polyhedron
    :param tolerances: KKT tolerance and sweep cap
    :param relaxation: Over-relaxation factor in (0, 2)
    :return: Projection and KKT certificate
    :raises InfeasiblePolyhedronError: If the multipliers diverge
    :raises ConvergenceError: If the sweep cap is reached

    Example:
        ```python
        P = Polyhedron.from_rows([([0.0, 1.0], 0.0)])
        polyhedron_project([2.0, -3.0], P).point  # array([2., 0.])
        ```
    """
    if not 0.0 < relaxation < 2.0:
        raise ConfigurationError(f"Relaxation factor must lie in (0, 2), got {relaxation}")
    point = as_point(z)
    if point.size != polyhedron.dim:
        raise ConfigurationError(
            f"Point of dimension {point.size} does not match polyhedron dimension {polyhedron.dim}"
        )
    if len(polyhedron) == 1:
        return _project_single_row(point, polyhedron)

    normals = polyhedron.normals
    offsets = polyhedron.offsets
    squared = np.einsum("ij,ij->i", normals, normals)
    multipliers = np.zeros(len(offsets))
    y = point.copy()
    tol = tolerances.kkt
    scale = 1.0 + float(np.linalg.norm(point)) + float(np.max(np.abs(offsets)))

    if polyhedron.contains(y, tol):
        return PolyhedronProjection(y, multipliers, polyhedron.violation(y), 0.0, 0)

    violation = complementarity = np.inf
    for sweep in range(1, tolerances.max_iter + 1):
        for i in range(len(offsets)):
            step = relaxation * (offsets[i] - normals[i] @ y) / squared[i]
            updated = max(0.0, multipliers[i] + step)
            if updated != multipliers[i]:
                y += (updated - multipliers[i]) * normals[i]
                multipliers[i] = updated

        slack = normals @ y - offsets
        violation = float(np.max(-slack))
        complementarity = float(np.max(multipliers * np.abs(slack)))
        if violation <= tol and complementarity <= tol:
            logger.debug("polyhedron projection: %d rows, %d sweeps", len(offsets), sweep)
            return PolyhedronProjection(y, multipliers, violation, complementarity, sweep)
        displacement = y - point
        dual_objective = float(offsets @ multipliers - displacement @ point - 0.5 * displacement @ displacement)
        if dual_objective > 0.5 * (_DIVERGENCE_BOUND * scale) ** 2:
            # weak duality: a feasible polyhedron keeps the dual objective below dist(z, P)^2 / 2
            raise InfeasiblePolyhedronError(f"Dual multipliers diverged after {sweep} sweeps: the polyhedron is empty")

    raise ConvergenceError(
        "Polyhedron projection exceeded its sweep cap",
        {"violation": violation, "complementarity": complementarity},
    )
