"""Projection onto finitely generated cones and the Moreau polar decomposition."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from pysatl_sweep.core.errors import ConfigurationError, ConvergenceError
from pysatl_sweep.core.tolerances import DEFAULT_TOLERANCES, Tolerances
from pysatl_sweep.core.types import FloatArray, as_point

__all__ = [
    "MAX_GENERATORS",
    "ConeProjection",
    "GeneratedCone",
    "PolarDecomposition",
    "nnls_cone_project",
    "polar_decompose",
]

logger = logging.getLogger(__name__)

MAX_GENERATORS = 64


@dataclass(frozen=True)
class GeneratedCone:
    """The cone {sum_i lambda_i g_i : lambda_i >= 0} spanned by nonzero generators.

    An empty generator list denotes the trivial cone {0}; ``dim`` is then mandatory.

    :param generators: Generators as rows of a (m, d) array
    """

    generators: FloatArray
    dim: int = field(default=-1)

    def __post_init__(self) -> None:
        generators = np.asarray(self.generators, dtype=np.float64)
        if generators.size == 0:
            if self.dim < 0:
                raise ConfigurationError("An empty cone needs an explicit dimension")
            generators = np.zeros((0, self.dim))
        else:
            generators = np.atleast_2d(generators)
        if len(generators) > MAX_GENERATORS:
            raise ConfigurationError(f"At most {MAX_GENERATORS} generators are supported, got {len(generators)}")
        if len(generators) and np.any(np.linalg.norm(generators, axis=1) == 0.0):
            raise ConfigurationError("Cone generators must be nonzero")
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "dim", generators.shape[1])

    @classmethod
    def from_vectors(cls, vectors: Sequence[Any], dim: int | None = None) -> GeneratedCone:
        rows = [as_point(v) for v in vectors]
        if not rows:
            return cls(np.zeros((0, 0)), dim=-1 if dim is None else dim)
        return cls(np.vstack(rows))

    def __len__(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class ConeProjection:
    """Result of :func:`nnls_cone_project` together with its KKT certificate.

    :param point: The projection p
    :param coefficients: Nonnegative lambda with p = sum_i lambda_i g_i
    :param dual_residual: max_i <z - p, g_i> (must be <= tol)
    :param complementarity: |<z - p, p>|
    :param iterations: Inner least-squares solves performed
    """

    point: FloatArray
    coefficients: FloatArray
    dual_residual: float
    complementarity: float
    iterations: int


@dataclass(frozen=True)
class PolarDecomposition:
    """Moreau decomposition z = a + b with a in the cone, b in its polar and <a, b> = 0."""

    a: FloatArray
    b: FloatArray
    projection: ConeProjection


def _lawson_hanson(
    matrix: FloatArray, rhs: FloatArray, tol: float, max_iter: int
) -> tuple[FloatArray, int]:
    """Solve min |matrix @ x - rhs| subject to x >= 0 by the active-set method.

    The passive set P holds the columns allowed to be positive. Each outer iteration moves
    the column with the largest dual variable into P; the inner loop solves the
    unconstrained least-squares problem on P and steps back towards the feasible region
    whenever a passive coefficient turns nonpositive.
    """
    n = matrix.shape[1]
    x = np.zeros(n)
    passive = np.zeros(n, dtype=bool)
    w = matrix.T @ (rhs - matrix @ x)
    iterations = 0

    while (~passive).any() and np.max(np.where(passive, -np.inf, w)) > tol:
        j = int(np.argmax(np.where(passive, -np.inf, w)))
        passive[j] = True
        while True:
            iterations += 1
            if iterations > max_iter:
                raise ConvergenceError(
                    "Active-set NNLS exceeded its iteration cap",
                    {"dual_residual": float(np.max(w)), "iterations": float(iterations)},
                )
            trial = np.zeros(n)
            if passive.any():
                trial[passive] = np.linalg.lstsq(matrix[:, passive], rhs, rcond=None)[0]
            if np.all(trial[passive] > 0.0):
                break
            blocking = passive & (trial <= 0.0)
            denominators = x[blocking] - trial[blocking]
            ratios = np.divide(x[blocking], denominators, out=np.zeros_like(denominators), where=denominators > 0)
            alpha = float(np.min(ratios))
            x = x + alpha * (trial - x)
            passive &= x > tol * 1e-3
            x[~passive] = 0.0
        x = trial
        w = matrix.T @ (rhs - matrix @ x)
        if not passive[j]:
            # the column just added was immediately dropped: nothing left to gain
            break
    return x, iterations


def nnls_cone_project(
    z: Any, cone: GeneratedCone, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> ConeProjection:
    """Project z onto a finitely generated cone.

    The projection is p = G^T lambda where lambda solves the nonnegative least-squares
    problem min_{lambda >= 0} |G^T lambda - z|. The returned certificate is checked here:
    <z - p, g_i> <= tol for every generator and <z - p, p> = 0 within tol.

    :param z: Point to project
    :param cone: Cone given by its generators
    :param tolerances: Solver tolerances (KKT residual and iteration cap)
    :return: Projection, coefficients and certificate
    :raises ConvergenceError: If the KKT conditions cannot be certified within the cap

    Example:
        ```python
        cone = GeneratedCone.from_vectors([[1.0, 0.0]])
        nnls_cone_project([1.0, 1.0], cone).point  # array([1., 0.])
        ```
    """
    point = as_point(z)
    if len(cone) == 0:
        return ConeProjection(np.zeros_like(point), np.zeros(0), 0.0, 0.0, 0)
    if cone.dim != point.size:
        raise ConfigurationError(f"Point of dimension {point.size} does not match cone dimension {cone.dim}")

    matrix = cone.generators.T
    coefficients, iterations = _lawson_hanson(matrix, point, tolerances.kkt, tolerances.max_iter)
    projection = matrix @ coefficients
    residual = point - projection
    dual_residual = float(np.max(cone.generators @ residual))
    complementarity = float(abs(residual @ projection))
    scale = max(1.0, float(np.linalg.norm(point)) * float(np.max(np.linalg.norm(cone.generators, axis=1))))
    if dual_residual > tolerances.kkt * scale or complementarity > tolerances.kkt * scale:
        raise ConvergenceError(
            "Cone projection failed its KKT certificate",
            {"dual_residual": dual_residual, "complementarity": complementarity},
        )
    logger.debug("cone projection: %d generators, %d iterations", len(cone), iterations)
    return ConeProjection(projection, coefficients, dual_residual, complementarity, iterations)


def polar_decompose(
    z: Any, cone: GeneratedCone, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> PolarDecomposition:
    """Split z into its projections on a cone and on the polar cone.

    :param z: Vector to decompose
    :param cone: Cone given by its generators
    :return: a = P_cone(z), b = z - a, with <a, b> = 0 and <b, g_i> <= tol
    """
    point = as_point(z)
    projection = nnls_cone_project(point, cone, tolerances)
    return PolarDecomposition(projection.point, point - projection.point, projection)
