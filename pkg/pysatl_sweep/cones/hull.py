"""Minimum-norm point of the convex hull of finitely many points (Wolfe's algorithm)."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from pysatl_sweep.core.errors import ConfigurationError, ConvergenceError
from pysatl_sweep.core.tolerances import DEFAULT_TOLERANCES, Tolerances
from pysatl_sweep.core.types import FloatArray, as_point

from .cone import MAX_GENERATORS

__all__ = ["HullPoint", "min_norm_in_hull"]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HullPoint:
    """Minimum-norm point p* of conv(points) with its optimality certificate.

    :param point: p*
    :param distance: |p*|
    :param weights: Barycentric weights of p* (nonnegative, summing to one)
    :param certificate: min_i <p*, x_i - p*>, must be >= -tol
    :param iterations: Number of major iterations
    """

    point: FloatArray
    distance: float
    weights: FloatArray
    certificate: float
    iterations: int


def _affine_minimizer(points: FloatArray) -> FloatArray:
    """Return weights v, sum v = 1, minimizing |points^T v| over the affine hull."""
    k = len(points)
    gram = points @ points.T
    system = np.zeros((k + 1, k + 1))
    system[:k, :k] = gram
    system[:k, k] = 1.0
    system[k, :k] = 1.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    solution = np.linalg.lstsq(system, rhs, rcond=None)[0]
    return np.asarray(solution[:k], dtype=np.float64)


def min_norm_in_hull(points: Sequence[Any] | FloatArray, tolerances: Tolerances = DEFAULT_TOLERANCES) -> HullPoint:
    """Find the point of smallest norm in the convex hull of the given points.

    Wolfe's method keeps a corral S of affinely independent points and weights w > 0 on
    it. Each major iteration adds the point most opposed to the current iterate; minor
    iterations move towards the affine minimizer of S and drop points whose weight
    vanishes.

    :param points: Between 1 and 64 vectors of equal dimension
    :param tolerances: KKT tolerance and iteration cap
    :return: The minimum-norm point and its certificate
    :raises ConvergenceError: If the iteration cap is reached or the final point is not certified optimal
    """
    data = np.atleast_2d(np.asarray([as_point(p) for p in points], dtype=np.float64))
    if data.size == 0 or not 1 <= len(data) <= MAX_GENERATORS:
        raise ConfigurationError(f"min_norm_in_hull needs 1 to {MAX_GENERATORS} points, got {len(data)}")

    n = len(data)
    tol = tolerances.kkt
    corral = [int(np.argmin(np.einsum("ij,ij->i", data, data)))]
    weights = np.array([1.0])
    x = data[corral[0]].copy()
    iterations = 0

    while True:
        iterations += 1
        if iterations > tolerances.max_iter:
            raise ConvergenceError("Min-norm point iteration cap reached", {"norm": float(np.linalg.norm(x))})
        products = data @ x
        j = int(np.argmin(products))
        if products[j] >= x @ x - tol or j in corral:
            break
        corral.append(j)
        weights = np.append(weights, 0.0)

        while True:
            iterations += 1
            if iterations > tolerances.max_iter:
                raise ConvergenceError("Min-norm point iteration cap reached", {"norm": float(np.linalg.norm(x))})
            v = _affine_minimizer(data[corral])
            if np.all(v > tol):
                weights = v
                break
            blocking = v <= tol
            denominators = weights[blocking] - v[blocking]
            ratios = np.divide(
                weights[blocking], denominators, out=np.zeros_like(denominators), where=denominators > 0
            )
            theta = float(np.min(ratios))
            weights = weights + theta * (v - weights)
            keep = weights > tol
            corral = [c for c, k in zip(corral, keep) if k]
            weights = weights[keep] / np.sum(weights[keep])
        x = weights @ data[corral]

    certificate = float(np.min(data @ x - x @ x))
    if certificate < -tol * (1.0 + float(np.max(np.einsum("ij,ij->i", data, data)))):
        raise ConvergenceError(
            "Min-norm point stalled on its corral without optimality",
            {"certificate": certificate, "norm": float(np.linalg.norm(x))},
        )
    full = np.zeros(n)
    full[corral] = weights
    distance = float(np.linalg.norm(x))
    logger.debug("min-norm point: %d points, distance %.3e after %d iterations", n, distance, iterations)
    return HullPoint(x, distance, full, certificate, iterations)
