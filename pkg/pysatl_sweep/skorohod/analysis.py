"""Oracles and verifiers for catching-up solutions."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from pysatl_sweep.core.errors import ConfigurationError
from pysatl_sweep.core.grid import TimeGrid
from pysatl_sweep.core.types import FloatArray
from pysatl_sweep.geometry import MovingSet, proximal_normal_test

from .catching_up import catching_up
from .driver import Driver
from .solution import SkorohodSolution

__all__ = [
    "BvReport",
    "HolderReport",
    "RefinementRow",
    "SupportViolation",
    "bv_uniformity",
    "halfline_reflection_oracle",
    "holder_stability_check",
    "refine_compare",
    "support_check",
]

logger = logging.getLogger(__name__)


def halfline_reflection_oracle(driver: Driver | Sequence[float] | FloatArray, u0: float) -> FloatArray:
    """Discrete Skorohod map of [0, inf): x_0 = u0, x_{n+1} = max(0, x_n + l_{n+1} - l_n).

    :param driver: Scalar driver, or its node values
    :param u0: Nonnegative starting point

    Example:
        ```python
        halfline_reflection_oracle([0.0, -1.0, 1.0], 0.0)  # array([0., 0., 2.])
        ```
    """
    values = driver.samples if isinstance(driver, Driver) else np.asarray(driver, dtype=np.float64)
    values = values.reshape(len(values), -1)
    if values.shape[1] != 1:
        raise ConfigurationError("The half-line oracle needs a scalar driver")
    if u0 < 0.0:
        raise ConfigurationError(f"Starting point must be nonnegative, got {u0}")
    path = np.empty(len(values))
    path[0] = u0
    for n, delta in enumerate(np.diff(values[:, 0])):
        path[n + 1] = max(0.0, path[n] + delta)
    return path


@dataclass(frozen=True)
class SupportViolation:
    """Node at which the discrete reaction is not a proximal normal of the set.

    :param node: Node index
    :param t: Time of the node
    :param increment: |k(t_n) - k(t_{n-1})|
    :param reasons: Failed conditions, among "outside", "no-contact" and "not-normal"
    """

    node: int
    t: float
    increment: float
    reasons: tuple[str, ...]


def support_check(solution: SkorohodSolution, moving_set: MovingSet, tol: float) -> list[SupportViolation]:
    """Check feasibility and the discrete support and normal-cone conditions of dk.

    At each node with |dk| > tol the contact flag must be set and dk must pass the
    proximal normal test at x(t_n); every node must be feasible.
    """
    violations = []
    for node in range(len(solution)):
        t = float(solution.t[node])
        x = solution.x[node]
        reasons: list[str] = []
        if not moving_set.contains(t, x):
            reasons.append("outside")
        increment = solution.k[node] - solution.k[node - 1] if node > 0 else np.zeros(solution.dim)
        size = float(np.linalg.norm(increment))
        if size > tol and not reasons:
            if not solution.contact[node]:
                reasons.append("no-contact")
            probe = min(size, 0.4 * moving_set.prox_constant)
            if not proximal_normal_test(moving_set, t, x, increment, probe):
                reasons.append("not-normal")
        if reasons:
            violations.append(SupportViolation(node, t, size, tuple(reasons)))
    return violations


@dataclass(frozen=True)
class RefinementRow:
    """Error of the catching-up solution at step h against the finest grid."""

    step: float
    sup_error: float
    tv_k: float


def refine_compare(moving_set: MovingSet, driver: Driver, u0: Any, steps: Sequence[float]) -> list[RefinementRow]:
    """Compare catching-up solutions on nested grids against the driver's own grid.

    :param moving_set: Moving set C
    :param driver: Driver sampled on the finest grid
    :param u0: Initial point
    :param steps: Coarse steps, each a multiple of the finest step dividing the horizon
    :return: Rows ordered by decreasing h
    :raises ConfigurationError: If a grid is not nested in the driver's grid
    """
    finest = catching_up(moving_set, driver, u0)
    rows = []
    for step in sorted(steps, reverse=True):
        grid = TimeGrid(driver.grid.horizon, step)
        factor = grid.refinement_factor(driver.grid)
        coarse = catching_up(moving_set, driver.restrict(grid), u0)
        error = float(np.max(np.linalg.norm(coarse.x - finest.x[::factor], axis=1)))
        logger.info("refinement h=%g: sup error %.3e, tv_k %.6g", step, error, coarse.tv_k[-1])
        rows.append(RefinementRow(step, error, float(coarse.tv_k[-1])))
    return rows


@dataclass(frozen=True)
class HolderReport:
    """Outcome of sup|x - x'|^2 <= c (sup|l - l'| + sup|l - l'|^2)."""

    lhs: float
    rhs: float
    ok: bool


def holder_stability_check(moving_set: MovingSet, driver: Driver, other: Driver, u0: Any, c: float) -> HolderReport:
    """Check the 1/2-Hoelder dependence of the solution on the driver for one pair of drivers."""
    if c <= 0.0:
        raise ConfigurationError(f"Hoelder constant must be positive, got {c}")
    gap = driver.sup_distance(other)
    first = catching_up(moving_set, driver, u0)
    second = catching_up(moving_set, other, u0)
    lhs = float(np.max(np.sum((first.x - second.x) ** 2, axis=1)))
    rhs = c * (gap + gap**2)
    return HolderReport(lhs, rhs, lhs <= rhs)


@dataclass(frozen=True)
class BvReport:
    """Total variation of k at the horizon across refinements.

    :param steps: Steps h in decreasing order
    :param tv_k: tv_k(T) per step
    :param spread: (max - min) / max of tv_k(T), zero when k vanishes
    :param budget_ratio: tv_k(T) / (TV(l) + TV(v)) on the finest step, None without a variation function
    """

    steps: tuple[float, ...]
    tv_k: tuple[float, ...]
    spread: float
    budget_ratio: float | None


def bv_uniformity(moving_set: MovingSet, driver: Driver, u0: Any, steps: Sequence[float]) -> BvReport:
    """Measure how tv_k(T) changes when the driver is resampled on nested grids."""
    if not steps:
        raise ConfigurationError("BV uniformity needs at least one step")
    ordered = sorted(steps, reverse=True)
    variations = []
    for step in ordered:
        grid = TimeGrid(driver.grid.horizon, step)
        variations.append(float(catching_up(moving_set, driver.restrict(grid), u0).tv_k[-1]))
    largest = max(variations)
    spread = 0.0 if largest == 0.0 else (largest - min(variations)) / largest

    start, end = moving_set.variation(0.0), moving_set.variation(driver.grid.horizon)
    ratio: float | None = None
    if start is not None and end is not None:
        finest_grid = TimeGrid(driver.grid.horizon, ordered[-1])
        budget = driver.restrict(finest_grid).total_variation() + abs(end - start)
        if budget > 0.0:
            ratio = variations[-1] / budget
        else:
            ratio = math.inf if variations[-1] > 0.0 else 0.0
    return BvReport(tuple(ordered), tuple(variations), spread, ratio)
