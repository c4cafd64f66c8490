"""Pathwise convergence and Monte Carlo stability studies of the projected Euler scheme."""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, TypeVar

import numpy as np
from scipy.stats import linregress

from pysatl_sweep.core.data_providers import SimpleDataProvider
from pysatl_sweep.core.errors import ConfigurationError, StepTooLargeError
from pysatl_sweep.core.grid import TimeGrid
from pysatl_sweep.core.processor import MappingHandler
from pysatl_sweep.core.types import FloatArray
from pysatl_sweep.geometry import Halfspace, MovingSet
from pysatl_sweep.skorohod import Increment, SkorohodSolution

from .brownian import Seed, brownian_path, brownian_refine
from .euler import EulerProjectHandler, euler_project
from .fields import FieldPair

__all__ = [
    "MIN_PATHS",
    "MONITORING_BIAS",
    "MeanEstimate",
    "PathwiseRow",
    "StabilityReport",
    "StabilityRow",
    "deterministic_limit",
    "pathwise_convergence",
    "reflected_bm_mean",
    "reflected_bm_reference",
    "stability_sweep",
]

logger = logging.getLogger(__name__)

# Monte Carlo sweeps with fewer paths carry a statistical-power warning
MIN_PATHS = 30

# first-order bias of the discretely monitored reflection: zeta(1/2) / sqrt(2 pi) per sqrt(h)
MONITORING_BIAS = -1.4603545088095868 / math.sqrt(2.0 * math.pi)

R = TypeVar("R")


def _map_paths(task: Callable[[int], R], n_paths: int, workers: int) -> list[R]:
    if workers < 1:
        raise ConfigurationError(f"Worker count must be positive, got {workers}")
    if workers == 1:
        return [task(index) for index in range(n_paths)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(task, range(n_paths)))


@dataclass(frozen=True)
class PathwiseRow:
    """Sup-node error of one refinement level against the finest level on the same path."""

    level: int
    step: float
    sup_error: float


def pathwise_convergence(
    moving_set: MovingSet, fields: FieldPair, u0: Any, seed: Seed, levels: int, grid: TimeGrid
) -> list[PathwiseRow]:
    """Run the projected Euler scheme on successive bridge refinements of one Brownian path.

    :param grid: Coarsest grid, its step dividing the horizon
    :param levels: Number of grids, the finest one serving as reference
    :return: One row per non-reference level, coarsest first
    :raises ConfigurationError: If fewer than three levels are requested
    """
    if levels < 3:
        raise ConfigurationError(f"Pathwise convergence needs at least 3 levels, got {levels}")
    paths = [brownian_path(seed, grid)]
    for _ in range(levels - 1):
        paths.append(brownian_refine(paths[-1]))
    solutions = [euler_project(moving_set, fields, u0, path) for path in paths]
    reference = solutions[-1]
    rows = []
    for level, solution in enumerate(solutions[:-1]):
        stride = 2 ** (levels - 1 - level)
        error = float(np.max(np.linalg.norm(solution.x - reference.x[::stride], axis=1)))
        rows.append(PathwiseRow(level, paths[level].grid.step, error))
        logger.debug("seed %s level %d: sup error %.3e", seed, level, error)
    return rows


def deterministic_limit(moving_set: MovingSet, fields: FieldPair, u0: Any, grid: TimeGrid) -> SkorohodSolution:
    """Solve the noiseless sweeping process with driver increments h f(t_n, x(t_n)) built inline."""
    nodes = grid.nodes

    def still(n: int) -> Increment:
        return Increment(n, float(nodes[n]), float(nodes[n] - nodes[n - 1]), np.zeros(1))

    increments = SimpleDataProvider(range(1, len(nodes))) | MappingHandler(still)
    pipeline = increments | EulerProjectHandler(moving_set, fields.without_noise(), u0)
    return SkorohodSolution.from_records(pipeline)


@dataclass(frozen=True)
class StabilityRow:
    """L4 error E[sup_t |X^eps - X|^4]^(1/4) over the retained paths of one noise level."""

    epsilon: float
    estimate: float
    std_error: float
    n_paths: int
    discarded: int


@dataclass(frozen=True)
class StabilityReport:
    """Rows per noise level and the log-log slope of the error, None when undefined."""

    rows: list[StabilityRow]
    slope: float | None
    warnings: list[str] = field(default_factory=list)


def _fourth_root_mean(errors: FloatArray) -> tuple[float, float]:
    powers = errors**4
    mean = float(np.mean(powers))
    if mean == 0.0:
        return 0.0, 0.0
    spread = float(np.std(powers, ddof=1)) / math.sqrt(len(powers)) if len(powers) > 1 else math.inf
    # delta method for m -> m^(1/4)
    return mean**0.25, 0.25 * mean ** (-0.75) * spread


def stability_sweep(
    moving_set: MovingSet,
    fields: FieldPair,
    u0: Any,
    grid: TimeGrid,
    epsilons: Sequence[float],
    n_paths: int,
    master_seed: int,
    workers: int = 1,
) -> StabilityReport:
    """Measure how fast the solution with diffusion eps * sigma approaches the noiseless one.

    Path i uses the Brownian path keyed by (master_seed, i) for every eps. Paths whose
    predicted point leaves the projection tube are discarded and counted. Reductions run
    in path-index order, so the report does not depend on ``workers``.

    :param fields: Drift f and base diffusion sigma
    :param epsilons: Positive noise levels in decreasing order
    :param n_paths: Number of Brownian paths per level
    :param workers: Threads running paths concurrently
    :return: Rows per eps and the least-squares slope of log error against log eps
    :raises ConfigurationError: If the noise levels are not positive and decreasing
    """
    levels = [float(epsilon) for epsilon in epsilons]
    if not levels or any(epsilon <= 0.0 for epsilon in levels) or any(a <= b for a, b in zip(levels, levels[1:])):
        raise ConfigurationError(f"Noise levels must be positive and strictly decreasing, got {levels}")
    if n_paths < 1:
        raise ConfigurationError(f"Path count must be positive, got {n_paths}")
    warnings = []
    if n_paths < MIN_PATHS:
        message = f"only {n_paths} paths per level; Monte Carlo estimates have low statistical power"
        logger.warning(message)
        warnings.append(message)

    limit = deterministic_limit(moving_set, fields, u0, grid)
    rows = []
    for epsilon in levels:
        perturbed = fields.scaled(epsilon)

        def sup_error(index: int, perturbed: FieldPair = perturbed, epsilon: float = epsilon) -> float | None:
            try:
                solution = euler_project(moving_set, perturbed, u0, brownian_path((master_seed, index), grid))
            except StepTooLargeError as error:
                logger.warning("eps=%g: discarding path %d: %s", epsilon, index, error)
                return None
            return float(np.max(np.linalg.norm(solution.x - limit.x, axis=1)))

        outcomes = _map_paths(sup_error, n_paths, workers)
        retained = np.array([outcome for outcome in outcomes if outcome is not None])
        discarded = n_paths - len(retained)
        if len(retained) == 0:
            rows.append(StabilityRow(epsilon, math.nan, math.nan, 0, discarded))
            continue
        estimate, std_error = _fourth_root_mean(retained)
        logger.info("eps=%g: L4 error %.4e (se %.1e), %d discarded", epsilon, estimate, std_error, discarded)
        rows.append(StabilityRow(epsilon, estimate, std_error, len(retained), discarded))

    usable = [row for row in rows if row.estimate > 0.0 and math.isfinite(row.estimate)]
    slope: float | None = None
    if len(usable) >= 2:
        fit = linregress(np.log([row.epsilon for row in usable]), np.log([row.estimate for row in usable]))
        slope = float(fit.slope)
    return StabilityReport(rows, slope, warnings)


@dataclass(frozen=True)
class MeanEstimate:
    """Monte Carlo mean with its standard error over the retained paths."""

    mean: float
    std_error: float
    n_paths: int
    discarded: int


def reflected_bm_reference(grid: TimeGrid) -> float:
    """Return E[X(T)] of the discretely reflected Brownian motion to first order in sqrt(h).

    The continuous value sqrt(2 T / pi) is the mean of |B_T|; the discrete reflection
    monitors the running minimum at the nodes only, which lowers it by about 0.5826 sqrt(h).
    """
    return math.sqrt(2.0 * grid.horizon / math.pi) + MONITORING_BIAS * math.sqrt(grid.step)


def reflected_bm_mean(n_paths: int, grid: TimeGrid, seed: int, workers: int = 1) -> MeanEstimate:
    """Estimate E[X(T)] for Brownian motion reflected at 0 and started at 0."""
    if n_paths < 2:
        raise ConfigurationError(f"A mean estimate needs at least 2 paths, got {n_paths}")
    halfline = Halfspace([1.0])
    fields = FieldPair.constant([0.0], [1.0])

    def terminal(index: int) -> float | None:
        try:
            solution = euler_project(halfline, fields, [0.0], brownian_path((seed, index), grid))
        except StepTooLargeError:
            return None
        return float(solution.x[-1, 0])

    values = np.array([value for value in _map_paths(terminal, n_paths, workers) if value is not None])
    mean = float(np.mean(values))
    std_error = float(np.std(values, ddof=1)) / math.sqrt(len(values))
    return MeanEstimate(mean, std_error, len(values), n_paths - len(values))
