from __future__ import annotations

import logging
from typing import Any

from pysatl_sweep.core.grid import TimeGrid
from pysatl_sweep.geometry import MovingSet

from .driver import Driver
from .scheme import CatchingUpHandler
from .solution import SkorohodSolution

__all__ = ["catching_up"]

logger = logging.getLogger(__name__)


def catching_up(moving_set: MovingSet, driver: Driver, u0: Any, grid: TimeGrid | None = None) -> SkorohodSolution:
    """Solve the discrete sweeping process driven by l with the catching-up scheme.

    :param moving_set: Moving set C
    :param driver: Driver l sampled on its grid
    :param u0: Initial point in C(0)
    :param grid: Sub-grid of the driver's grid to run on, defaults to the driver's grid
    :return: The sampled solution, one entry per node
    :raises ConfigurationError: If u0 is not in C(0) or the grid is not a sub-grid
    :raises StepTooLargeError: If a predicted point leaves the projection tube
    :raises SolverError: If a projection fails; the error carries the node index

    Example:
        ```python
        solution = catching_up(Halfspace([1.0]), Driver.from_function(lambda t: -t, TimeGrid(1.0, 0.1)), [0.0])
        solution.tv_k[-1]  # 1.0
        ```
    """
    if grid is not None and grid != driver.grid:
        driver = driver.restrict(grid)
    logger.debug("catching-up on %d nodes for %r", len(driver.grid), moving_set)
    pipeline = driver | CatchingUpHandler(moving_set, u0, driver_start=driver.samples[0])
    return SkorohodSolution.from_records(pipeline)
