from __future__ import annotations

from collections.abc import Callable, Iterator
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np

from pysatl_sweep.core.data_providers import DataProvider
from pysatl_sweep.core.errors import ConfigurationError
from pysatl_sweep.core.grid import TimeGrid
from pysatl_sweep.core.types import FloatArray, as_point

__all__ = ["Driver", "Increment", "Provenance"]


class Provenance(str, Enum):
    """Origin of the samples of a driver."""

    ANALYTIC = "analytic"
    SAMPLED = "sampled"
    STOCHASTIC_INTEGRAL = "stochastic-integral"


@dataclass(frozen=True)
class Increment:
    """Input of one scheme step: the increment over [t_{node - 1}, t_node].

    :param node: Index of the node the step arrives at
    :param t: Time t_node
    :param step: Step length t_node - t_{node - 1}
    :param delta: Increment of the driving signal
    """

    node: int
    t: float
    step: float
    delta: FloatArray


class Driver(DataProvider[Increment]):
    """Continuous driver l: [0, T] -> R^d known by its samples at the grid nodes.

    Between nodes the driver is linearly interpolated. Iterating a driver yields its
    increments over consecutive grid steps, so ``driver | CatchingUpHandler(C, u0)`` runs
    the catching-up scheme.

    :param samples: Values l(t_n) as a (n_nodes, d) array
    :param grid: Time grid of the samples
    :param provenance: Origin of the samples

    Example:
        ```python
        grid = TimeGrid(1.0, 0.25)
        driver = Driver.from_function(lambda t: -t, grid)
        [step.delta for step in driver]  # four increments of -0.25
        ```
    """

    def __init__(self, samples: Any, grid: TimeGrid, provenance: Provenance = Provenance.SAMPLED) -> None:
        super().__init__()
        values = np.asarray(samples, dtype=np.float64)
        if values.ndim == 1:
            values = values[:, None]
        if values.ndim != 2 or len(values) != len(grid):
            raise ConfigurationError(f"Driver needs one sample per grid node ({len(grid)}), got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ConfigurationError("Driver samples must be finite")
        self.samples = values
        self.grid = grid
        self.provenance = provenance

    @classmethod
    def from_function(
        cls, func: Callable[[float], Any], grid: TimeGrid, provenance: Provenance = Provenance.ANALYTIC
    ) -> Driver:
        """Sample a function of time at the grid nodes."""
        return cls(np.vstack([as_point(func(float(t))) for t in grid.nodes]), grid, provenance)

    @classmethod
    def from_samples(cls, samples: Any, grid: TimeGrid) -> Driver:
        return cls(samples, grid, Provenance.SAMPLED)

    @property
    def dim(self) -> int:
        return int(self.samples.shape[1])

    def value(self, t: float) -> FloatArray:
        """Return l(t) by linear interpolation between nodes."""
        if not 0.0 <= t <= self.grid.horizon:
            raise ConfigurationError(f"Time {t} outside [0, {self.grid.horizon}]")
        return np.array([np.interp(t, self.grid.nodes, column) for column in self.samples.T])

    def restrict(self, coarse: TimeGrid) -> Driver:
        """Return the driver sampled on a sub-grid of its own grid.

        :raises ConfigurationError: If the grids are not nested
        """
        factor = coarse.refinement_factor(self.grid)
        return Driver(self.samples[::factor], coarse, self.provenance)

    def total_variation(self) -> float:
        """Return the discrete variation sum |l(t_{n+1}) - l(t_n)|."""
        return float(np.sum(np.linalg.norm(np.diff(self.samples, axis=0), axis=1)))

    def sup_distance(self, other: Driver) -> float:
        """Return max over nodes of |l(t_n) - other(t_n)| on a shared grid."""
        if self.samples.shape != other.samples.shape:
            raise ConfigurationError("Drivers must share the grid and dimension")
        return float(np.max(np.linalg.norm(self.samples - other.samples, axis=1)))

    def __iter__(self) -> Iterator[Increment]:
        nodes = self.grid.nodes
        for node in range(1, len(nodes)):
            t, previous = float(nodes[node]), float(nodes[node - 1])
            yield Increment(node, t, t - previous, self.samples[node] - self.samples[node - 1])

    def __repr__(self) -> str:
        return f"Driver(dim={self.dim}, nodes={len(self.grid)}, provenance={self.provenance.value})"
