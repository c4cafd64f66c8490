from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from pysatl_sweep.core.errors import ConfigurationError

__all__ = ["TimeGrid"]

# relative slack when deciding whether T / h is an integer
_INTEGRAL_SLACK = 1e-9


@dataclass(frozen=True)
class TimeGrid:
    """Uniform partition t_n = n * h of [0, T], the last node clamped to exactly T.

    :param horizon: Final time T
    :param step: Step h, 0 < h <= T
    """

    horizon: float
    step: float
    nodes: np.ndarray[Any, np.dtype[np.float64]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.horizon) and math.isfinite(self.step)):
            raise ConfigurationError("Grid horizon and step must be finite")
        if self.step <= 0 or self.step > self.horizon:
            raise ConfigurationError(f"Grid step must satisfy 0 < h <= T, got h={self.step}, T={self.horizon}")
        ratio = self.horizon / self.step
        count = round(ratio) if abs(ratio - round(ratio)) <= _INTEGRAL_SLACK * ratio else math.ceil(ratio)
        nodes = np.arange(count + 1, dtype=np.float64) * self.step
        nodes[-1] = self.horizon
        object.__setattr__(self, "nodes", nodes)

    @property
    def n_steps(self) -> int:
        return len(self.nodes) - 1

    def __len__(self) -> int:
        return len(self.nodes)

    def increments(self) -> np.ndarray[Any, np.dtype[np.float64]]:
        """Return the step lengths t_{n+1} - t_n (the last one may be shorter than h)."""
        return np.diff(self.nodes)

    def is_uniform(self) -> bool:
        return bool(np.allclose(self.increments(), self.step, rtol=0.0, atol=1e-12 * self.horizon))

    def halved(self) -> TimeGrid:
        """Return the grid with step h / 2 on the same horizon."""
        return TimeGrid(self.horizon, self.step / 2)

    def refinement_factor(self, finer: TimeGrid) -> int:
        """Return m such that every node of this grid is node m * n of ``finer``.

        :raises ConfigurationError: If the grids are not nested
        """
        if not math.isclose(self.horizon, finer.horizon, rel_tol=1e-12):
            raise ConfigurationError("Nested grids must share the horizon")
        ratio = self.step / finer.step
        factor = round(ratio)
        if factor < 1 or abs(ratio - factor) > _INTEGRAL_SLACK * ratio or not self.is_uniform():
            raise ConfigurationError(f"Grid with step {self.step} is not a sub-grid of step {finer.step}")
        if factor * self.n_steps != finer.n_steps:
            raise ConfigurationError(f"Grid with step {self.step} is not a sub-grid of step {finer.step}")
        return factor
