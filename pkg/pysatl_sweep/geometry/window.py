from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from pysatl_sweep.core.errors import ConfigurationError
from pysatl_sweep.core.types import FloatArray, as_point

__all__ = ["Window"]


@dataclass(frozen=True)
class Window:
    """Axis-aligned box [lower, upper] used as the sampling region of the estimators.

    :param lower: Lower corner
    :param upper: Upper corner
    """

    lower: FloatArray
    upper: FloatArray

    def __post_init__(self) -> None:
        lower, upper = as_point(self.lower), as_point(self.upper)
        if lower.shape != upper.shape or np.any(lower >= upper):
            raise ConfigurationError(f"Invalid sampling window [{lower}, {upper}]")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def cube(cls, half_width: float, dim: int, center: Sequence[float] | None = None) -> Window:
        middle = np.zeros(dim) if center is None else as_point(center)
        return cls(middle - half_width, middle + half_width)

    @property
    def dim(self) -> int:
        return int(self.lower.size)

    def sample(self, rng: np.random.Generator, n: int) -> FloatArray:
        """Draw n points uniformly in the box."""
        return rng.uniform(self.lower, self.upper, size=(n, self.dim))
