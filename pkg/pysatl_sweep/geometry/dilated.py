from __future__ import annotations

import math
from typing import Any

import numpy as np

from pysatl_sweep.core.errors import ConfigurationError
from pysatl_sweep.core.types import FloatArray

from .abstract import MovingSet

__all__ = ["DilatedSet", "dilate"]


class DilatedSet(MovingSet):
    """Dilation C_eps(t) = C(t) + eps B of a moving set.

    The dilation of an eta-prox-regular set by eps < eta / 8 is eta / 8-prox-regular.
    Projections are accepted wherever the base set's projection is, since
    P_{C_eps}(z) = y + eps (z - y) / |z - y| with y = P_C(z).

    :param base: The set to dilate
    :param radius: Dilation radius eps in (0, eta / 8)
    """

    def __init__(self, base: MovingSet, radius: float) -> None:
        super().__init__(base.dim, base.tolerances)
        limit = base.prox_constant / 8.0
        if not 0.0 < radius < limit:
            raise ConfigurationError(f"Dilation radius must lie in (0, eta / 8) = (0, {limit:g}), got {radius}")
        self.base = base
        self.radius = float(radius)

    @property
    def prox_constant(self) -> float:
        return self.base.prox_constant / 8.0

    def tube_radius(self) -> float:
        """Return the base set's tube less the dilation radius.

        This is not ``tube_factor * eta / 8`` with the dilated set's own constant: projections
        go through the base projection, so a point is accepted whenever its base distance is
        inside the base tube. For the unit ball exterior dilated by 0.1 the tube is 0.8, not 0.1125.
        """
        return self.base.tube_radius() - self.radius

    def distance(self, t: float, x: Any) -> float:
        return max(self.base.distance(t, x) - self.radius, 0.0)

    def _project(self, t: float, z: FloatArray) -> FloatArray:
        nearest = self.base.project(t, z)
        offset = z - nearest
        return nearest + self.radius * offset / float(np.linalg.norm(offset))

    def variation(self, t: float) -> float | None:
        return self.base.variation(t)

    def __repr__(self) -> str:
        eta = "inf" if math.isinf(self.prox_constant) else f"{self.prox_constant:g}"
        return f"DilatedSet(base={self.base!r}, radius={self.radius:g}, eta={eta})"


def dilate(base: MovingSet, radius: float) -> DilatedSet:
    """Return the dilation of a set by a closed ball of the given radius.

    :raises ConfigurationError: If the radius is not in (0, eta / 8)

    Example:
        ```python
        ring = dilate(BallExterior([0.0, 0.0], 1.0), 0.1)
        ring.distance(0.0, [0.0, 0.0])  # 0.9
        ring.project(0.0, [0.5, 0.0])  # array([0.9, 0.])
        ```
    """
    return DilatedSet(base, radius)
