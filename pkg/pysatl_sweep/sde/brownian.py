"""Seeded scalar Brownian paths with deterministic bridge refinement."""

from __future__ import annotations

from collections.abc import Iterator, Sequence

import numpy as np

from pysatl_sweep.core.data_providers import DataProvider
from pysatl_sweep.core.errors import ConfigurationError
from pysatl_sweep.core.grid import TimeGrid
from pysatl_sweep.core.random import make_generator
from pysatl_sweep.core.types import FloatArray
from pysatl_sweep.skorohod import Increment

__all__ = ["BrownianPath", "Seed", "brownian_path", "brownian_refine"]

Seed = int | Sequence[int]


def _key(seed: Seed) -> tuple[int, ...]:
    return (int(seed),) if isinstance(seed, (int, np.integer)) else tuple(int(part) for part in seed)


def _stream(key: tuple[int, ...], level: int) -> np.random.Generator:
    # the key length leads so (s,) and (s, 0) never share a stream
    return make_generator(len(key), level, *key)


class BrownianPath(DataProvider[Increment]):
    """Increments of a real Brownian motion on a time grid.

    The normals of refinement level j are the counter-ordered draws of the Philox stream
    keyed by (seed, j), so the path is a pure function of (seed, grid, level). Iterating
    the path yields the increments as one-dimensional arrays.

    :param seed: Integer seed, or a tuple such as (master_seed, path_index)
    :param grid: Time grid of the increments
    :param increments: Increments B(t_{n+1}) - B(t_n)
    :param level: Number of bridge refinements applied to the level-0 path
    """

    def __init__(self, seed: Seed, grid: TimeGrid, increments: FloatArray, level: int = 0) -> None:
        super().__init__()
        if len(increments) != grid.n_steps:
            raise ConfigurationError(f"Expected {grid.n_steps} increments, got {len(increments)}")
        self.seed = _key(seed)
        self.grid = grid
        self.increments = np.asarray(increments, dtype=np.float64)
        self.level = level

    def values(self) -> FloatArray:
        """Return B(t_n) at every node, B(0) = 0."""
        return np.concatenate(([0.0], np.cumsum(self.increments)))

    def refine(self) -> BrownianPath:
        return brownian_refine(self)

    def __iter__(self) -> Iterator[Increment]:
        nodes = self.grid.nodes
        for node in range(1, len(nodes)):
            t = float(nodes[node])
            yield Increment(node, t, t - float(nodes[node - 1]), self.increments[node - 1 : node])

    def __repr__(self) -> str:
        return f"BrownianPath(seed={self.seed}, steps={self.grid.n_steps}, h={self.grid.step:g}, level={self.level})"


def brownian_path(seed: Seed, grid: TimeGrid) -> BrownianPath:
    """Draw a Brownian path with increments sqrt(t_{n+1} - t_n) * z_n.

    Example:
        ```python
        path = brownian_path(7, TimeGrid(1.0, 1e-3))
        np.array_equal(path.increments, brownian_path(7, TimeGrid(1.0, 1e-3)).increments)  # True
        ```
    """
    key = _key(seed)
    normals = _stream(key, 0).standard_normal(grid.n_steps)
    return BrownianPath(key, grid, np.sqrt(grid.increments()) * normals)


def brownian_refine(path: BrownianPath) -> BrownianPath:
    """Halve the step by Brownian-bridge sampling of the midpoints.

    Over a coarse step of length h with increment D the two fine increments are
    D / 2 + sqrt(h / 4) z and D / 2 - sqrt(h / 4) z, so they sum back to D and the
    midpoint has the bridge law Normal(mean of the endpoints, h / 4).

    :raises ConfigurationError: If the grid step does not divide the horizon
    """
    if not path.grid.is_uniform():
        raise ConfigurationError("Bridge refinement needs a grid whose step divides the horizon")
    level = path.level + 1
    normals = _stream(path.seed, level).standard_normal(path.grid.n_steps)
    half = 0.5 * path.increments
    spread = np.sqrt(path.grid.increments() / 4.0) * normals
    fine = np.empty(2 * path.grid.n_steps)
    fine[0::2] = half + spread
    fine[1::2] = half - spread
    return BrownianPath(path.seed, path.grid.halved(), fine, level)
