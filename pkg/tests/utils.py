import json
from pathlib import Path
from typing import Any

import numpy as np

from pysatl_sweep.core.grid import TimeGrid
from pysatl_sweep.core.random import make_generator
from pysatl_sweep.core.types import FloatArray
from pysatl_sweep.skorohod import Driver


def dense_simplex_min_norm(points: Any, resolution: int) -> float:
    """Brute-force min |sum w_i p_i| over a grid of the probability simplex (two or three points)."""
    data = np.asarray(points, dtype=np.float64)
    steps = np.linspace(0.0, 1.0, resolution + 1)
    if len(data) == 2:
        weights = np.column_stack((steps, 1.0 - steps))
    else:
        first, second = (axis.ravel() for axis in np.meshgrid(steps, steps))
        keep = first + second <= 1.0
        weights = np.column_stack((first[keep], second[keep], 1.0 - first[keep] - second[keep]))
    return float(np.min(np.linalg.norm(weights @ data, axis=1)))


def random_piecewise_linear_driver(seed: int, grid: TimeGrid, knots: int = 20, scale: float = 1.0) -> Driver:
    """Scalar driver interpolating a Gaussian random walk on equispaced knots."""
    rng = make_generator(seed)
    values = np.concatenate(([0.0], np.cumsum(scale * rng.standard_normal(knots))))
    return Driver.from_samples(np.interp(grid.nodes, np.linspace(0.0, grid.horizon, knots + 1), values), grid)


def center_of_mass(positions: FloatArray) -> FloatArray:
    """Mean center per node of an (n_nodes, N, 2) array."""
    return np.asarray(positions.mean(axis=1), dtype=np.float64)


def write_scenario(path: Path, document: dict[str, Any]) -> Path:
    path.write_text(json.dumps(document), encoding="utf-8")
    return path
