import math
from typing import Any

import numpy as np
import pytest

from pysatl_sweep.core.grid import TimeGrid
from pysatl_sweep.core.types import FloatArray
from pysatl_sweep.geometry import BallExterior, Halfspace, SmoothConstraint


class ExpCeilingConstraint(SmoothConstraint):
    """g(t, x) = -exp(-x_1) - x_2 - t, whose normal turns against (0, 1) as x_1 grows."""

    def __init__(self) -> None:
        super().__init__(2, 1.0)

    def value(self, t: float, x: FloatArray) -> float:
        return -math.exp(-x[0]) - x[1] - t

    def gradient(self, t: float, x: FloatArray) -> FloatArray:
        return np.array([math.exp(-x[0]), -1.0])


@pytest.fixture
def halfline() -> Halfspace:
    return Halfspace([1.0])


@pytest.fixture
def moving_halfline() -> Halfspace:
    return Halfspace([1.0], lambda t: t)


@pytest.fixture
def unit_ball_exterior() -> BallExterior:
    return BallExterior([0.0, 0.0], 1.0)


@pytest.fixture
def unit_grid() -> TimeGrid:
    return TimeGrid(1.0, 1e-3)


@pytest.fixture
def exp_ceiling() -> ExpCeilingConstraint:
    return ExpCeilingConstraint()


@pytest.fixture
def halfline_scenario() -> dict[str, Any]:
    return {
        "schema_version": 1,
        "kind": "skorohod",
        "moving_set": {"kind": "halfspace", "normal": [1.0]},
        "driver": {"name": "sine", "amplitude": [1.0], "frequency": 5.0},
        "u0": [0.0],
        "grid": {"horizon": 1.0, "step": 0.01},
    }


@pytest.fixture
def crowd_headon_scenario() -> dict[str, Any]:
    return {
        "schema_version": 1,
        "kind": "crowd",
        "disks": [{"position": [-1.0, 0.0], "radius": 0.5}, {"position": [1.0, 0.0], "radius": 0.5}],
        "velocity": {"name": "constant", "velocities": [[1.0, 0.0], [-1.0, 0.0]]},
        "grid": {"horizon": 1.0, "step": 0.01},
        "noise": [0.05, 0.0, -0.05, 0.0],
        "seed": 0,
    }
