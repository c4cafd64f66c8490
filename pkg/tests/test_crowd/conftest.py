import numpy as np
import pytest

from pysatl_sweep.core.grid import TimeGrid
from pysatl_sweep.crowd import CrowdConfig, VelocityField


@pytest.fixture
def head_on() -> CrowdConfig:
    return CrowdConfig(
        positions=np.array([[-1.0, 0.0], [1.0, 0.0]]),
        radii=[0.5, 0.5],
        velocity=VelocityField.constant([[1.0, 0.0], [-1.0, 0.0]]),
        grid=TimeGrid(1.0, 0.01),
    )


@pytest.fixture
def noisy_head_on() -> CrowdConfig:
    return CrowdConfig(
        positions=np.array([[-1.0, 0.0], [1.0, 0.0]]),
        radii=[0.5, 0.5],
        velocity=VelocityField.constant([[1.0, 0.0], [-1.0, 0.0]]),
        grid=TimeGrid(1.0, 0.01),
        noise=[0.05, 0.0, -0.05, 0.0],
    )
