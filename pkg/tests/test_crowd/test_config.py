import math

import numpy as np
import pytest

from pysatl_sweep.core.errors import ConfigurationError
from pysatl_sweep.core.grid import TimeGrid
from pysatl_sweep.crowd import CrowdConfig, VelocityField, Wall
from pysatl_sweep.geometry import RadiusSchedule

GRID = TimeGrid(1.0, 0.01)


def still(n_disks: int) -> VelocityField:
    return VelocityField.constant(np.zeros((n_disks, 2)))


class TestCrowdConfig:
    def test_default_threshold(self, head_on: CrowdConfig) -> None:
        assert head_on.activation_threshold() == pytest.approx(2.0 * 0.01 * math.sqrt(2.0))

    def test_threshold_accounts_for_noise(self, noisy_head_on: CrowdConfig) -> None:
        expected = 2.0 * (0.01 * math.sqrt(2.0) + 4.0 * math.sqrt(0.005) * 0.1)
        assert noisy_head_on.activation_threshold() == pytest.approx(expected)

    def test_scalar_noise_is_broadcast(self) -> None:
        config = CrowdConfig(np.array([[0.0, 0.0]]), [1.0], still(1), GRID, noise=0.3)
        np.testing.assert_allclose(config.sigma(0.0, config.q0), [0.3, 0.3])

    def test_constraints_order(self) -> None:
        wall = Wall(np.array([0.0, -5.0]), np.array([0.0, 1.0]))
        positions = np.array([[0.0, 0.0], [3.0, 0.0], [6.0, 0.0]])
        config = CrowdConfig(positions, [1.0, 1.0, 1.0], still(3), GRID, walls=[wall])
        assert config.pairs() == [(0, 1), (0, 2), (1, 2)]
        assert len(config.constraints()) == 6
        constraint_set = config.constraint_set()
        assert constraint_set is not None
        assert constraint_set.alpha == 1.0
        assert constraint_set.hessian_bound == 1.0

    def test_single_disk_is_unconstrained(self) -> None:
        assert CrowdConfig(np.array([[0.0, 0.0]]), [1.0], still(1), GRID).constraint_set() is None

    def test_overlapping_start_is_rejected(self) -> None:
        with pytest.raises(ConfigurationError, match="overlaps"):
            CrowdConfig(np.array([[0.0, 0.0], [0.5, 0.0]]), [0.5, 0.5], still(2), GRID)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"radii": [0.5]},
            {"radii": [0.5, RadiusSchedule(0.5, -1.0)]},
            {"threshold": -0.1},
            {"noise": lambda t, q: np.zeros(4)},
            {"noise": [0.1, 0.2, 0.3]},
        ],
    )
    def test_invalid_configuration(self, kwargs: dict[str, object]) -> None:
        arguments: dict[str, object] = {
            "positions": np.array([[-1.0, 0.0], [1.0, 0.0]]),
            "radii": [0.5, 0.5],
            "velocity": still(2),
            "grid": GRID,
        }
        arguments.update(kwargs)
        with pytest.raises(ConfigurationError):
            CrowdConfig(**arguments)  # type: ignore[arg-type]


class TestVelocityField:
    def test_constant(self) -> None:
        field = VelocityField.constant([[3.0, 0.0], [0.0, 4.0]])
        assert field.bound == pytest.approx(5.0)
        np.testing.assert_allclose(field(np.zeros(4)), [3.0, 0.0, 0.0, 4.0])

    def test_target_slows_down_nearby(self) -> None:
        field = VelocityField.target([0.0, 0.0], 2.0, 2, slowdown=1.0)
        velocities = field(np.array([4.0, 0.0, 0.5, 0.0]))
        np.testing.assert_allclose(velocities, [-2.0, 0.0, -1.0, 0.0])
        assert field.bound == pytest.approx(2.0 * math.sqrt(2.0))

    def test_corridor_aims_at_the_door(self) -> None:
        field = VelocityField.corridor([10.0, 0.0], 1.0, 2.0, 2)
        velocities = field(np.array([0.0, 0.5, 0.0, 10.0])).reshape(2, 2)
        np.testing.assert_allclose(velocities[0], [1.0, 0.0])
        assert velocities[1, 1] < 0.0

    def test_invalid_fields(self) -> None:
        with pytest.raises(ConfigurationError):
            VelocityField.constant([1.0, 2.0, 3.0])
        with pytest.raises(ConfigurationError):
            VelocityField.target([0.0, 0.0], -1.0, 2)
        with pytest.raises(ConfigurationError):
            VelocityField.corridor([0.0, 0.0], 1.0, 0.0, 2)
