import dataclasses
import math

import numpy as np
import pytest

from pysatl_sweep.core.errors import ConfigurationError
from pysatl_sweep.core.grid import TimeGrid
from pysatl_sweep.geometry import Halfspace
from pysatl_sweep.skorohod import (
    Driver,
    bv_uniformity,
    catching_up,
    halfline_reflection_oracle,
    holder_stability_check,
    refine_compare,
    support_check,
)
from tests.utils import random_piecewise_linear_driver


@pytest.fixture
def sine_driver() -> Driver:
    return Driver.from_function(lambda t: math.sin(5.0 * t), TimeGrid(1.0, 1e-3))


class TestOracle:
    def test_reflection_recursion(self) -> None:
        np.testing.assert_array_equal(halfline_reflection_oracle([0.0, -1.0, 1.0], 0.0), [0.0, 0.0, 2.0])

    def test_vector_driver_is_rejected(self) -> None:
        with pytest.raises(ConfigurationError):
            halfline_reflection_oracle(np.zeros((3, 2)), 0.0)

    def test_negative_start_is_rejected(self) -> None:
        with pytest.raises(ConfigurationError):
            halfline_reflection_oracle([0.0, 1.0], -0.5)


class TestSupportCheck:
    def test_catching_up_solution_passes(self, halfline: Halfspace, sine_driver: Driver) -> None:
        solution = catching_up(halfline, sine_driver, [0.0])
        assert solution.contact.any()
        assert support_check(solution, halfline, 1e-9) == []

    def test_infeasible_points_are_reported(self, halfline: Halfspace, sine_driver: Driver) -> None:
        solution = catching_up(halfline, sine_driver, [0.0])
        shifted = dataclasses.replace(solution, x=solution.x - 2.0)
        violations = support_check(shifted, halfline, 1e-9)
        assert violations
        assert all("outside" in violation.reasons for violation in violations)

    def test_reaction_pointing_inward_is_reported(self, halfline: Halfspace, sine_driver: Driver) -> None:
        solution = catching_up(halfline, sine_driver, [0.0])
        flipped = dataclasses.replace(solution, k=-solution.k)
        reasons = {reason for violation in support_check(flipped, halfline, 1e-9) for reason in violation.reasons}
        assert "not-normal" in reasons


class TestRefinement:
    def test_rows_by_decreasing_step(self, halfline: Halfspace, sine_driver: Driver) -> None:
        rows = refine_compare(halfline, sine_driver, [0.0], [0.01, 0.1, 0.05])
        assert [row.step for row in rows] == [0.1, 0.05, 0.01]
        assert all(row.sup_error <= 10.0 * row.step for row in rows)

    def test_unnested_step(self, halfline: Halfspace, sine_driver: Driver) -> None:
        with pytest.raises(ConfigurationError):
            refine_compare(halfline, sine_driver, [0.0], [0.3])


class TestBvUniformity:
    def test_variation_of_reaction_is_stable(self, halfline: Halfspace, sine_driver: Driver) -> None:
        report = bv_uniformity(halfline, sine_driver, [0.0], [0.001, 0.002, 0.005, 0.01])
        assert report.steps == (0.01, 0.005, 0.002, 0.001)
        assert report.spread < 0.1
        assert report.budget_ratio is not None
        assert 0.0 < report.budget_ratio <= 1.0

    def test_needs_a_step(self, halfline: Halfspace, sine_driver: Driver) -> None:
        with pytest.raises(ConfigurationError):
            bv_uniformity(halfline, sine_driver, [0.0], [])


class TestHolderStability:
    def test_nearby_drivers(self, halfline: Halfspace) -> None:
        grid = TimeGrid(1.0, 1e-3)
        driver = Driver.from_function(lambda t: math.sin(5.0 * t), grid)
        other = Driver.from_function(lambda t: 1.1 * math.sin(5.0 * t), grid)
        assert holder_stability_check(halfline, driver, other, [0.0], 4.0).ok
        report = holder_stability_check(halfline, driver, other, [0.0], 1e-6)
        assert not report.ok
        assert report.lhs > report.rhs

    @pytest.mark.parametrize("seed", range(20))
    @pytest.mark.parametrize("wall", [Halfspace([1.0]), Halfspace([1.0], lambda t: t)], ids=["fixed", "moving"])
    def test_random_driver_pairs(self, wall: Halfspace, seed: int) -> None:
        grid = TimeGrid(1.0, 1e-3)
        driver = random_piecewise_linear_driver(seed, grid)
        nudge = random_piecewise_linear_driver(seed + 1000, grid, scale=0.05)
        other = Driver.from_samples(driver.samples + nudge.samples, grid)
        report = holder_stability_check(wall, driver, other, [0.0], 4.0)
        assert report.ok, (report.lhs, report.rhs)

    def test_nonpositive_constant(self, halfline: Halfspace, sine_driver: Driver) -> None:
        with pytest.raises(ConfigurationError):
            holder_stability_check(halfline, sine_driver, sine_driver, [0.0], 0.0)
