import numpy as np
import pytest

from pysatl_sweep.core.errors import ConfigurationError
from pysatl_sweep.core.grid import TimeGrid
from pysatl_sweep.sde import BrownianPath, brownian_path, brownian_refine


class TestBrownianPath:
    def test_same_seed_same_path(self) -> None:
        grid = TimeGrid(1.0, 1e-3)
        np.testing.assert_array_equal(brownian_path(7, grid).increments, brownian_path(7, grid).increments)
        np.testing.assert_array_equal(brownian_path(7, grid).increments, brownian_path((7,), grid).increments)

    def test_distinct_keys_give_distinct_paths(self) -> None:
        grid = TimeGrid(1.0, 1e-2)
        base = brownian_path(7, grid).increments
        assert not np.array_equal(base, brownian_path(8, grid).increments)
        assert not np.array_equal(base, brownian_path((7, 0), grid).increments)

    def test_values_start_at_zero(self) -> None:
        path = brownian_path(1, TimeGrid(1.0, 0.1))
        values = path.values()
        assert values[0] == 0.0
        assert len(values) == 11
        assert values[-1] == pytest.approx(float(np.sum(path.increments)))

    def test_increment_variance_matches_step(self) -> None:
        grid = TimeGrid(1.0, 1e-5)
        increments = brownian_path(11, grid).increments
        assert np.var(increments) / grid.step == pytest.approx(1.0, abs=0.02)

    def test_iteration_yields_scalar_increments(self) -> None:
        path = brownian_path(2, TimeGrid(1.0, 0.25))
        increments = list(path)
        assert [increment.node for increment in increments] == [1, 2, 3, 4]
        assert all(increment.delta.shape == (1,) for increment in increments)

    def test_increment_count_must_match_grid(self) -> None:
        with pytest.raises(ConfigurationError):
            BrownianPath(0, TimeGrid(1.0, 0.5), np.zeros(3))


class TestBrownianRefine:
    def test_fine_increments_sum_to_coarse(self) -> None:
        coarse = brownian_path(5, TimeGrid(1.0, 0.1))
        fine = brownian_refine(coarse)
        assert fine.level == 1
        assert fine.grid.step == pytest.approx(0.05)
        np.testing.assert_allclose(fine.increments[0::2] + fine.increments[1::2], coarse.increments, atol=1e-15)
        np.testing.assert_allclose(fine.values()[0::2], coarse.values(), atol=1e-14)

    def test_refinement_is_deterministic(self) -> None:
        coarse = brownian_path(5, TimeGrid(1.0, 0.1))
        twice = brownian_refine(brownian_refine(coarse))
        np.testing.assert_array_equal(coarse.refine().refine().increments, twice.increments)

    def test_midpoint_spread(self) -> None:
        coarse = brownian_path(9, TimeGrid(1.0, 1e-4))
        fine = brownian_refine(coarse)
        deviation = fine.increments[0::2] - 0.5 * coarse.increments
        assert np.var(deviation) / (coarse.grid.step / 4.0) == pytest.approx(1.0, abs=0.05)

    def test_needs_uniform_grid(self) -> None:
        with pytest.raises(ConfigurationError):
            brownian_refine(brownian_path(0, TimeGrid(1.0, 0.3)))
