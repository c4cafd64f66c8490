import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pytest_mock import MockerFixture

from pysatl_sweep.cones import min_norm_in_hull
from pysatl_sweep.core.errors import ConfigurationError, ConvergenceError
from pysatl_sweep.core.random import make_generator
from tests.utils import dense_simplex_min_norm


@pytest.mark.parametrize(
    "points, distance",
    [
        ([[1.0, 0.0], [0.0, 1.0]], 1.0 / math.sqrt(2.0)),
        ([[1.0, 0.0], [-1.0, 0.0]], 0.0),
        ([[2.0, 1.0], [2.0, -1.0]], 2.0),
        ([[3.0, 4.0]], 5.0),
        ([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]], 1.0 / math.sqrt(3.0)),
    ],
)
def test_hand_computed_distances(points: list[list[float]], distance: float) -> None:
    result = min_norm_in_hull(points)
    assert result.distance == pytest.approx(distance, abs=1e-12)
    assert result.weights.sum() == pytest.approx(1.0)
    assert np.all(result.weights >= 0.0)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=2, max_value=3))
def test_matches_dense_simplex_search(seed: int, m: int) -> None:
    points = make_generator(seed).standard_normal((m, 2)) + np.array([0.5, 0.0])
    result = min_norm_in_hull(points)
    assert result.distance <= dense_simplex_min_norm(points, 400) + 1e-12
    assert result.distance >= dense_simplex_min_norm(points, 400) - 1e-2
    assert result.certificate >= -1e-9


def test_point_count_limits() -> None:
    with pytest.raises(ConfigurationError):
        min_norm_in_hull([])
    with pytest.raises(ConfigurationError):
        min_norm_in_hull(np.ones((65, 2)))


def test_uncertified_corral_exit_is_an_error(mocker: MockerFixture) -> None:
    mocker.patch(
        "pysatl_sweep.cones.hull._affine_minimizer", side_effect=lambda points: np.full(len(points), 1.0 / len(points))
    )
    with pytest.raises(ConvergenceError) as info:
        min_norm_in_hull([[2.0, 0.0], [0.0, 1.0]])
    assert info.value.residuals["certificate"] == pytest.approx(-0.75)
