import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import minimize

from pysatl_sweep.cones import Polyhedron, polyhedron_project
from pysatl_sweep.core.errors import ConfigurationError, InfeasiblePolyhedronError, InvalidSetError
from pysatl_sweep.core.random import make_generator


class TestPolyhedron:
    def test_rows_must_be_nonzero(self) -> None:
        with pytest.raises(InvalidSetError):
            Polyhedron.from_rows([([0.0, 0.0], 1.0)])

    def test_shape_mismatch(self) -> None:
        with pytest.raises(ConfigurationError):
            Polyhedron(np.eye(2), np.zeros(3))

    def test_violation(self) -> None:
        box = Polyhedron(np.vstack([np.eye(2), -np.eye(2)]), np.array([0.0, 0.0, -1.0, -1.0]))
        assert box.violation(np.array([0.5, 0.5])) == pytest.approx(-0.5)
        assert box.contains(np.array([1.0, 0.0]), 0.0)
        assert not box.contains(np.array([1.5, 0.0]), 1e-12)


class TestPolyhedronProject:
    def test_feasible_point_is_returned(self) -> None:
        result = polyhedron_project([2.0, 3.0], Polyhedron.from_rows([([0.0, 1.0], 0.0)]))
        np.testing.assert_array_equal(result.point, [2.0, 3.0])
        assert result.iterations == 0

    @pytest.mark.parametrize(
        "z, expected",
        [([2.0, -3.0], [1.0, 0.0]), ([-1.0, -1.0], [0.0, 0.0]), ([0.5, 2.0], [0.5, 1.0])],
    )
    def test_unit_box(self, z: list[float], expected: list[float]) -> None:
        box = Polyhedron(np.vstack([np.eye(2), -np.eye(2)]), np.array([0.0, 0.0, -1.0, -1.0]))
        result = polyhedron_project(z, box)
        np.testing.assert_allclose(result.point, expected, atol=1e-9)
        assert np.all(result.multipliers >= 0.0)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=1, max_value=6))
    def test_matches_scipy_minimize(self, seed: int, m: int) -> None:
        rng = make_generator(seed)
        normals = rng.standard_normal((m, 3))
        # rows through a common interior point keep the polyhedron nonempty
        center = rng.standard_normal(3)
        offsets = normals @ center - rng.uniform(0.0, 1.0, m)
        z = center + 3.0 * rng.standard_normal(3)
        result = polyhedron_project(z, Polyhedron(normals, offsets))

        reference = minimize(
            lambda y: 0.5 * np.sum((y - z) ** 2),
            center,
            jac=lambda y: y - z,
            constraints=[{"type": "ineq", "fun": lambda y: normals @ y - offsets, "jac": lambda y: normals}],
            method="SLSQP",
            options={"ftol": 1e-14, "maxiter": 500},
        )
        np.testing.assert_allclose(result.point, reference.x, atol=1e-6)
        assert result.violation <= 1e-10

    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=2, max_value=5))
    def test_nonexpansive(self, seed: int, m: int) -> None:
        rng = make_generator(seed)
        normals = rng.standard_normal((m, 3))
        center = rng.standard_normal(3)
        polyhedron = Polyhedron(normals, normals @ center - rng.uniform(0.0, 1.0, m))
        for _ in range(10):
            first, second = center + 3.0 * rng.standard_normal((2, 3))
            difference = polyhedron_project(first, polyhedron).point - polyhedron_project(second, polyhedron).point
            assert np.linalg.norm(difference) <= np.linalg.norm(first - second) + 1e-6

    def test_empty_polyhedron(self) -> None:
        empty = Polyhedron.from_rows([([1.0], 1.0), ([-1.0], 0.0)])
        with pytest.raises(InfeasiblePolyhedronError):
            polyhedron_project([0.5], empty)

    def test_relaxation_range(self) -> None:
        with pytest.raises(ConfigurationError):
            polyhedron_project([0.0], Polyhedron.from_rows([([1.0], 1.0)]), relaxation=2.0)
