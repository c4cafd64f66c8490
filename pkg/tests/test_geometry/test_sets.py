import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pysatl_sweep.core.errors import ConfigurationError, InvalidSetError, StepTooLargeError
from pysatl_sweep.geometry import (
    BallExterior,
    BallExteriorUnion,
    Halfspace,
    MovingSet,
    WholeSpace,
    Window,
    dilate,
    project_ball_exterior,
    project_halfspace,
)

coordinates = st.floats(min_value=-100.0, max_value=100.0, allow_nan=False)


class TestProjections:
    def test_halfspace_projection(self) -> None:
        np.testing.assert_array_equal(project_halfspace([1.0, 1.0], 0.0, [-1.0, -1.0]), [0.0, 0.0])

    def test_feasible_point_is_returned(self) -> None:
        np.testing.assert_array_equal(project_halfspace([1.0, 0.0], 0.0, [2.0, -3.0]), [2.0, -3.0])

    def test_zero_normal_is_rejected(self) -> None:
        with pytest.raises(InvalidSetError):
            project_halfspace([0.0, 0.0], 0.0, [1.0, 1.0])

    @given(st.lists(coordinates, min_size=2, max_size=2), st.lists(coordinates, min_size=2, max_size=2), coordinates)
    def test_halfspace_projection_is_feasible_and_idempotent(self, a: list[float], z: list[float], b: float) -> None:
        if np.linalg.norm(a) < 0.1:
            return
        projected = project_halfspace(a, b, z)
        assert float(np.dot(a, projected)) >= b - 1e-9 * (1.0 + abs(b) + float(np.linalg.norm(a) * np.linalg.norm(z)))
        np.testing.assert_allclose(project_halfspace(a, b, projected), projected, atol=1e-9)

    def test_ball_exterior_projection_is_radial(self) -> None:
        np.testing.assert_allclose(project_ball_exterior([0.0, 0.0], 2.0, [0.0, 0.5]), [0.0, 2.0])

    def test_ball_center_goes_along_first_axis(self) -> None:
        np.testing.assert_array_equal(project_ball_exterior([1.0, 1.0], 1.0, [1.0, 1.0]), [2.0, 1.0])

    def test_nonpositive_radius_is_rejected(self) -> None:
        with pytest.raises(ConfigurationError):
            project_ball_exterior([0.0], 0.0, [1.0])


class TestHalfspace:
    def test_moving_halfline(self, moving_halfline: Halfspace) -> None:
        np.testing.assert_array_equal(moving_halfline.project(0.5, [0.2]), [0.5])
        assert moving_halfline.distance(0.5, [0.2]) == pytest.approx(0.3)
        assert moving_halfline.contains(0.5, [0.7])

    def test_convex_set_has_infinite_constants(self, halfline: Halfspace) -> None:
        assert math.isinf(halfline.prox_constant)
        assert math.isinf(halfline.tube_radius())

    def test_variation_is_scaled_offset(self) -> None:
        wall = Halfspace([0.0, 2.0], lambda t: 4.0 * t)
        assert wall.variation(1.0) == pytest.approx(2.0)

    def test_zero_normal_is_rejected(self) -> None:
        with pytest.raises(InvalidSetError):
            Halfspace([0.0])

    def test_dimension_mismatch_is_rejected(self, halfline: Halfspace) -> None:
        with pytest.raises(ConfigurationError):
            halfline.project(0.0, [1.0, 2.0])

    def test_nonfinite_point_is_rejected(self, halfline: Halfspace) -> None:
        with pytest.raises(ConfigurationError):
            halfline.project(0.0, [math.nan])


class TestBallExterior:
    def test_projection_inside_tube(self, unit_ball_exterior: BallExterior) -> None:
        np.testing.assert_allclose(unit_ball_exterior.project(0.0, [0.5, 0.0]), [1.0, 0.0])
        assert unit_ball_exterior.distance(0.0, [0.5, 0.0]) == pytest.approx(0.5)

    def test_point_outside_tube_is_refused(self, unit_ball_exterior: BallExterior) -> None:
        with pytest.raises(StepTooLargeError) as info:
            unit_ball_exterior.project(0.0, [0.0, 0.0])
        assert info.value.distance == pytest.approx(1.0)
        assert info.value.eta == pytest.approx(1.0)

    def test_moving_center(self) -> None:
        ball = BallExterior([0.0, 0.0], 1.0, velocity=[1.0, 0.0])
        np.testing.assert_allclose(ball.center_at(2.0), [2.0, 0.0])
        assert ball.variation(2.0) == pytest.approx(2.0)
        assert ball.distance(2.0, [2.5, 0.0]) == pytest.approx(0.5)

    def test_invalid_arguments(self) -> None:
        with pytest.raises(ConfigurationError):
            BallExterior([0.0, 0.0], -1.0)
        with pytest.raises(ConfigurationError):
            BallExterior([0.0, 0.0], 1.0, velocity=[1.0])


class TestBallExteriorUnion:
    def test_projects_onto_containing_sphere(self) -> None:
        union = BallExteriorUnion([[0.0, 0.0], [5.0, 0.0]], [1.0, 2.0])
        np.testing.assert_allclose(union.project(0.0, [3.5, 0.0]), [3.0, 0.0])
        assert union.prox_constant == 1.0
        assert union.contains(0.0, [2.0, 0.0])

    def test_overlapping_balls_are_rejected(self) -> None:
        with pytest.raises(InvalidSetError):
            BallExteriorUnion([[0.0, 0.0], [1.0, 0.0]], [1.0, 1.0])

    def test_radius_count_must_match(self) -> None:
        with pytest.raises(ConfigurationError):
            BallExteriorUnion([[0.0, 0.0]], [1.0, 2.0])


@pytest.mark.parametrize(
    "moving_set, window",
    [
        (BallExterior([0.0, 0.0], 1.0), Window.cube(1.5, 2)),
        (BallExterior([1.0, -1.0], 0.5, velocity=[0.5, 0.0]), Window.cube(1.0, 2, center=[1.5, -1.0])),
        (BallExteriorUnion([[0.0, 0.0], [5.0, 0.0]], [1.0, 2.0]), Window.cube(4.0, 2, center=[2.5, 0.0])),
    ],
    ids=["unit", "moving", "union"],
)
class TestProjectionProperties:
    def test_idempotent(self, moving_set: MovingSet, window: Window) -> None:
        rng = np.random.default_rng(1)
        checked = 0
        for z in window.sample(rng, 400):
            if moving_set.distance(1.0, z) >= moving_set.tube_radius():
                continue
            projected = moving_set.project(1.0, z)
            np.testing.assert_allclose(moving_set.project(1.0, projected), projected, atol=1e-12)
            checked += 1
        assert checked > 100

    def test_nearest_among_sampled_points(self, moving_set: MovingSet, window: Window) -> None:
        rng = np.random.default_rng(2)
        feasible = moving_set.sample_interior(1.0, window, 2000, rng)
        for z in window.sample(rng, 200):
            distance = moving_set.distance(1.0, z)
            if distance == 0.0 or distance >= moving_set.tube_radius():
                continue
            projected = moving_set.project(1.0, z)
            assert moving_set.contains(1.0, projected)
            assert float(np.linalg.norm(z - projected)) == pytest.approx(distance, abs=1e-12)
            assert np.min(np.linalg.norm(feasible - z, axis=1)) >= distance - 1e-12


class TestDilatedSet:
    def test_dilated_ball_exterior(self, unit_ball_exterior: BallExterior) -> None:
        ring = dilate(unit_ball_exterior, 0.1)
        assert ring.distance(0.0, [0.0, 0.0]) == pytest.approx(0.9)
        np.testing.assert_allclose(ring.project(0.0, [0.5, 0.0]), [0.9, 0.0])
        assert ring.prox_constant == pytest.approx(0.125)
        assert ring.tube_radius() == pytest.approx(0.8)

    @pytest.mark.parametrize("radius", [0.05, 0.1])
    def test_distance_is_base_distance_less_radius(self, unit_ball_exterior: BallExterior, radius: float) -> None:
        ring = dilate(unit_ball_exterior, radius)
        rng = np.random.default_rng(3)
        for z in Window.cube(1.5, 2).sample(rng, 300):
            base = unit_ball_exterior.distance(0.0, z)
            assert ring.distance(0.0, z) == pytest.approx(max(0.0, base - radius), abs=1e-12)
            if base <= radius or base >= unit_ball_exterior.tube_radius():
                continue
            projected = ring.project(0.0, z)
            assert float(np.linalg.norm(z - projected)) == pytest.approx(base - radius, abs=1e-12)
            assert unit_ball_exterior.distance(0.0, projected) == pytest.approx(radius, abs=1e-12)

    def test_dilated_halfline(self, halfline: Halfspace) -> None:
        thick = dilate(halfline, 0.5)
        np.testing.assert_allclose(thick.project(0.0, [-2.0]), [-0.5])
        assert thick.distance(0.0, [-0.25]) == 0.0

    def test_radius_beyond_eighth_of_eta_is_rejected(self, unit_ball_exterior: BallExterior) -> None:
        with pytest.raises(ConfigurationError):
            dilate(unit_ball_exterior, 0.2)


class TestWholeSpaceAndWindow:
    def test_identity_projection(self) -> None:
        space = WholeSpace(3)
        np.testing.assert_array_equal(space.project(0.0, [1.0, -2.0, 3.0]), [1.0, -2.0, 3.0])
        assert space.variation(5.0) == 0.0

    def test_window_samples_lie_in_box(self) -> None:
        window = Window.cube(2.0, 3, center=[1.0, 1.0, 1.0])
        samples = window.sample(np.random.default_rng(0), 100)
        assert samples.shape == (100, 3)
        assert np.all(samples >= -1.0)
        assert np.all(samples <= 3.0)

    def test_degenerate_window_is_rejected(self) -> None:
        with pytest.raises(ConfigurationError):
            Window(np.array([0.0, 1.0]), np.array([1.0, 1.0]))

    def test_sampling_needs_matching_window(self, unit_ball_exterior: BallExterior) -> None:
        with pytest.raises(ConfigurationError):
            unit_ball_exterior.sample_interior(0.0, Window.cube(1.0, 3), 10, np.random.default_rng(0))
