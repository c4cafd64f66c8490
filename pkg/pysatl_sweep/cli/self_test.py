"""Fast in-process acceptance checks run by ``pysatl-sweep self-test``."""

from __future__ import annotations

import logging
import math
from collections.abc import Callable

import numpy as np

from pysatl_sweep.core.errors import ReverseTriangleError, SweepError
from pysatl_sweep.core.grid import TimeGrid
from pysatl_sweep.core.random import make_generator
from pysatl_sweep.crowd import CrowdConfig, VelocityField, simulate
from pysatl_sweep.geometry import (
    BallExterior,
    ConstraintSet,
    DiskContactConstraint,
    Halfspace,
    Window,
    gamma_estimate,
    good_direction,
    hypomonotonicity_check,
)
from pysatl_sweep.skorohod import Driver, catching_up, halfline_reflection_oracle

from .commands import ExitCode

__all__ = ["SELF_TEST_CHECKS", "self_test"]

logger = logging.getLogger(__name__)


def check_halfline_oracle() -> str | None:
    grid = TimeGrid(1.0, 1e-3)
    halfline = Halfspace([1.0])
    for seed in range(20):
        rng = make_generator(seed)
        knots = np.linspace(0.0, 1.0, 21)
        values = np.concatenate(([0.0], np.cumsum(rng.standard_normal(20))))
        driver = Driver.from_samples(np.interp(grid.nodes, knots, values), grid)
        u0 = float(rng.uniform(0.0, 1.0))
        error = np.max(np.abs(catching_up(halfline, driver, [u0]).x[:, 0] - halfline_reflection_oracle(driver, u0)))
        if error > 1e-14:
            return f"driver {seed}: catching-up differs from the reflection recursion by {error:.3e}"
    return None


def check_gamma() -> str | None:
    gamma = gamma_estimate([[1.0, 0.0], [0.0, 1.0]])
    if abs(gamma - math.sqrt(2.0)) > 1e-6:
        return f"orthogonal normals give gamma {gamma}"
    try:
        gamma_estimate([[1.0, 0.0], [-1.0, 0.0]])
    except ReverseTriangleError:
        return None
    return "antipodal normals were not rejected"


def check_hypomonotonicity() -> str | None:
    exterior = BallExterior([0.0, 0.0], 1.0)
    window = Window.cube(3.0, 2)
    violations = hypomonotonicity_check(exterior, 0.0, 1.0, 2000, 0, window)
    if violations:
        return f"{len(violations)} violations with the true constant"
    if not hypomonotonicity_check(exterior, 0.0, 10.0, 2000, 0, window):
        return "an overstated constant went undetected"
    return None


def check_good_direction() -> str | None:
    rng = make_generator(1)
    for trial in range(20):
        radius = float(rng.uniform(0.2, 1.0))
        contact = ConstraintSet(
            [DiskContactConstraint(0, 1, radius, radius, 2)], alpha=math.sqrt(2.0), beta=math.sqrt(2.0)
        )
        first = rng.uniform(-1.0, 1.0, 2)
        angle = float(rng.uniform(0.0, 2.0 * math.pi))
        second = first + 2.0 * radius * np.array([math.cos(angle), math.sin(angle)])
        certificate = good_direction(contact, 0.0, np.concatenate((first, second)))
        if np.any(certificate.inner_products < certificate.nu - 1e-12):
            return f"trial {trial}: certificate below nu = {certificate.nu}"
    return None


def check_crowd_symmetry() -> str | None:
    config = CrowdConfig(
        positions=[[-1.0, 0.0], [1.0, 0.0]],
        radii=[0.5, 0.5],
        velocity=VelocityField.constant([[1.0, 0.0], [-1.0, 0.0]]),
        grid=TimeGrid(1.0, 0.01),
        noise=[0.05, 0.0, -0.05, 0.0],
    )
    for seed in range(5):
        trajectory = simulate(config, seed)
        if trajectory.status != "completed":
            return f"seed {seed}: {trajectory.error}"
        if np.min(trajectory.min_distance) < -1e-8:
            return f"seed {seed}: disks overlap by {-np.min(trajectory.min_distance):.3e}"
        drift = np.max(np.abs(np.diff(trajectory.positions.mean(axis=1), axis=0)))
        if drift > 1e-10:
            return f"seed {seed}: center of mass moved by {drift:.3e}"
    return None


SELF_TEST_CHECKS: dict[str, Callable[[], str | None]] = {
    "half-line oracle": check_halfline_oracle,
    "reverse triangle constant": check_gamma,
    "hypomonotonicity": check_hypomonotonicity,
    "good direction": check_good_direction,
    "crowd symmetry": check_crowd_symmetry,
}


def self_test(checks: dict[str, Callable[[], str | None]] | None = None) -> ExitCode:
    """Run every check, log PASS or FAIL for each and return the exit status."""
    failures = 0
    for name, check in (SELF_TEST_CHECKS if checks is None else checks).items():
        try:
            problem = check()
        except SweepError as error:
            problem = f"raised {type(error).__name__}: {error}"
        if problem is None:
            logger.info("PASS %s", name)
        else:
            failures += 1
            logger.error("FAIL %s: %s", name, problem)
    logger.log(logging.ERROR if failures else logging.INFO, "self-test: %d failed", failures)
    return ExitCode.FAILED if failures else ExitCode.OK
