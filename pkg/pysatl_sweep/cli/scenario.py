"""Scenario files: versioned JSON documents validated by pydantic models.

Each scenario kind is one model discriminated by ``kind``; nested set, constraint,
driver, field and velocity entries are discriminated by ``kind`` or ``name`` and build
the corresponding library objects. Unknown keys are rejected.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Annotated, Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError, model_validator

from pysatl_sweep.core.errors import ConfigurationError
from pysatl_sweep.core.grid import TimeGrid
from pysatl_sweep.core.random import make_generator
from pysatl_sweep.core.tolerances import Tolerances
from pysatl_sweep.crowd import CrowdConfig, VelocityField, Wall
from pysatl_sweep.geometry import (
    AffineConstraint,
    BallExterior,
    BallExteriorUnion,
    ConstraintSet,
    DiskContactConstraint,
    Halfspace,
    MovingSet,
    RadiusSchedule,
    SmoothConstraint,
    WallDistanceConstraint,
    Window,
    dilate,
)
from pysatl_sweep.sde import FieldPair
from pysatl_sweep.skorohod import Driver, Provenance

from .overrides import apply_overrides

__all__ = [
    "SCHEMA_VERSION",
    "CrowdScenario",
    "GeometryCheckScenario",
    "Scenario",
    "SdeScenario",
    "SkorohodScenario",
    "StabilityScenario",
    "load_scenario",
    "parse_scenario",
]

SCHEMA_VERSION = 1

Vector = Annotated[list[float], Field(min_length=1)]
PlanarPoint = Annotated[list[float], Field(min_length=2, max_length=2)]


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class GridSpec(StrictModel):
    horizon: float = Field(gt=0)
    step: float = Field(gt=0)

    def build(self) -> TimeGrid:
        return TimeGrid(self.horizon, self.step)


class ToleranceSpec(StrictModel):
    boundary: float = Field(default=1e-8, gt=0)
    kkt: float = Field(default=1e-10, gt=0)
    max_iter: int = Field(default=10_000, gt=0)
    tube_factor: float = Field(default=0.9, gt=0, le=1)
    normal_test: float = Field(default=1e-7, gt=0)

    def build(self) -> Tolerances:
        return Tolerances(**self.model_dump())


class WindowSpec(StrictModel):
    lower: Vector
    upper: Vector

    def build(self) -> Window:
        return Window(np.array(self.lower), np.array(self.upper))


class HalfspaceSpec(StrictModel):
    """Half-space {<a, y> >= b + c t}; with d = 1 and a = 1 the half-line [b + c t, inf)."""

    kind: Literal["halfspace"]
    normal: Vector
    offset: float = 0.0
    velocity: float = 0.0

    def build(self, tolerances: Tolerances) -> MovingSet:
        if self.velocity == 0.0:
            return Halfspace(self.normal, self.offset, tolerances)
        offset, velocity = self.offset, self.velocity
        return Halfspace(self.normal, lambda t: offset + velocity * t, tolerances)


class BallExteriorSpec(StrictModel):
    kind: Literal["ball_exterior"]
    center: Vector
    radius: float = Field(gt=0)
    velocity: Vector | None = None

    def build(self, tolerances: Tolerances) -> MovingSet:
        return BallExterior(self.center, self.radius, self.velocity, tolerances)


class BallExteriorUnionSpec(StrictModel):
    kind: Literal["ball_exterior_union"]
    centers: list[Vector] = Field(min_length=1)
    radii: list[Annotated[float, Field(gt=0)]] = Field(min_length=1)

    def build(self, tolerances: Tolerances) -> MovingSet:
        return BallExteriorUnion(self.centers, self.radii, tolerances)


class DilatedSpec(StrictModel):
    kind: Literal["dilated"]
    base: SetSpec
    radius: float = Field(gt=0)

    def build(self, tolerances: Tolerances) -> MovingSet:
        return dilate(self.base.build(tolerances), self.radius)


class AffineSpec(StrictModel):
    name: Literal["affine"]
    normal: Vector
    offset: float = 0.0
    velocity: float = 0.0

    def build(self) -> SmoothConstraint:
        return AffineConstraint(self.normal, self.offset, self.velocity)


class DiskContactSpec(StrictModel):
    name: Literal["disk_contact"]
    i: int = Field(ge=0)
    j: int = Field(ge=0)
    radius_i: float = Field(gt=0)
    radius_j: float = Field(gt=0)
    rate_i: float = 0.0
    rate_j: float = 0.0
    n_disks: int = Field(ge=2)

    @model_validator(mode="after")
    def check_disks(self) -> DiskContactSpec:
        if max(self.i, self.j) >= self.n_disks:
            raise ValueError(f"disk index out of range for {self.n_disks} disks")
        return self

    def build(self) -> SmoothConstraint:
        return DiskContactConstraint(
            self.i,
            self.j,
            RadiusSchedule(self.radius_i, self.rate_i),
            RadiusSchedule(self.radius_j, self.rate_j),
            self.n_disks,
        )


class WallDistanceSpec(StrictModel):
    name: Literal["wall_distance"]
    disk: int = Field(ge=0)
    point: PlanarPoint
    normal: PlanarPoint
    radius: float = Field(gt=0)
    rate: float = 0.0
    n_disks: int = Field(ge=1)

    @model_validator(mode="after")
    def check_disk(self) -> WallDistanceSpec:
        if self.disk >= self.n_disks:
            raise ValueError(f"disk index {self.disk} out of range for {self.n_disks} disks")
        return self

    def build(self) -> SmoothConstraint:
        return WallDistanceConstraint(
            self.disk, self.point, self.normal, RadiusSchedule(self.radius, self.rate), self.n_disks
        )


ConstraintSpec = Annotated[AffineSpec | DiskContactSpec | WallDistanceSpec, Field(discriminator="name")]


class ConstraintSetSpec(StrictModel):
    """Q(t) = {g_i(t, x) >= 0} over the built-in constraint catalogue."""

    kind: Literal["constraint_set"]
    constraints: list[ConstraintSpec] = Field(min_length=1)
    alpha: float = Field(gt=0)
    beta: float = Field(gt=0)
    hessian_bound: float = Field(default=0.0, ge=0)
    threshold: float = Field(default=0.1, ge=0)
    gamma: float | None = Field(default=None, ge=1)
    eta: float | None = Field(default=None, gt=0)

    def build(self, tolerances: Tolerances) -> MovingSet:
        return ConstraintSet(
            [constraint.build() for constraint in self.constraints],
            alpha=self.alpha,
            beta=self.beta,
            hessian_bound=self.hessian_bound,
            threshold=self.threshold,
            gamma=self.gamma,
            eta=self.eta,
            tolerances=tolerances,
        )


SetSpec = Annotated[
    HalfspaceSpec | BallExteriorSpec | BallExteriorUnionSpec | DilatedSpec | ConstraintSetSpec,
    Field(discriminator="kind"),
]
DilatedSpec.model_rebuild()


class LinearDriverSpec(StrictModel):
    """l(t) = start + slope t."""

    name: Literal["linear"]
    start: Vector
    slope: Vector

    def build(self, grid: TimeGrid) -> Driver:
        start, slope = np.array(self.start), np.array(self.slope)
        if start.shape != slope.shape:
            raise ConfigurationError("Linear driver needs start and slope of the same dimension")
        return Driver.from_function(lambda t: start + slope * t, grid)


class SineDriverSpec(StrictModel):
    """l(t) = amplitude sin(frequency t + phase)."""

    name: Literal["sine"]
    amplitude: Vector
    frequency: float
    phase: float = 0.0

    def build(self, grid: TimeGrid) -> Driver:
        amplitude = np.array(self.amplitude)
        frequency, phase = self.frequency, self.phase
        return Driver.from_function(lambda t: amplitude * math.sin(frequency * t + phase), grid)


class PiecewiseLinearDriverSpec(StrictModel):
    """Linear interpolation of knot values; constant beyond the last knot."""

    name: Literal["piecewise_linear"]
    times: list[float] = Field(min_length=2)
    values: list[Vector] = Field(min_length=2)

    @model_validator(mode="after")
    def check_knots(self) -> PiecewiseLinearDriverSpec:
        if len(self.times) != len(self.values):
            raise ValueError("piecewise linear driver needs one value per knot")
        if any(a >= b for a, b in zip(self.times, self.times[1:])):
            raise ValueError("knot times must be strictly increasing")
        if len({len(value) for value in self.values}) != 1:
            raise ValueError("knot values must share one dimension")
        return self

    def build(self, grid: TimeGrid) -> Driver:
        knots, values = np.array(self.times), np.array(self.values)
        samples = np.column_stack([np.interp(grid.nodes, knots, column) for column in values.T])
        return Driver(samples, grid, Provenance.ANALYTIC)


class RandomWalkDriverSpec(StrictModel):
    """Piecewise linear driver through a seeded Gaussian random walk on equispaced knots."""

    name: Literal["random_walk"]
    dim: int = Field(default=1, ge=1)
    knots: int = Field(default=20, ge=1)
    scale: float = Field(default=1.0, ge=0)
    seed: int = 0

    def build(self, grid: TimeGrid) -> Driver:
        steps = make_generator(self.seed).standard_normal((self.knots, self.dim)) * self.scale
        values = np.vstack([np.zeros(self.dim), np.cumsum(steps, axis=0)])
        knots = np.linspace(0.0, grid.horizon, self.knots + 1)
        samples = np.column_stack([np.interp(grid.nodes, knots, column) for column in values.T])
        return Driver(samples, grid, Provenance.SAMPLED)


DriverSpec = Annotated[
    LinearDriverSpec | SineDriverSpec | PiecewiseLinearDriverSpec | RandomWalkDriverSpec,
    Field(discriminator="name"),
]


class ConstantFieldSpec(StrictModel):
    name: Literal["constant"]
    drift: Vector
    diffusion: Vector

    def build(self) -> FieldPair:
        return FieldPair.constant(self.drift, self.diffusion)


class LinearFieldSpec(StrictModel):
    """f(t, x) = offset + matrix x with a constant diffusion."""

    name: Literal["linear"]
    offset: Vector
    matrix: list[Vector]
    diffusion: Vector

    def build(self) -> FieldPair:
        return FieldPair.linear(self.offset, self.matrix, self.diffusion)


class ZeroFieldSpec(StrictModel):
    name: Literal["zero"]
    dim: int = Field(ge=1)

    def build(self) -> FieldPair:
        return FieldPair.zero(self.dim)


FieldSpec = Annotated[ConstantFieldSpec | LinearFieldSpec | ZeroFieldSpec, Field(discriminator="name")]


class ConstantVelocitySpec(StrictModel):
    name: Literal["constant"]
    velocities: list[PlanarPoint] = Field(min_length=1)

    def build(self, n_disks: int) -> VelocityField:
        if len(self.velocities) != n_disks:
            raise ConfigurationError(f"Expected {n_disks} constant velocities, got {len(self.velocities)}")
        return VelocityField.constant(self.velocities)


class TargetVelocitySpec(StrictModel):
    name: Literal["target"]
    point: PlanarPoint
    speed: float = Field(ge=0)
    slowdown: float = Field(default=1.0, gt=0)

    def build(self, n_disks: int) -> VelocityField:
        return VelocityField.target(self.point, self.speed, n_disks, self.slowdown)


class CorridorVelocitySpec(StrictModel):
    name: Literal["corridor"]
    exit_point: PlanarPoint
    speed: float = Field(ge=0)
    width: float = Field(gt=0)
    slowdown: float = Field(default=1.0, gt=0)

    def build(self, n_disks: int) -> VelocityField:
        return VelocityField.corridor(self.exit_point, self.speed, self.width, n_disks, self.slowdown)


VelocitySpec = Annotated[
    ConstantVelocitySpec | TargetVelocitySpec | CorridorVelocitySpec, Field(discriminator="name")
]


class DiskSpec(StrictModel):
    position: PlanarPoint
    radius: float = Field(gt=0)
    rate: float = 0.0


class WallSpec(StrictModel):
    point: PlanarPoint
    normal: PlanarPoint


class ProbeSpec(StrictModel):
    t: float = 0.0
    x: Vector


class ScenarioBase(StrictModel):
    schema_version: Literal[1] = SCHEMA_VERSION
    tolerances: ToleranceSpec = Field(default_factory=ToleranceSpec)


class SkorohodScenario(ScenarioBase):
    """Catching-up solution of the Skorohod problem; ``refine_steps`` feeds the refinement sweep."""

    kind: Literal["skorohod"]
    moving_set: SetSpec
    driver: DriverSpec
    u0: Vector
    grid: GridSpec
    refine_steps: list[Annotated[float, Field(gt=0)]] = Field(default_factory=list)


class SdeScenario(ScenarioBase):
    """Projected Euler scheme on the Brownian path keyed by ``seed``.

    The sweep runs the pathwise convergence study on ``paths`` paths keyed (seed, i),
    each refined ``levels - 1`` times.
    """

    kind: Literal["sde"]
    moving_set: SetSpec
    field_pair: FieldSpec
    u0: Vector
    grid: GridSpec
    seed: int = 0
    paths: int = Field(default=1, ge=1)
    levels: int = Field(default=5, ge=3)
    min_ratio: float = Field(default=1.2, gt=0)


class StabilityScenario(ScenarioBase):
    kind: Literal["stability"]
    moving_set: SetSpec
    field_pair: FieldSpec
    u0: Vector
    grid: GridSpec
    epsilons: list[Annotated[float, Field(gt=0)]] = Field(min_length=1)
    paths: int = Field(default=200, ge=1)
    seed: int = 0
    workers: int = Field(default=1, ge=1)


class CrowdScenario(ScenarioBase):
    kind: Literal["crowd"]
    disks: list[DiskSpec] = Field(min_length=1)
    velocity: VelocitySpec
    grid: GridSpec
    noise: float | list[float] = 0.0
    threshold: float | None = Field(default=None, ge=0)
    walls: list[WallSpec] = Field(default_factory=list)
    eta: float | None = Field(default=None, gt=0)
    seed: int = 0

    def build(self) -> CrowdConfig:
        return CrowdConfig(
            positions=np.array([disk.position for disk in self.disks]),
            radii=[RadiusSchedule(disk.radius, disk.rate) for disk in self.disks],
            velocity=self.velocity.build(len(self.disks)),
            grid=self.grid.build(),
            noise=self.noise,
            threshold=self.threshold,
            walls=[Wall(np.array(wall.point), np.array(wall.normal)) for wall in self.walls],
            eta=self.eta,
            tolerances=self.tolerances.build(),
        )


class GeometryCheckScenario(ScenarioBase):
    """Pointwise certificates of a set: probes, hypomonotonicity at ``check_time`` and time pairs."""

    kind: Literal["geometry-check"]
    moving_set: SetSpec
    window: WindowSpec
    probes: list[ProbeSpec] = Field(default_factory=list)
    time_pairs: list[tuple[float, float]] = Field(default_factory=list)
    samples: int = Field(default=1000, ge=1)
    seed: int = 0
    claimed_eta: float | None = Field(default=None, gt=0)
    check_time: float = 0.0


Scenario = Annotated[
    SkorohodScenario | SdeScenario | StabilityScenario | CrowdScenario | GeometryCheckScenario,
    Field(discriminator="kind"),
]

_ADAPTER: TypeAdapter[Scenario] = TypeAdapter(Scenario)


def parse_scenario(data: Any, overrides: list[str] | tuple[str, ...] = ()) -> Scenario:
    """Validate a decoded scenario document and apply dotted ``key=value`` overrides.

    Overrides are applied to the fully resolved document, defaults included, which is
    then validated again.

    :raises ConfigurationError: If the document or an override is invalid
    """
    try:
        scenario = _ADAPTER.validate_python(data)
        if not overrides:
            return scenario
        resolved = apply_overrides(scenario.model_dump(mode="json"), overrides)
        return _ADAPTER.validate_python(resolved)
    except ValidationError as error:
        raise ConfigurationError(f"Invalid scenario: {error}") from None


def load_scenario(path: str | Path, overrides: list[str] | tuple[str, ...] = ()) -> Scenario:
    """Read a JSON scenario file.

    :raises ConfigurationError: If the file cannot be read, decoded or validated
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as error:
        raise ConfigurationError(f"Cannot read scenario {path}: {error}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as error:
        raise ConfigurationError(f"Scenario {path} is not valid JSON: {error}") from None
    return parse_scenario(data, overrides)
