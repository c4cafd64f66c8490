"""Linearized-projection stepping of the crowd model."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np

from pysatl_sweep.cones import polyhedron_project
from pysatl_sweep.core.errors import SweepError
from pysatl_sweep.core.handler import Handler
from pysatl_sweep.core.processor import InductiveHandler
from pysatl_sweep.core.types import FloatArray, as_point
from pysatl_sweep.geometry import ConstraintSet
from pysatl_sweep.sde import Seed, brownian_path
from pysatl_sweep.skorohod import Increment

from .config import CrowdConfig
from .contacts import pair_distances

__all__ = ["CrowdRecord", "CrowdStepHandler", "CrowdTrajectory", "crowd_step", "simulate"]

logger = logging.getLogger(__name__)


def _project_linearized(
    constraint_set: ConstraintSet | None, q: FloatArray, t_next: float, predicted: FloatArray
) -> FloatArray:
    if constraint_set is None:
        return predicted
    active = constraint_set.active(t_next, q)
    if not active:
        return predicted
    polyhedron = constraint_set.linearization(t_next, q, active.indices)
    return polyhedron_project(predicted, polyhedron, constraint_set.tolerances).point


def crowd_step(config: CrowdConfig, q: Any, t_next: float, dB: float, step: float | None = None) -> FloatArray:
    """Advance the crowd by one step of the linearized projection scheme.

    The prediction p = q + h U(q) + sigma(t_n, q) dB is projected onto the polyhedron of
    the constraints active at (t_{n+1}, q), linearized at q. Every constraint being convex
    in q, the polyhedron lies inside Q(t_{n+1}).

    :param config: Crowd configuration
    :param q: Feasible configuration at t_n
    :param t_next: Time t_{n+1}
    :param dB: Brownian increment over the step
    :param step: Step length, defaults to the grid step
    :return: Configuration at t_{n+1}
    """
    h = config.grid.step if step is None else step
    point = as_point(q)
    predicted = point + h * config.velocity(point) + config.sigma(t_next - h, point) * dB
    return _project_linearized(config.constraint_set(), point, t_next, predicted)


@dataclass(frozen=True)
class CrowdRecord:
    """Crowd state at one node.

    :param node: Node index
    :param t: Time
    :param q: Stacked centers
    :param min_distance: Smallest D_ij, +inf for a single disk
    :param active_pairs: Number of pairs with D_ij <= rho
    :param reaction: Cumulative projection displacement sum |q_{n+1} - p_n|
    """

    node: int
    t: float
    q: FloatArray
    min_distance: float
    active_pairs: int
    reaction: float


class CrowdStepHandler(InductiveHandler[Increment, CrowdRecord]):
    """Crowd stepper fed by Brownian increments: ``brownian_path(seed, grid) | CrowdStepHandler(config)``."""

    def __init__(self, config: CrowdConfig, source: Handler[Any, Increment] | None = None) -> None:
        """Build the constraint set and the activation threshold of the configuration.

        :param config: Crowd configuration
        :param source: Provider of the Brownian increments, defaults to None
        """
        super().__init__(source)
        self.config = config
        self.constraint_set = config.constraint_set()
        self.threshold = config.activation_threshold()

    def _emit_initial(self) -> bool:
        return True

    def _initialize_state(self) -> CrowdRecord:
        """Return the record of the initial configuration."""
        return self._record(0, 0.0, self.config.q0.copy(), 0.0)

    def _update_state(self, state: CrowdRecord, value: Increment) -> CrowdRecord:
        """Take one linearized projection step from ``state`` with the increment ``value``.

        :raises SweepError: If the polyhedron projection fails; the node index is attached
        """
        config = self.config
        predicted = state.q + value.step * config.velocity(state.q) + config.sigma(state.t, state.q) * value.delta[0]
        try:
            q = _project_linearized(self.constraint_set, state.q, value.t, predicted)
        except SweepError as error:
            raise error.at_node(value.node) from None
        return self._record(value.node, value.t, q, state.reaction + float(np.linalg.norm(q - predicted)))

    def _compute_result(self, state: CrowdRecord) -> CrowdRecord:
        return state

    def _record(self, node: int, t: float, q: FloatArray, reaction: float) -> CrowdRecord:
        distances = pair_distances(self.config, q, t)
        if len(distances) == 0:
            return CrowdRecord(node, t, q, np.inf, 0, reaction)
        return CrowdRecord(node, t, q, float(np.min(distances)), int(np.sum(distances <= self.threshold)), reaction)


@dataclass(frozen=True)
class CrowdTrajectory:
    """Simulated crowd path, possibly cut short by an error.

    :param records: One record per completed node
    :param seed: Seed of the Brownian path
    :param status: "completed" or "aborted"
    :param error: Error record of an aborted run: type, message and node
    """

    records: list[CrowdRecord]
    seed: tuple[int, ...]
    status: str
    error: dict[str, Any] | None = None

    @property
    def t(self) -> FloatArray:
        return np.array([record.t for record in self.records])

    @property
    def positions(self) -> FloatArray:
        """Centers as an array of shape (n_nodes, N, 2)."""
        return np.array([record.q.reshape(-1, 2) for record in self.records])

    @property
    def min_distance(self) -> FloatArray:
        return np.array([record.min_distance for record in self.records])

    @property
    def active_pairs(self) -> list[int]:
        return [record.active_pairs for record in self.records]

    @property
    def reaction(self) -> FloatArray:
        return np.array([record.reaction for record in self.records])

    def header(self) -> list[str]:
        n_disks = len(self.records[0].q) // 2 if self.records else 0
        coordinates = [f"q{i}_{axis}" for i in range(1, n_disks + 1) for axis in ("x", "y")]
        return ["t", *coordinates, "min_D", "active_pairs"]

    def to_rows(self) -> list[list[Any]]:
        return [
            [record.t, *record.q.tolist(), record.min_distance, record.active_pairs] for record in self.records
        ]


def simulate(config: CrowdConfig, seed: Seed) -> CrowdTrajectory:
    """Run the crowd model over the configured grid on the Brownian path of the given seed.

    Errors stop the simulation; the nodes computed so far are kept and the error is
    recorded instead of raised.
    """
    path = brownian_path(seed, config.grid)
    records: list[CrowdRecord] = []
    try:
        for record in path | CrowdStepHandler(config):
            records.append(record)
    except SweepError as error:
        logger.warning("crowd simulation aborted: %s", error)
        details = {"type": type(error).__name__, "message": error.message, "node": error.node}
        return CrowdTrajectory(records, path.seed, "aborted", details)
    logger.info("crowd simulation: %d nodes, min D %.3e", len(records), min(r.min_distance for r in records))
    return CrowdTrajectory(records, path.seed, "completed")
