"""Prediction-correction schemes as inductive handlers over a stream of increments."""

from __future__ import annotations

import logging
from abc import abstractmethod
from dataclasses import dataclass
from typing import Any

import numpy as np

from pysatl_sweep.core.errors import ConfigurationError, SweepError
from pysatl_sweep.core.handler import Handler
from pysatl_sweep.core.processor import InductiveHandler
from pysatl_sweep.core.types import FloatArray, as_point
from pysatl_sweep.geometry import MovingSet

from .driver import Increment
from .solution import StepRecord

__all__ = ["CatchingUpHandler", "ProjectionSchemeHandler", "SchemeState"]

logger = logging.getLogger(__name__)


@dataclass
class SchemeState:
    """Scheme state at one node: the point x, the driver l, the running variation of k and the contact flag."""

    node: int
    t: float
    x: FloatArray
    driver: FloatArray
    tv_k: float
    contact: bool


class ProjectionSchemeHandler(InductiveHandler[Increment, StepRecord]):
    """Base of the schemes x_{n+1} = P_{C(t_{n+1})}(x_n + prediction).

    Subclasses supply the predicted displacement; the handler projects, tracks the driver
    l (the sum of the predicted displacements) and the reaction k = l - x, and emits one
    record per node including node 0. Errors raised by the projection get the node index
    attached.

    :param moving_set: The moving set C
    :param u0: Initial point, in C(0) within the boundary tolerance
    :param driver_start: Driver value l(0), defaults to u0
    :param source: Provider of the increments
    """

    def __init__(
        self,
        moving_set: MovingSet,
        u0: Any,
        driver_start: Any = None,
        source: Handler[Any, Increment] | None = None,
    ) -> None:
        """Check the initial data and create the scheme.

        :param moving_set: The moving set C
        :param u0: Initial point, in C(0) within the boundary tolerance
        :param driver_start: Driver value l(0), defaults to u0
        :param source: Provider of the increments, defaults to None
        :raises ConfigurationError: If the dimensions differ or u0 is outside C(0)
        """
        super().__init__(source)
        self.moving_set = moving_set
        self.u0 = as_point(u0)
        self.driver_start = self.u0.copy() if driver_start is None else as_point(driver_start)
        if self.u0.size != moving_set.dim or self.driver_start.size != moving_set.dim:
            raise ConfigurationError(f"Initial point and driver must have dimension {moving_set.dim}")
        distance = moving_set.distance(0.0, self.u0)
        if distance > moving_set.boundary_tolerance:
            raise ConfigurationError(f"Initial point lies at distance {distance:.6g} outside C(0)")

    @abstractmethod
    def _predict(self, state: SchemeState, increment: Increment) -> tuple[FloatArray, ...]:
        """Return the terms of the displacement added to x_n before projecting.

        The predicted point is x_n + terms[0] + terms[1] + ..., summed left to right, so a
        scalar recursion written in the same order is reproduced exactly.
        """
        pass

    def _emit_initial(self) -> bool:
        return True

    def _initialize_state(self) -> SchemeState:
        return SchemeState(0, 0.0, self.u0.copy(), self.driver_start.copy(), 0.0, False)

    def _update_state(self, state: SchemeState, value: Increment) -> SchemeState:
        """Predict, project onto C(t_{n+1}) and accumulate the driver and the variation of k.

        :raises StepTooLargeError: If the predicted point leaves the projection tube
        :raises SolverError: If the projection fails
        """
        predicted, displacement = state.x, np.zeros_like(state.x)
        for term in self._predict(state, value):
            predicted = predicted + term
            displacement = displacement + term
        try:
            x = self.moving_set.project(value.t, predicted)
        except SweepError as error:
            raise error.at_node(value.node) from None
        correction = float(np.linalg.norm(predicted - x))
        contact = correction > self.moving_set.boundary_tolerance
        if contact:
            logger.debug("node %d: projection moved the predicted point by %.3e", value.node, correction)
        return SchemeState(value.node, value.t, x, state.driver + displacement, state.tv_k + correction, contact)

    def _compute_result(self, state: SchemeState) -> StepRecord:
        """Return the node record with the reaction k = l - x."""
        return StepRecord(state.node, state.t, state.x, state.driver - state.x, state.driver, state.tv_k, state.contact)


class CatchingUpHandler(ProjectionSchemeHandler):
    """Catching-up scheme x_{n+1} = P_{C(t_{n+1})}(x_n + l(t_{n+1}) - l(t_n)).

    Example:
        ```python
        grid = TimeGrid(1.0, 0.1)
        wall = Halfspace([1.0])
        records = list(Driver.from_function(lambda t: -t, grid) | CatchingUpHandler(wall, [0.0]))
        records[-1].k  # array([-1.])
        ```
    """

    def _predict(self, state: SchemeState, increment: Increment) -> tuple[FloatArray, ...]:
        return (increment.delta,)
