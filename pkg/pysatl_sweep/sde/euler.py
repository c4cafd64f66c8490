from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Any

import numpy as np

from pysatl_sweep.core.errors import ConfigurationError
from pysatl_sweep.core.handler import Handler
from pysatl_sweep.core.types import FloatArray, as_point
from pysatl_sweep.geometry import MovingSet
from pysatl_sweep.skorohod import Increment, ProjectionSchemeHandler, SchemeState, SkorohodSolution

from .brownian import BrownianPath
from .fields import FieldPair

__all__ = ["EulerProjectHandler", "SdeSolution", "euler_maruyama", "euler_project"]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SdeSolution(SkorohodSolution):
    """Sampled solution (X, K) of a reflected SDE on one Brownian path.

    The driver column holds u0 + sum h f + sum sigma dB, so X + K equals it at every node.

    :param seed: Key of the Brownian path
    :param level: Refinement level of the Brownian path
    """

    seed: tuple[int, ...] = ()
    level: int = 0


class EulerProjectHandler(ProjectionSchemeHandler):
    """Projected Euler step X_{n+1} = P_{C(t_{n+1})}(X_n + h f(t_n, X_n) + sigma(t_n, X_n) dB_n).

    Fed by Brownian increments: ``brownian_path(seed, grid) | EulerProjectHandler(C, fields, u0)``.

    :param moving_set: Moving set C
    :param fields: Drift and diffusion
    :param u0: Initial point in C(0)
    """

    def __init__(
        self, moving_set: MovingSet, fields: FieldPair, u0: Any, source: Handler[Any, Increment] | None = None
    ) -> None:
        """Create the scheme for the given fields.

        :raises ConfigurationError: If the fields and the set differ in dimension, or u0 is outside C(0)
        """
        if fields.dim != moving_set.dim:
            raise ConfigurationError(
                f"Fields of dimension {fields.dim} do not match the set dimension {moving_set.dim}"
            )
        super().__init__(moving_set, u0, source=source)
        self.fields = fields

    def _predict(self, state: SchemeState, increment: Increment) -> tuple[FloatArray, ...]:
        """Return h f(t_n, x_n) and sigma(t_n, x_n) dB_n, in that order."""
        drift = as_point(self.fields.drift(state.t, state.x))
        diffusion = as_point(self.fields.diffusion(state.t, state.x))
        return increment.step * drift, diffusion * float(increment.delta[0])


def euler_project(moving_set: MovingSet, fields: FieldPair, u0: Any, path: BrownianPath) -> SdeSolution:
    """Run the projected Euler scheme on one Brownian path.

    :raises ConfigurationError: If u0 is not in C(0)
    :raises StepTooLargeError: If a predicted point leaves the projection tube; the error names the node
    :raises SolverError: If a projection fails

    Example:
        ```python
        path = brownian_path(3, TimeGrid(1.0, 0.01))
        solution = euler_project(Halfspace([1.0]), FieldPair.constant([0.0], [1.0]), [0.0], path)
        solution.x.min() >= 0.0  # True
        ```
    """
    pipeline = path | EulerProjectHandler(moving_set, fields, u0)
    solution = SdeSolution.from_records(pipeline)
    return replace(solution, seed=path.seed, level=path.level)


def euler_maruyama(fields: FieldPair, u0: Any, path: BrownianPath) -> FloatArray:
    """Unconstrained Euler-Maruyama reference path X_{n+1} = X_n + h f + sigma dB, shape (n_nodes, d)."""
    x = as_point(u0)
    if x.size != fields.dim:
        raise ConfigurationError(f"Initial point must have dimension {fields.dim}")
    nodes = path.grid.nodes
    trajectory = np.empty((len(nodes), fields.dim))
    trajectory[0] = x
    for n, increment in enumerate(path.increments):
        t = float(nodes[n])
        step = float(nodes[n + 1]) - t
        x = x + step * as_point(fields.drift(t, x)) + as_point(fields.diffusion(t, x)) * increment
        trajectory[n + 1] = x
    return trajectory
