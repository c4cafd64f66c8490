"""Exception hierarchy shared by every subpackage.

Configuration problems derive from ValueError and numerical failures from RuntimeError,
so callers that only know the builtin types keep working.
"""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any

__all__ = [
    "AdmissibilityError",
    "ConfigurationError",
    "ConvergenceError",
    "GeometricDegeneracyError",
    "InfeasiblePolyhedronError",
    "InvalidSetError",
    "ReverseTriangleError",
    "SolverError",
    "StepTooLargeError",
    "SweepError",
]


class SweepError(Exception):
    """Base class of all errors raised by pysatl_sweep.

    :param message: Human readable description
    :param node: Grid node (or step index) at which the error occurred, if known
    """

    def __init__(self, message: str, node: int | None = None) -> None:
        super().__init__(message)
        self.message = message
        self.node = node

    def at_node(self, node: int) -> SweepError:
        """Attach the grid node at which the error surfaced and return self."""
        if self.node is None:
            self.node = node
        return self

    def __str__(self) -> str:
        if self.node is None:
            return self.message
        return f"{self.message} (node {self.node})"


class ConfigurationError(SweepError, ValueError):
    """Invalid scenario, parameter out of range, empty sampling window or non-nested grids."""


class InvalidSetError(ConfigurationError):
    """A set definition is degenerate, e.g. a half-space with a zero normal vector."""


class StepTooLargeError(SweepError, RuntimeError):
    """The predicted point left the tube where the projection is single-valued.

    :param distance: Distance of the predicted point to the set
    :param eta: Prox-regularity constant of the set
    """

    def __init__(self, message: str, distance: float, eta: float, node: int | None = None) -> None:
        super().__init__(message, node)
        self.distance = distance
        self.eta = eta


class SolverError(SweepError, RuntimeError):
    """A numerical subroutine failed to produce a certified answer."""


class ConvergenceError(SolverError):
    """An iterative solver hit its iteration cap without satisfying its KKT conditions.

    :param residuals: Named residuals at the last iterate
    """

    def __init__(self, message: str, residuals: Mapping[str, float], node: int | None = None) -> None:
        super().__init__(message, node)
        self.residuals = dict(residuals)

    def __str__(self) -> str:
        details = ", ".join(f"{key}={value:.3e}" for key, value in self.residuals.items())
        return f"{super().__str__()} [{details}]"


class InfeasiblePolyhedronError(SolverError):
    """The dual iterates of a polyhedron projection diverged: the polyhedron is empty."""


class ReverseTriangleError(SolverError):
    """The origin lies in the convex hull of the active unit normals: R_rho fails."""

    def __init__(self, message: str = "R_rho fails: 0 lies in the convex hull of the normals", **kwargs: Any) -> None:
        super().__init__(message, **kwargs)


class AdmissibilityError(SolverError):
    """No good direction could be certified at a boundary point."""


class GeometricDegeneracyError(SolverError):
    """A constraint gradient is undefined, e.g. two disks with coincident centers."""
