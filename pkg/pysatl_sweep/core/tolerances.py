from __future__ import annotations

from dataclasses import dataclass

__all__ = ["DEFAULT_TOLERANCES", "Tolerances"]


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances shared by the solvers and the schemes.

    :param boundary: Absolute distance under which a point counts as lying in the set
    :param kkt: Absolute KKT residual accepted by the convex solvers
    :param max_iter: Iteration cap of the iterative solvers
    :param tube_factor: Fraction of the prox constant within which projections are accepted
    :param normal_test: Tolerance of the proximal normal test
    """

    boundary: float = 1e-8
    kkt: float = 1e-10
    max_iter: int = 10_000
    tube_factor: float = 0.9
    normal_test: float = 1e-7


DEFAULT_TOLERANCES = Tolerances()
