import pytest

from pysatl_sweep.core.errors import (
    AdmissibilityError,
    ConfigurationError,
    ConvergenceError,
    GeometricDegeneracyError,
    InfeasiblePolyhedronError,
    InvalidSetError,
    ReverseTriangleError,
    SolverError,
    StepTooLargeError,
    SweepError,
)


@pytest.mark.parametrize(
    "error_type, builtin",
    [
        (ConfigurationError, ValueError),
        (InvalidSetError, ValueError),
        (StepTooLargeError, RuntimeError),
        (ConvergenceError, RuntimeError),
        (InfeasiblePolyhedronError, RuntimeError),
        (ReverseTriangleError, RuntimeError),
        (AdmissibilityError, RuntimeError),
        (GeometricDegeneracyError, RuntimeError),
    ],
)
def test_builtin_bases(error_type: type[SweepError], builtin: type[Exception]) -> None:
    assert issubclass(error_type, SweepError)
    assert issubclass(error_type, builtin)


@pytest.mark.parametrize(
    "error_type", [ConvergenceError, InfeasiblePolyhedronError, ReverseTriangleError, GeometricDegeneracyError]
)
def test_solver_failures_share_a_base(error_type: type[SweepError]) -> None:
    assert issubclass(error_type, SolverError)


def test_node_is_attached_once() -> None:
    error = SweepError("projection failed")
    assert str(error) == "projection failed"
    assert error.at_node(7) is error
    error.at_node(9)
    assert error.node == 7
    assert str(error) == "projection failed (node 7)"


def test_step_too_large_carries_distance() -> None:
    error = StepTooLargeError("too far", distance=0.95, eta=1.0, node=3)
    assert (error.distance, error.eta, error.node) == (0.95, 1.0, 3)


def test_convergence_error_lists_residuals() -> None:
    error = ConvergenceError("cap reached", {"violation": 1e-3})
    assert error.residuals == {"violation": 1e-3}
    assert "violation=1.000e-03" in str(error)


def test_reverse_triangle_message() -> None:
    assert "R_rho fails" in str(ReverseTriangleError())
