"""Command bodies: build the library objects of a scenario, run them and collect tables."""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Any

import numpy as np

from pysatl_sweep.core import errors
from pysatl_sweep.core.errors import (
    ConfigurationError,
    ReverseTriangleError,
    SolverError,
    StepTooLargeError,
    SweepError,
)
from pysatl_sweep.crowd import simulate
from pysatl_sweep.geometry import (
    ConstraintSet,
    MovingSet,
    good_direction,
    hausdorff_estimate,
    hypomonotonicity_check,
)
from pysatl_sweep.sde import brownian_path, euler_project, pathwise_convergence, stability_sweep
from pysatl_sweep.skorohod import catching_up, refine_compare, support_check

from .scenario import (
    CrowdScenario,
    GeometryCheckScenario,
    Scenario,
    SdeScenario,
    SkorohodScenario,
    StabilityScenario,
)

__all__ = ["ExitCode", "RunResult", "Table", "exit_code_for", "geometry_check", "run", "sweep"]

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    OK = 0
    FAILED = 1
    CONFIG = 2
    STEP_TOO_LARGE = 3
    SOLVER = 4
    IO = 5


def exit_code_for(error_type: type[BaseException]) -> ExitCode:
    """Map an exception class to the process exit status."""
    if issubclass(error_type, ConfigurationError):
        return ExitCode.CONFIG
    if issubclass(error_type, StepTooLargeError):
        return ExitCode.STEP_TOO_LARGE
    if issubclass(error_type, SolverError):
        return ExitCode.SOLVER
    if issubclass(error_type, OSError):
        return ExitCode.IO
    return ExitCode.FAILED


@dataclass
class Table:
    """One CSV output: file name, header and rows."""

    filename: str
    header: list[str]
    rows: list[list[Any]]


@dataclass
class RunResult:
    """Everything a command produced, written out by :func:`pysatl_sweep.cli.output.write_result`.

    :param command: Command name
    :param scenario: Resolved scenario
    :param tables: CSV outputs
    :param report: Structured report written as JSON, if any
    :param summary: Scalar results recorded in the manifest
    :param seeds: Random keys used, recorded in the manifest
    :param error: Error record with type, message and node when the run failed
    """

    command: str
    scenario: Scenario
    tables: list[Table] = field(default_factory=list)
    report: dict[str, Any] | None = None
    summary: dict[str, Any] = field(default_factory=dict)
    seeds: dict[str, Any] = field(default_factory=dict)
    error: dict[str, Any] | None = None

    @property
    def status(self) -> str:
        return "completed" if self.error is None else "failed"

    @property
    def exit_code(self) -> ExitCode:
        if self.error is None:
            return ExitCode.OK
        return exit_code_for(getattr(errors, self.error["type"], SweepError))

    def fail(self, error: SweepError) -> RunResult:
        logger.error("%s failed: %s", self.command, error)
        self.error = _error_record(error)
        return self


def _error_record(error: SweepError) -> dict[str, Any]:
    record: dict[str, Any] = {"type": type(error).__name__, "message": error.message, "node": error.node}
    if isinstance(error, StepTooLargeError):
        record.update(distance=error.distance, eta=error.eta)
    return record


def _run_skorohod(result: RunResult, scenario: SkorohodScenario) -> None:
    tolerances = scenario.tolerances.build()
    moving_set = scenario.moving_set.build(tolerances)
    driver = scenario.driver.build(scenario.grid.build())
    solution = catching_up(moving_set, driver, scenario.u0)
    violations = support_check(solution, moving_set, tolerances.normal_test)
    result.tables.append(Table("trajectory.csv", solution.header(), solution.to_rows()))
    result.summary.update(
        nodes=len(solution),
        tv_k=float(solution.tv_k[-1]),
        contacts=int(np.sum(solution.contact)),
        support_violations=len(violations),
    )


def _run_sde(result: RunResult, scenario: SdeScenario) -> None:
    tolerances = scenario.tolerances.build()
    moving_set = scenario.moving_set.build(tolerances)
    path = brownian_path(scenario.seed, scenario.grid.build())
    result.seeds["brownian"] = list(path.seed)
    solution = euler_project(moving_set, scenario.field_pair.build(), scenario.u0, path)
    result.tables.append(Table("trajectory.csv", solution.header(), solution.to_rows()))
    result.summary.update(nodes=len(solution), tv_k=float(solution.tv_k[-1]))


def _run_stability(result: RunResult, scenario: StabilityScenario) -> None:
    tolerances = scenario.tolerances.build()
    result.seeds.update(master_seed=scenario.seed, paths=scenario.paths)
    report = stability_sweep(
        scenario.moving_set.build(tolerances),
        scenario.field_pair.build(),
        scenario.u0,
        scenario.grid.build(),
        scenario.epsilons,
        scenario.paths,
        scenario.seed,
        scenario.workers,
    )
    rows = [[row.epsilon, row.estimate, row.std_error, row.n_paths, row.discarded] for row in report.rows]
    result.tables.append(Table("stability.csv", ["epsilon", "l4_error", "std_error", "n_paths", "discarded"], rows))
    result.summary.update(
        slope=report.slope,
        discarded=sum(row.discarded for row in report.rows),
        warnings=report.warnings,
    )


def _run_crowd(result: RunResult, scenario: CrowdScenario) -> None:
    trajectory = simulate(scenario.build(), scenario.seed)
    result.seeds["brownian"] = list(trajectory.seed)
    result.tables.append(Table("crowd.csv", trajectory.header(), trajectory.to_rows()))
    distances = trajectory.min_distance
    result.summary.update(
        nodes=len(trajectory.records),
        min_distance=float(np.min(distances)) if len(distances) else math.inf,
        max_active_pairs=max(trajectory.active_pairs, default=0),
    )
    if trajectory.error is not None:
        result.error = trajectory.error


def _probe_report(moving_set: MovingSet, t: float, x: list[float]) -> dict[str, Any]:
    entry: dict[str, Any] = {"t": t, "x": x}
    if len(x) != moving_set.dim:
        entry["skipped"] = f"probe has dimension {len(x)}, the set {moving_set.dim}"
        return entry
    if not moving_set.contains(t, x):
        entry["skipped"] = f"infeasible: distance {moving_set.distance(t, x):.6g} to the set"
        return entry
    if not isinstance(moving_set, ConstraintSet):
        entry["skipped"] = "certificates need a constraint set"
        return entry
    active = moving_set.active(t, x)
    entry["active"] = list(active.indices)
    if not active:
        entry["admissible"] = True
        return entry
    try:
        certificate = good_direction(moving_set, t, x)
    except ReverseTriangleError:
        entry.update(gamma=None, reverse_triangle="R_rho fails", admissible=False)
        return entry
    except SolverError as error:
        entry.update(admissible=False, certificate_error=str(error))
        return entry
    entry.update(
        gamma=certificate.gamma,
        direction=certificate.direction.tolist(),
        nu=certificate.nu,
        inner_products=certificate.inner_products.tolist(),
        lipschitz_bound=moving_set.beta / certificate.nu,
        admissible=True,
    )
    return entry


def _run_geometry(result: RunResult, scenario: GeometryCheckScenario) -> None:
    tolerances = scenario.tolerances.build()
    moving_set = scenario.moving_set.build(tolerances)
    window = scenario.window.build()
    result.seeds["sampling"] = scenario.seed

    probes = [_probe_report(moving_set, probe.t, probe.x) for probe in scenario.probes]

    eta = scenario.claimed_eta if scenario.claimed_eta is not None else moving_set.prox_constant
    violations = hypomonotonicity_check(moving_set, scenario.check_time, eta, scenario.samples, scenario.seed, window)
    hypomonotonicity = {
        "t": scenario.check_time,
        "eta": eta,
        "samples": scenario.samples,
        "violations": len(violations),
        "worst_excess": max((violation.lhs - violation.rhs for violation in violations), default=0.0),
    }

    variation = []
    for index, (s, t) in enumerate(scenario.time_pairs):
        estimate = hausdorff_estimate(moving_set, s, moving_set, t, window, scenario.samples, scenario.seed + index)
        v_s, v_t = moving_set.variation(s), moving_set.variation(t)
        bound = None if v_s is None or v_t is None else abs(v_t - v_s)
        ok = None if bound is None else estimate <= bound + tolerances.normal_test
        variation.append({"s": s, "t": t, "estimate": estimate, "bound": bound, "ok": ok})

    result.report = {"probes": probes, "hypomonotonicity": hypomonotonicity, "variation": variation}
    result.summary.update(
        probes=len(probes),
        skipped=sum("skipped" in entry for entry in probes),
        not_admissible=sum(entry.get("admissible") is False for entry in probes),
        hypomonotonicity_violations=len(violations),
    )


def _sweep_skorohod(result: RunResult, scenario: SkorohodScenario) -> None:
    if not scenario.refine_steps:
        raise ConfigurationError("A Skorohod sweep needs refine_steps")
    tolerances = scenario.tolerances.build()
    driver = scenario.driver.build(scenario.grid.build())
    rows = refine_compare(scenario.moving_set.build(tolerances), driver, scenario.u0, scenario.refine_steps)
    table = [[row.step, row.sup_error, row.tv_k] for row in rows]
    result.tables.append(Table("refinement.csv", ["step", "sup_error", "tv_k"], table))
    result.summary["max_sup_error"] = max(row.sup_error for row in rows)


def _sweep_sde(result: RunResult, scenario: SdeScenario) -> None:
    tolerances = scenario.tolerances.build()
    moving_set = scenario.moving_set.build(tolerances)
    fields = scenario.field_pair.build()
    grid = scenario.grid.build()
    result.seeds.update(master_seed=scenario.seed, paths=scenario.paths)
    table: list[list[Any]] = []
    errors_by_path = []
    discarded = 0
    for index in range(scenario.paths):
        try:
            rows = pathwise_convergence(moving_set, fields, scenario.u0, (scenario.seed, index), scenario.levels, grid)
        except StepTooLargeError as error:
            logger.warning("discarding path %d: %s", index, error)
            discarded += 1
            table.append([index, "", "", "", 1])
            continue
        table.extend([index, row.level, row.step, row.sup_error, 0] for row in rows)
        errors_by_path.append([row.sup_error for row in rows])
    result.tables.append(Table("convergence.csv", ["path", "level", "step", "sup_error", "discarded"], table))
    result.summary["discarded"] = discarded
    if not errors_by_path:
        raise StepTooLargeError(f"All {scenario.paths} paths left the projection tube", distance=math.nan, eta=math.nan)
    errors_table = np.array(errors_by_path)
    ratios = errors_table[:, :-1] / np.maximum(errors_table[:, 1:], np.finfo(float).tiny)
    result.summary.update(
        mean_sup_error=np.mean(errors_table, axis=0).tolist(),
        converging_paths=int(np.sum(np.all(ratios >= scenario.min_ratio, axis=1))),
    )


_RUNNERS: dict[type, Callable[[RunResult, Any], None]] = {
    SkorohodScenario: _run_skorohod,
    SdeScenario: _run_sde,
    StabilityScenario: _run_stability,
    CrowdScenario: _run_crowd,
    GeometryCheckScenario: _run_geometry,
}

_SWEEPS: dict[type, Callable[[RunResult, Any], None]] = {
    SkorohodScenario: _sweep_skorohod,
    SdeScenario: _sweep_sde,
    StabilityScenario: _run_stability,
}


def _execute(command: str, scenario: Scenario, table: dict[type, Callable[[RunResult, Any], None]]) -> RunResult:
    body = table.get(type(scenario))
    if body is None:
        raise ConfigurationError(f"Command {command} does not accept {scenario.kind} scenarios")
    result = RunResult(command, scenario)
    logger.info("%s: %s scenario", command, scenario.kind)
    try:
        body(result, scenario)
    except SweepError as error:
        return result.fail(error)
    return result


def run(scenario: Scenario) -> RunResult:
    """Run a scenario of any kind; failures while building or running are recorded in the result."""
    return _execute("run", scenario, _RUNNERS)


def sweep(scenario: Scenario) -> RunResult:
    """Refinement table of a Skorohod scenario, pathwise convergence of an SDE scenario or a stability sweep.

    :raises ConfigurationError: If the scenario kind has no sweep
    """
    return _execute("sweep", scenario, _SWEEPS)


def geometry_check(scenario: Scenario) -> RunResult:
    """Certificate report of a geometry-check scenario.

    :raises ConfigurationError: If the scenario is of another kind
    """
    return _execute("geometry-check", scenario, {GeometryCheckScenario: _run_geometry})
