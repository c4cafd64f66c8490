from .commands import ExitCode, RunResult, Table, exit_code_for, geometry_check, run, sweep
from .main import main, parse_args
from .output import format_cell, write_result
from .overrides import apply_overrides, parse_override
from .scenario import (
    SCHEMA_VERSION,
    CrowdScenario,
    GeometryCheckScenario,
    Scenario,
    SdeScenario,
    SkorohodScenario,
    StabilityScenario,
    load_scenario,
    parse_scenario,
)
from .self_test import SELF_TEST_CHECKS, self_test

__all__ = [
    "SCHEMA_VERSION",
    "SELF_TEST_CHECKS",
    "CrowdScenario",
    "ExitCode",
    "GeometryCheckScenario",
    "RunResult",
    "Scenario",
    "SdeScenario",
    "SkorohodScenario",
    "StabilityScenario",
    "Table",
    "apply_overrides",
    "exit_code_for",
    "format_cell",
    "geometry_check",
    "load_scenario",
    "main",
    "parse_args",
    "parse_override",
    "parse_scenario",
    "run",
    "self_test",
    "sweep",
    "write_result",
]
