from __future__ import annotations

import csv
import json
import logging
from pathlib import Path
from typing import Any

import numpy as np

from .commands import RunResult

__all__ = ["MANIFEST_NAME", "REPORT_NAME", "format_cell", "write_result", "write_table"]

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"
REPORT_NAME = "geometry_report.json"


def format_cell(value: Any) -> str:
    """Format a CSV cell; floats use the shortest representation that round-trips."""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, np.integer):
        return str(int(value))
    return str(value)


def write_table(path: Path, header: list[str], rows: list[list[Any]]) -> None:
    with path.open("w", newline="", encoding="utf-8") as stream:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([format_cell(value) for value in row] for row in rows)


def _plain(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"Cannot serialize {type(value).__name__}")


def _write_json(path: Path, document: Any) -> None:
    path.write_text(json.dumps(document, indent=2, sort_keys=True, default=_plain) + "\n", encoding="utf-8")


def write_result(result: RunResult, out_dir: Path, version: str, wall_time: float) -> list[Path]:
    """Write the CSV tables, the optional report and the run manifest into ``out_dir``.

    The manifest holds the resolved scenario, the seeds, the tool version, the status and
    error record, the summary and the wall time; everything but the wall time is a
    function of the scenario alone.

    :return: Paths written, the manifest last
    :raises OSError: If the directory or a file cannot be written
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for table in result.tables:
        path = out_dir / table.filename
        write_table(path, table.header, table.rows)
        written.append(path)
    if result.report is not None:
        path = out_dir / REPORT_NAME
        _write_json(path, result.report)
        written.append(path)

    manifest = {
        "tool": "pysatl_sweep",
        "version": version,
        "command": result.command,
        "scenario": result.scenario.model_dump(mode="json"),
        "seeds": result.seeds,
        "status": result.status,
        "error": result.error,
        "summary": result.summary,
        "outputs": [path.name for path in written],
        "wall_time": wall_time,
    }
    path = out_dir / MANIFEST_NAME
    _write_json(path, manifest)
    written.append(path)
    for path in written:
        logger.info("wrote %s", path)
    return written
