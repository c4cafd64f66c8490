from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any, TypeVar

import numpy as np

from pysatl_sweep.core.errors import ConfigurationError
from pysatl_sweep.core.types import FloatArray

__all__ = ["SkorohodSolution", "StepRecord"]

SolutionT = TypeVar("SolutionT", bound="SkorohodSolution")


@dataclass(frozen=True)
class StepRecord:
    """State of a projection scheme at one grid node.

    :param node: Node index n
    :param t: Time t_n
    :param x: Constrained point x(t_n)
    :param k: Reaction k(t_n) = l(t_n) - x(t_n)
    :param driver: Driver value l(t_n)
    :param tv_k: Discrete total variation of k over [0, t_n]
    :param contact: Whether the projection moved the predicted point at this node
    """

    node: int
    t: float
    x: FloatArray
    k: FloatArray
    driver: FloatArray
    tv_k: float
    contact: bool


@dataclass(frozen=True)
class SkorohodSolution:
    """Sampled solution (x, k) of a sweeping process with x + k = l at every node.

    :param t: Grid nodes, shape (n,)
    :param x: Points, shape (n, d)
    :param k: Reactions, shape (n, d)
    :param driver: Driver values, shape (n, d)
    :param tv_k: Cumulative variation of k, shape (n,)
    :param contact: Contact flags, shape (n,)
    """

    t: FloatArray
    x: FloatArray
    k: FloatArray
    driver: FloatArray
    tv_k: FloatArray
    contact: np.ndarray[Any, np.dtype[np.bool_]]

    @classmethod
    def from_records(cls: type[SolutionT], records: Iterable[StepRecord]) -> SolutionT:
        collected = list(records)
        if not collected:
            raise ConfigurationError("A solution needs at least one node")
        return cls(
            t=np.array([record.t for record in collected]),
            x=np.vstack([record.x for record in collected]),
            k=np.vstack([record.k for record in collected]),
            driver=np.vstack([record.driver for record in collected]),
            tv_k=np.array([record.tv_k for record in collected]),
            contact=np.array([record.contact for record in collected], dtype=bool),
        )

    @property
    def dim(self) -> int:
        return int(self.x.shape[1])

    def __len__(self) -> int:
        return len(self.t)

    def header(self) -> list[str]:
        coordinates = range(1, self.dim + 1)
        return ["t", *(f"x_{i}" for i in coordinates), *(f"k_{i}" for i in coordinates), "tv_k", "contact"]

    def to_rows(self) -> list[list[Any]]:
        """Return CSV rows t, x_1..x_d, k_1..k_d, tv_k, contact without the header."""
        return [
            [float(self.t[n]), *self.x[n].tolist(), *self.k[n].tolist(), float(self.tv_k[n]), int(self.contact[n])]
            for n in range(len(self))
        ]

    @classmethod
    def from_rows(cls, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> SkorohodSolution:
        """Rebuild a solution from CSV rows; the driver is recovered as x + k."""
        dim = sum(1 for name in header if name.startswith("x_"))
        if dim == 0 or len(header) != 2 * dim + 3:
            raise ConfigurationError(f"Unexpected solution columns {list(header)}")
        table = np.array([[float(value) for value in row] for row in rows])
        x = table[:, 1 : 1 + dim]
        k = table[:, 1 + dim : 1 + 2 * dim]
        return cls(table[:, 0], x, k, x + k, table[:, -2], table[:, -1].astype(bool))
