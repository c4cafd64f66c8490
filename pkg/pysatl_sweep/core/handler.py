"""Pipeline stages: every scheme consumes a stream of increments and yields one record per node."""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Iterator
from typing import Any, Generic, TypeVar

from pysatl_sweep.core.errors import ConfigurationError

__all__ = ["Handler", "Pipeline", "T", "U", "V"]

T = TypeVar("T")
U = TypeVar("U")
V = TypeVar("V")


class Handler(ABC, Generic[T, U]):
    """One stage of a time-stepping pipeline, reading items of type T and yielding items of type U.

    Stages are wired with ``|``: ``driver | CatchingUpHandler(C, u0)`` feeds driver
    increments into the scheme. A stage has at most one source and it is set once.

    :param source: Upstream stage, defaults to None
    """

    def __init__(self, source: Handler[Any, T] | None = None):
        """Create a stage, optionally already wired to its upstream stage.

        :param source: Upstream stage, defaults to None
        """
        self._source = source

    @property
    def source(self) -> Handler[Any, T] | None:
        """Upstream stage, None until the stage is wired."""
        return self._source

    @source.setter
    def source(self, value: Handler[Any, T]) -> None:
        """Wire the upstream stage.

        :param value: Upstream stage
        :raises RuntimeError: If the stage already has a source
        """
        if self._source is not None:
            raise RuntimeError(f"{type(self).__name__} is already wired to {type(self._source).__name__}")
        self._source = value

    def require_source(self) -> Handler[Any, T]:
        """Return the upstream stage.

        :raises ConfigurationError: If the stage was iterated before being wired
        """
        if self._source is None:
            raise ConfigurationError(f"Source is not set for {type(self).__name__}")
        return self._source

    @abstractmethod
    def __iter__(self) -> Iterator[U]:
        """Yield the output items, one per input item for the grid schemes.

        Every call starts a fresh pass over the source, so refinement studies can iterate
        a pipeline more than once.
        """
        pass

    def __or__(self, other: Handler[U, V]) -> Pipeline[T, V]:
        """Feed this stage into ``other``: ``brownian_path(seed, grid) | EulerProjectHandler(C, fields, u0)``.

        :param other: Downstream stage without a source
        :return: The two stages as one pipeline
        :raises ConfigurationError: If ``other`` already has a source
        """
        return Pipeline(self, other)


class Pipeline(Handler[T, V]):
    """Two stages run in sequence; iterating the pipeline iterates the downstream stage.

    :param first: Upstream stage
    :param second: Downstream stage, not yet wired
    :raises ConfigurationError: If ``second`` already has a source
    """

    def __init__(self, first: Handler[T, U], second: Handler[U, V]):
        """Wire ``second`` to read from ``first``.

        :param first: Upstream stage
        :param second: Downstream stage, not yet wired
        :raises ConfigurationError: If ``second`` already has a source
        """
        super().__init__()
        if second.source is not None:
            raise ConfigurationError(
                f"Cannot create Pipeline: {type(second).__name__} already has a source "
                f"{type(second.source).__name__}; a stage belongs to one pipeline"
            )
        second.source = first
        self.first = first
        self.second = second

    def __iter__(self) -> Iterator[V]:
        """Yield the items of the downstream stage."""
        return iter(self.second)
