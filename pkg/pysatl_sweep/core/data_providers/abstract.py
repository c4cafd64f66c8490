from abc import abstractmethod
from collections.abc import Iterator

from pysatl_sweep.core.handler import Handler, T

__all__ = ["DataProvider", "T"]


class DataProvider(Handler[None, T]):
    """Root stage of a pipeline: the per-step input of a scheme, indexed by the time grid.

    Drivers and Brownian paths are data providers of increments. A provider has no source.
    """

    def __init__(self) -> None:
        """Create a provider; it is never wired to an upstream stage."""
        super().__init__(source=None)

    @abstractmethod
    def __iter__(self) -> Iterator[T]:
        """Yield the items in time order; every call starts again from node 1."""
        pass
