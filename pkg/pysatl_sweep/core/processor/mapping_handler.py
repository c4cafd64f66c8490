from collections.abc import Callable, Iterator
from typing import Any

from pysatl_sweep.core.handler import Handler, T, U


class MappingHandler(Handler[T, U]):
    """Apply a function to every item of the source, e.g. to build increments from node indices.

    :param map_func: Item transformation
    :param source: Upstream stage, defaults to None

    Example:
        ```python
        xs = list(driver | CatchingUpHandler(C, u0, driver_start=driver.samples[0]) | MappingHandler(lambda r: r.x[0]))
        ```
    """

    def __init__(self, map_func: Callable[[T], U], source: Handler[Any, T] | None = None):
        """Create a mapping stage.

        :param map_func: Function applied to every item, called once per item and in order
        :param source: Upstream stage, defaults to None
        """
        super().__init__(source)
        self.map_func = map_func

    def __iter__(self) -> Iterator[U]:
        """Yield ``map_func(item)`` for every item of the source.

        :raises ConfigurationError: If the stage has no source
        """
        return map(self.map_func, self.require_source())
