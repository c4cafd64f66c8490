from collections.abc import Iterable, Iterator

from .abstract import DataProvider, T


class SimpleDataProvider(DataProvider[T]):
    """Replay a finite in-memory sequence, e.g. precomputed increments of a deterministic scheme.

    The items are copied into a tuple, so a provider built from a generator can be iterated
    again by refinement studies that rerun a scheme.

    :param data: Items in time order
    """

    def __init__(self, data: Iterable[T]) -> None:
        """Store the items.

        :param data: Items in time order; a generator is consumed here
        """
        super().__init__()
        self.data: tuple[T, ...] = tuple(data)

    def __len__(self) -> int:
        """Return the number of stored items."""
        return len(self.data)

    def __iter__(self) -> Iterator[T]:
        """Yield the stored items in order."""
        return iter(self.data)
