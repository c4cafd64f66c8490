from abc import ABC, abstractmethod
from collections.abc import Iterator
from typing import Any

from pysatl_sweep.core.handler import Handler, T, U


class InductiveHandler(Handler[T, U], ABC):
    """One-step recursion state[n + 1] = F(state[n], input[n]) over the items of the source.

    The catching-up scheme, the projected Euler scheme and the crowd stepper are all of
    this form: the state is the current point, the input is one increment of the driver or
    of the Brownian path, and F predicts, then projects. Subclasses provide

    1. ``_initialize_state``, the state at node 0;
    2. ``_update_state``, one step of the scheme;
    3. ``_compute_result``, the record emitted for a state.

    Each iteration restarts from ``_initialize_state``, so a pipeline can be run twice.

    :param source: Upstream stage, defaults to None
    """

    def __init__(self, source: Handler[Any, T] | None = None):
        """Create a recursion stage.

        :param source: Upstream stage yielding the per-step inputs, defaults to None
        """
        super().__init__(source)

    @abstractmethod
    def _initialize_state(self) -> Any:
        """Return the state at node 0, e.g. the initial point u0 with zero accumulated push.

        Called once at the start of every iteration.
        """
        pass

    @abstractmethod
    def _update_state(self, state: Any, value: T) -> Any:
        """Advance ``state`` by the input ``value`` and return the new state.

        :param state: State at node n, from ``_initialize_state`` or the previous call
        :param value: Input of step n, e.g. the increment of the driver over [t_n, t_{n+1}]
        :return: State at node n + 1
        :raises SweepError: If the step cannot be taken; schemes attach the node index
        """
        pass

    @abstractmethod
    def _compute_result(self, state: Any) -> U:
        """Turn a state into the record yielded downstream.

        :param state: Current state
        :return: Output record for the node of ``state``
        """
        pass

    def _emit_initial(self) -> bool:
        """Whether the node-0 state is emitted before the first input; grid schemes say True."""
        return False

    def __iter__(self) -> Iterator[U]:
        """Run the recursion over the source, yielding one record per state.

        :raises ConfigurationError: If the stage has no source
        """
        source = self.require_source()
        return self._run(source)

    def _run(self, source: Handler[Any, T]) -> Iterator[U]:
        self._state = self._initialize_state()
        if self._emit_initial():
            yield self._compute_result(self._state)
        for value in source:
            self._state = self._update_state(self._state, value)
            yield self._compute_result(self._state)
