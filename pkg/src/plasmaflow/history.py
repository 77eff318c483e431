"""Fixed-lag history storage on a uniform time grid."""

from __future__ import annotations

from .errors import LagExceedsWindow, LagNotOnGrid
from .kinetics import is_on_grid, lag_steps


class HistoryBuffer:
    """Circular record of the last ``capacity`` samples of one state variable.

    Samples sit at consecutive grid times ending at ``head_time``, which is
    tracked as an integer grid index so it never drifts.  Lags must
    be exact multiples of ``dt``; lookups are plain array reads, never
    interpolated.
    """

    __slots__ = ("dt", "capacity", "head_index", "_samples", "_head")

    def __init__(self, dt: float, capacity: int, initial_value: float = 0.0, head_index: int = 0):
        if dt <= 0:
            raise ValueError(f"dt must be positive, got {dt!r}")
        if capacity < 2:
            raise ValueError(f"capacity must be at least 2, got {capacity!r}")
        self.dt = dt
        self.capacity = capacity
        self.head_index = head_index
        self._samples = [float(initial_value)] * capacity
        self._head = capacity - 1

    @property
    def head_time(self) -> float:
        return self.head_index * self.dt

    @property
    def max_lag(self) -> float:
        return (self.capacity - 1) * self.dt

    def __len__(self) -> int:
        return self.capacity

    def push(self, value: float) -> HistoryBuffer:
        """Append the sample for ``head_time + dt``, evicting the oldest."""
        self._head = (self._head + 1) % self.capacity
        self._samples[self._head] = value
        self.head_index += 1
        return self

    def lookup_steps(self, n: int) -> float:
        """Value recorded ``n`` grid steps before the head."""
        if not 0 <= n < self.capacity:
            raise LagExceedsWindow(
                f"lag of {n} steps outside window of {self.capacity - 1} steps"
            )
        return self._samples[(self._head - n) % self.capacity]

    def lookup(self, lag: float) -> float:
        """Value recorded at ``head_time - lag``."""
        if lag < 0 or not is_on_grid(lag, self.dt):
            raise LagNotOnGrid(f"lag {lag!r} s is not a non-negative multiple of dt={self.dt!r}")
        return self.lookup_steps(lag_steps(lag, self.dt))

    @property
    def latest(self) -> float:
        return self._samples[self._head]

    def to_list(self) -> list[float]:
        """Stored samples, oldest first."""
        start = (self._head + 1) % self.capacity
        return self._samples[start:] + self._samples[:start]


def new_history(dt: float, max_lag: float, initial_value: float = 0.0) -> HistoryBuffer:
    """Buffer prefilled with ``initial_value`` over ``[0, max_lag]``.

    The head sits at ``max_lag`` so that the first pushed sample belongs to
    ``max_lag + dt``, the first instant after the prescribed window.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    if max_lag <= 0 or not is_on_grid(max_lag, dt):
        raise LagNotOnGrid(f"max_lag {max_lag!r} s is not a positive multiple of dt={dt!r}")
    n = lag_steps(max_lag, dt)
    return HistoryBuffer(dt, n + 1, initial_value, head_index=n)
