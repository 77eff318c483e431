"""Uniformly sampled trajectories."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .kinetics import lag_steps


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Named columns sampled at ``start + i * dt``; ``gamma1`` always present
    for engine output, ``gamma2`` only for DDE runs."""

    dt: float
    start: float
    columns: dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        lengths = {len(v) for v in self.columns.values()}
        if len(lengths) > 1:
            raise ValueError(f"columns have unequal lengths {sorted(lengths)}")

    @property
    def n_samples(self) -> int:
        return len(next(iter(self.columns.values()))) if self.columns else 0

    def __len__(self) -> int:
        return self.n_samples

    @property
    def times(self) -> np.ndarray:
        return self.start + self.dt * np.arange(self.n_samples)

    @property
    def gamma1(self) -> np.ndarray:
        return self.columns["gamma1"]

    @property
    def gamma2(self) -> np.ndarray | None:
        return self.columns.get("gamma2")

    def index_of(self, t: float) -> int:
        i = lag_steps(t - self.start, self.dt)
        if not 0 <= i < self.n_samples:
            raise IndexError(f"t={t!r} outside [{self.start}, {self.times[-1]}]")
        return i

    def at(self, t: float, column: str = "gamma1") -> float:
        return float(self.columns[column][self.index_of(t)])

    def same_grid(self, other: TimeSeries) -> bool:
        return (
            self.n_samples == other.n_samples
            and abs(self.dt - other.dt) <= 1e-12 * self.dt
            and abs(self.start - other.start) <= 1e-12 * max(self.dt, abs(self.start))
        )
