"""Algebraic delay equation engine.

All four configurations reduce to one recurrence for the new-plasma
fraction downstream of the heart/lung compartment::

    gamma1(t) = k + (alpha - k) * gamma1(t - dA) + (1 - alpha) * gamma1(t - dB)

with ``dA = s2 + s3`` (VA) or ``s1 + s2 + s3`` (VV) and ``dB = s1 + s2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DurationTooShort
from .history import HistoryBuffer, new_history
from .kinetics import (
    DerivedQuantities,
    ModelConfiguration,
    ModelKind,
    ModelParameters,
    derive_quantities,
    lag_steps,
    validate_parameters,
)
from .timeseries import TimeSeries


@dataclass
class AdeState:
    history: HistoryBuffer
    k: float
    alpha: float
    n_dA: int
    n_dB: int

    @property
    def time(self) -> float:
        return self.history.head_time


def new_ade_state(p: ModelParameters, cfg: ModelConfiguration, dt: float, lag_resolution=None) -> AdeState:
    """Zero history over the initial window ``[0, s1 + s2 + s3]``."""
    validate_parameters(p)
    q = derive_quantities(p, cfg, dt, lag_resolution)
    return AdeState(new_history(dt, q.window, 0.0), q.k, p.alpha, q.n_dA, q.n_dB)


def ade_step(state: AdeState) -> float:
    """Advance one grid step and return the new ``gamma1``."""
    h = state.history
    # the new sample sits one step past the head
    lagged_a = h.lookup_steps(state.n_dA - 1)
    lagged_b = h.lookup_steps(state.n_dB - 1)
    value = state.k + (state.alpha - state.k) * lagged_a + (1.0 - state.alpha) * lagged_b
    h.push(value)
    return value


def _check_duration(duration: float, dt: float, q: DerivedQuantities) -> int:
    n = lag_steps(duration, dt)
    if n <= q.n_window:
        raise DurationTooShort(
            f"duration {duration!r} s must exceed the initial window {q.window!r} s"
        )
    return n + 1


def simulate_ade(
    p: ModelParameters,
    cfg: ModelConfiguration,
    duration: float,
    dt: float = 0.01,
    lag_resolution: float | None = None,
) -> TimeSeries:
    """``gamma1`` on ``t = 0, dt, ..., duration``.

    Samples inside the initial window are the prescribed zeros.
    """
    if ModelKind(cfg.model_kind) is not ModelKind.ADE:
        raise ValueError(f"simulate_ade needs an ADE configuration, got {cfg.label}")
    validate_parameters(p)
    q = derive_quantities(p, cfg, dt, lag_resolution)
    n_samples = _check_duration(duration, dt, q)
    g = np.zeros(n_samples)
    _kernels.ade_fill(g, q.n_window + 1, q.n_dA, q.n_dB, q.k, p.alpha)
    return TimeSeries(dt=dt, start=0.0, columns={"gamma1": g})
