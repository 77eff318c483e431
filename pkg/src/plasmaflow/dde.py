"""Delay differential equation engine (forward Euler).

Volumes are constant, so ``d/dt (V_i gamma_i) = V_i gamma_i'``:

VA::

    V1 gamma1' = (Q - aQ) (gamma2 - gamma1)
    V2 gamma2' = (Q - aQ) gamma1 + b + c gamma2(t - s3) - Q gamma2

VV::

    V1 gamma1' = (Q - aQ) gamma2 + b + c gamma2(t - s3) - Q gamma1
    V2 gamma2' = Q (gamma1 - gamma2)

The delayed term is taken at the left end of each Euler step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .ade import _check_duration
from .errors import StabilityGuardViolated
from .history import HistoryBuffer, new_history
from .kinetics import (
    DerivedQuantities,
    EcmoMode,
    ModelConfiguration,
    ModelKind,
    ModelParameters,
    compartment_volumes,
    derive_quantities,
    validate_parameters,
)
from .timeseries import TimeSeries

STABILITY_LIMIT = 2.0


def dde_rhs(
    g1: float,
    g2: float,
    g2_delayed: float,
    q: DerivedQuantities,
    cfg: ModelConfiguration,
    p: ModelParameters,
) -> tuple[float, float]:
    """``(gamma1', gamma2')`` in 1/s."""
    native = p.Q - p.alpha_Q
    if EcmoMode(cfg.ecmo_mode) is EcmoMode.VA:
        r1 = native * (g2 - g1) / q.V1
        r2 = (native * g1 + q.b + q.c * g2_delayed - p.Q * g2) / q.V2
    else:
        r1 = (native * g2 + q.b + q.c * g2_delayed - p.Q * g1) / q.V1
        r2 = p.Q * (g1 - g2) / q.V2
    return r1, r2


def check_stability(p: ModelParameters, ecmo_mode: EcmoMode, dt: float) -> float:
    """Return ``dt * Q / min(V1, V2)``; raise if it reaches the limit."""
    V1, V2 = compartment_volumes(p, ecmo_mode)
    ratio = dt * p.Q / min(V1, V2)
    if not ratio < STABILITY_LIMIT:
        raise StabilityGuardViolated(
            f"dt={dt!r} s too large for explicit Euler: dt*Q/min(V1,V2)={ratio:.4g} >= {STABILITY_LIMIT}"
        )
    return ratio


@dataclass
class DdeState:
    gamma1: HistoryBuffer
    gamma2: HistoryBuffer
    q: DerivedQuantities
    cfg: ModelConfiguration
    p: ModelParameters

    @property
    def time(self) -> float:
        return self.gamma1.head_time


def new_dde_state(p: ModelParameters, cfg: ModelConfiguration, dt: float, lag_resolution=None) -> DdeState:
    validate_parameters(p)
    check_stability(p, cfg.ecmo_mode, dt)
    q = derive_quantities(p, cfg, dt, lag_resolution)
    return DdeState(new_history(dt, q.window, 0.0), new_history(dt, q.window, 0.0), q, cfg, p)


def dde_step(state: DdeState) -> tuple[float, float]:
    """One explicit Euler step; returns the new ``(gamma1, gamma2)``."""
    g1 = state.gamma1.latest
    g2 = state.gamma2.latest
    lagged = state.gamma2.lookup_steps(state.q.n_s3)
    r1, r2 = dde_rhs(g1, g2, lagged, state.q, state.cfg, state.p)
    dt = state.q.dt
    new1 = g1 + dt * r1
    new2 = g2 + dt * r2
    state.gamma1.push(new1)
    state.gamma2.push(new2)
    return new1, new2


def simulate_dde(
    p: ModelParameters,
    cfg: ModelConfiguration,
    duration: float,
    dt: float = 0.01,
    lag_resolution: float | None = None,
) -> TimeSeries:
    """``gamma1`` and ``gamma2`` on ``t = 0, dt, ..., duration``.

    Both fractions are zero over the initial window; Euler stepping starts
    from its right end.
    """
    if ModelKind(cfg.model_kind) is not ModelKind.DDE:
        raise ValueError(f"simulate_dde needs a DDE configuration, got {cfg.label}")
    validate_parameters(p)
    check_stability(p, cfg.ecmo_mode, dt)
    q = derive_quantities(p, cfg, dt, lag_resolution)
    n_samples = _check_duration(duration, dt, q)
    g1 = np.zeros(n_samples)
    g2 = np.zeros(n_samples)
    _kernels.dde_fill(
        g1, g2, q.n_window, q.n_s3, dt, p.Q, p.alpha_Q, q.b, q.c, q.V1, q.V2,
        EcmoMode(cfg.ecmo_mode) is EcmoMode.VA,
    )
    return TimeSeries(dt=dt, start=0.0, columns={"gamma1": g1, "gamma2": g2})

