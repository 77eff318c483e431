"""Model parameters, configurations and the quantities derived from them.

All eight models (VA/VV ECMO x typical/switched ports x ADE/DDE) share one
set of coefficients.  With ``aQ = alpha * Q`` the device contributes a
constant new-plasma inflow ``b`` and recirculates ``c * gamma2(t - s3)``:

=========  ====================  ======================
ports      b                     c
=========  ====================  ======================
typical    Q1                    aQ - Q1
switched   aQ * Q1 / (Q1 + aQ)   aQ**2 / (Q1 + aQ)
=========  ====================  ======================

and the ADE constant term is ``k`` (``Q1 / Q`` or ``alpha Q1 / (Q1 + aQ)``),
which equals ``b / Q``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum

from .errors import (
    FlowConstraintViolated,
    LagNotOnGrid,
    NonPositiveParameter,
    ZeroLagAfterRounding,
)

logger = logging.getLogger(__name__)

GRID_TOL = 1e-9


class EcmoMode(str, Enum):
    VA = "va"
    VV = "vv"


class PortMode(str, Enum):
    TYPICAL = "typical"
    SWITCHED = "switched"


class ModelKind(str, Enum):
    ADE = "ade"
    DDE = "dde"


@dataclass(frozen=True)
class ModelParameters:
    """Clinical inputs.

    Q      blood flow through the peripheral compartment [mL/s]
    Q1     plasma exchange device inlet/outlet flow [mL/s]
    alpha  fraction of Q carried by the ECMO circuit
    s1     heart/lung transit time [s]
    s2     peripheral transit time [s]
    V3     ECMO circuit blood volume [mL]
    """

    Q: float
    Q1: float
    alpha: float
    s1: float
    s2: float
    V3: float

    @property
    def alpha_Q(self) -> float:
        return self.alpha * self.Q


NOMINAL = ModelParameters(Q=116.7, Q1=1.5, alpha=0.7, s1=13.0, s2=39.0, V3=500.0)

PARAMETER_NAMES = ("Q1", "Q", "alpha", "s1", "s2", "V3")


@dataclass(frozen=True)
class ModelConfiguration:
    ecmo_mode: EcmoMode
    port_mode: PortMode
    model_kind: ModelKind = ModelKind.DDE

    def __post_init__(self):
        object.__setattr__(self, "ecmo_mode", EcmoMode(self.ecmo_mode))
        object.__setattr__(self, "port_mode", PortMode(self.port_mode))
        object.__setattr__(self, "model_kind", ModelKind(self.model_kind))

    @property
    def label(self) -> str:
        return f"{self.ecmo_mode.value}-{self.port_mode.value}-{self.model_kind.value}"


def all_configurations() -> list[ModelConfiguration]:
    """The eight models, ECMO mode outermost."""
    return [
        ModelConfiguration(e, pm, mk)
        for e in EcmoMode
        for pm in PortMode
        for mk in ModelKind
    ]


@dataclass(frozen=True)
class DerivedQuantities:
    """Volumes, grid-rounded lags and device coefficients for one run.

    Lags are stored both in seconds and as whole numbers of ``dt`` steps;
    ``window`` is the zero-history span ``s1 + s2 + s3``.
    """

    V1: float
    V2: float
    s3: float
    b: float
    c: float
    k: float
    dA: float
    dB: float
    window: float
    dt: float
    n_s3: int
    n_dA: int
    n_dB: int
    n_window: int


def validate_parameters(p: ModelParameters) -> ModelParameters:
    """Return ``p`` unchanged if it describes a physical circuit.

    ``V3 = 0`` is accepted: it is the instantaneous-ECMO limit (``s3 = 0``)
    used by the lumped reduction.
    """
    for name in ("Q", "Q1", "alpha", "s1", "s2"):
        value = getattr(p, name)
        if not (math.isfinite(value) and value > 0):
            raise NonPositiveParameter(name, value)
    if not (math.isfinite(p.V3) and p.V3 >= 0):
        raise NonPositiveParameter("V3", p.V3)
    aQ = p.alpha_Q
    if not (p.Q1 < aQ < p.Q):
        raise FlowConstraintViolated(p.Q1, aQ, p.Q)
    return p


def compartment_volumes(p: ModelParameters, ecmo_mode: EcmoMode) -> tuple[float, float]:
    """Heart/lung and peripheral volumes ``(V1, V2)`` in mL.

    Under VA ECMO the heart/lung compartment only sees the native share
    ``(1 - alpha) Q`` of the flow.
    """
    if EcmoMode(ecmo_mode) is EcmoMode.VA:
        V1 = p.s1 * (p.Q - p.alpha_Q)
    else:
        V1 = p.s1 * p.Q
    return V1, p.s2 * p.Q


def device_coefficients(p: ModelParameters, port_mode: PortMode) -> tuple[float, float, float]:
    """``(b, c, k)``: constant inflow, recirculation gain, ADE constant term."""
    aQ = p.alpha_Q
    if PortMode(port_mode) is PortMode.TYPICAL:
        b = p.Q1
        c = aQ - p.Q1
        k = p.Q1 / p.Q
    else:
        b = aQ * p.Q1 / (p.Q1 + aQ)
        c = aQ * aQ / (p.Q1 + aQ)
        k = p.alpha * p.Q1 / (p.Q1 + aQ)
    return b, c, k


def ecmo_transit_time(p: ModelParameters) -> float:
    return p.V3 / p.alpha_Q


def lag_steps(value: float, resolution: float) -> int:
    """Nearest whole number of ``resolution`` steps, ties rounded up."""
    return int(math.floor(value / resolution + 0.5 + GRID_TOL))


def is_on_grid(value: float, resolution: float) -> bool:
    return abs(value - lag_steps(value, resolution) * resolution) <= GRID_TOL * resolution


def derive_quantities(
    p: ModelParameters,
    cfg: ModelConfiguration,
    dt: float,
    lag_resolution: float | None = None,
) -> DerivedQuantities:
    """Compute everything an engine needs to step ``cfg`` on a ``dt`` grid.

    Each lag (s3, dA, dB and the initial window) is rounded independently
    from its exact value to the nearest multiple of ``lag_resolution``
    (default ``dt``).  A coarser ``lag_resolution`` keeps the lags fixed
    while ``dt`` is refined, which isolates the time-stepping error in
    convergence studies; it must be a whole multiple of ``dt``.
    """
    if not (dt > 0 and math.isfinite(dt)):
        raise ValueError(f"dt must be positive, got {dt!r}")
    res = dt if lag_resolution is None else lag_resolution
    if not (res >= dt * (1 - GRID_TOL) and is_on_grid(res, dt)):
        raise LagNotOnGrid(f"lag_resolution {res!r} is not a multiple of dt={dt!r}")
    ratio = lag_steps(res, dt)

    for name in ("s1", "s2"):
        value = getattr(p, name)
        if not is_on_grid(value, res):
            logger.warning(
                "%s=%r s is not a multiple of %r s; rounding to %r s",
                name, value, res, lag_steps(value, res) * res,
            )

    cfg_ecmo = EcmoMode(cfg.ecmo_mode)
    V1, V2 = compartment_volumes(p, cfg_ecmo)
    b, c, k = device_coefficients(p, cfg.port_mode)

    s3_raw = ecmo_transit_time(p)
    dB_raw = p.s1 + p.s2
    dA_raw = p.s2 + s3_raw if cfg_ecmo is EcmoMode.VA else p.s1 + p.s2 + s3_raw
    window_raw = p.s1 + p.s2 + s3_raw

    steps = {}
    for name, raw in (("s3", s3_raw), ("dA", dA_raw), ("dB", dB_raw), ("window", window_raw)):
        m = lag_steps(raw, res)
        if m == 0 and raw > 0:
            raise ZeroLagAfterRounding(name, raw, res)
        steps[name] = m * ratio

    return DerivedQuantities(
        V1=V1,
        V2=V2,
        s3=steps["s3"] * dt,
        b=b,
        c=c,
        k=k,
        dA=steps["dA"] * dt,
        dB=steps["dB"] * dt,
        window=steps["window"] * dt,
        dt=dt,
        n_s3=steps["s3"],
        n_dA=steps["dA"],
        n_dB=steps["dB"],
        n_window=steps["window"],
    )
