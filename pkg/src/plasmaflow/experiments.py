"""The three numerical studies: ADE vs DDE, port switching, sensitivity."""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np

from .ade import simulate_ade
from .dde import simulate_dde
from .errors import GridMismatch, PlasmaFlowError, PerturbationInvalid
from .kinetics import (
    PARAMETER_NAMES,
    EcmoMode,
    ModelConfiguration,
    ModelKind,
    ModelParameters,
    PortMode,
    validate_parameters,
)
from .timeseries import TimeSeries

logger = logging.getLogger(__name__)

FOUR_HOURS = 4 * 3600.0
DEFAULT_ALPHAS = (0.02, 0.05, 0.1, 0.3, 0.5, 0.7)
PERTURBATION = 1.1
THREADS_ENV = "PLASMAFLOW_THREADS"

T = TypeVar("T")
R = TypeVar("R")


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is not None:
        try:
            n = int(raw)
        except ValueError:
            n = 0
        if n >= 1:
            return n
        logger.warning("ignoring %s=%r: not a positive integer", THREADS_ENV, raw)
    return min(8, os.cpu_count() or 1)


def parallel_map(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """``map`` over a thread pool; results keep input order.

    The stepping kernels release the GIL, so threads run concurrently.
    """
    items = list(items)
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def simulate(p: ModelParameters, cfg: ModelConfiguration, duration: float, dt: float = 0.01, **kw) -> TimeSeries:
    """Run whichever engine ``cfg.model_kind`` names."""
    if ModelKind(cfg.model_kind) is ModelKind.ADE:
        return simulate_ade(p, cfg, duration, dt, **kw)
    return simulate_dde(p, cfg, duration, dt, **kw)


def max_rate(ts: TimeSeries, column: str = "gamma1") -> float:
    """Largest ``|delta gamma / delta t|`` between consecutive samples."""
    return float(np.max(np.abs(np.diff(ts.columns[column])))) / ts.dt


@dataclass(frozen=True, eq=False)
class ComparisonReport:
    ecmo_mode: EcmoMode
    port_mode: PortMode
    sup_diff: float
    t_sup_diff: float
    ade: TimeSeries
    dde: TimeSeries
    max_rate_dde: float
    shift_bound: float

    @property
    def within_shift_bound(self) -> bool:
        """Whether the gap is below ``max(s1, s2)`` times the DDE's peak rate."""
        return self.sup_diff <= self.shift_bound


def compare_models(
    p: ModelParameters,
    ecmo_mode: EcmoMode,
    port_mode: PortMode,
    duration: float = FOUR_HOURS,
    dt: float = 0.01,
) -> ComparisonReport:
    validate_parameters(p)
    ade = simulate_ade(p, ModelConfiguration(ecmo_mode, port_mode, ModelKind.ADE), duration, dt)
    dde = simulate_dde(p, ModelConfiguration(ecmo_mode, port_mode, ModelKind.DDE), duration, dt)
    diff = np.abs(ade.gamma1 - dde.gamma1)
    i = int(np.argmax(diff))
    rate = max_rate(dde)
    return ComparisonReport(
        ecmo_mode=EcmoMode(ecmo_mode),
        port_mode=PortMode(port_mode),
        sup_diff=float(diff[i]),
        t_sup_diff=float(ade.times[i]),
        ade=ade,
        dde=dde,
        max_rate_dde=rate,
        shift_bound=max(p.s1, p.s2) * rate,
    )


def percent_difference(ts_typ: TimeSeries, ts_sw: TimeSeries) -> TimeSeries:
    """``100 (typical - switched) / typical``, zero where ``typical`` is zero."""
    if not ts_typ.same_grid(ts_sw):
        raise GridMismatch(
            f"grids differ: {ts_typ.n_samples} samples at dt={ts_typ.dt} vs "
            f"{ts_sw.n_samples} at dt={ts_sw.dt}"
        )
    typ = ts_typ.gamma1
    sw = ts_sw.gamma1
    pd = np.zeros_like(typ)
    pos = typ > 0
    pd[pos] = 100.0 * (typ[pos] - sw[pos]) / typ[pos]
    return TimeSeries(dt=ts_typ.dt, start=ts_typ.start, columns={"percent_difference": pd})


@dataclass(frozen=True, eq=False)
class SweepEntry:
    alpha: float
    typical: TimeSeries
    switched: TimeSeries
    percent: TimeSeries

    @property
    def terminal_pd(self) -> float:
        return float(self.percent.columns["percent_difference"][-1])


@dataclass(frozen=True, eq=False)
class SweepReport:
    ecmo_mode: EcmoMode
    entries: list[SweepEntry]

    @property
    def alphas(self) -> list[float]:
        return [e.alpha for e in self.entries]

    @property
    def terminal_pd(self) -> list[float]:
        return [e.terminal_pd for e in self.entries]


def sweep_alpha(
    p: ModelParameters,
    ecmo_mode: EcmoMode,
    alphas: Sequence[float] = DEFAULT_ALPHAS,
    duration: float = FOUR_HOURS,
    dt: float = 0.01,
) -> SweepReport:
    """Typical vs switched DDE runs for each ECMO flow fraction."""
    variants = [validate_parameters(replace(p, alpha=float(a))) for a in alphas]
    jobs = [(v, pm) for v in variants for pm in PortMode]

    def run(job):
        v, pm = job
        ts = simulate_dde(v, ModelConfiguration(ecmo_mode, pm, ModelKind.DDE), duration, dt)
        # gamma2 is not needed downstream; halve the sweep's memory
        return TimeSeries(ts.dt, ts.start, {"gamma1": ts.gamma1})

    runs = parallel_map(run, jobs)
    entries = []
    for i, v in enumerate(variants):
        typ, sw = runs[2 * i], runs[2 * i + 1]
        entries.append(SweepEntry(v.alpha, typ, sw, percent_difference(typ, sw)))
    return SweepReport(EcmoMode(ecmo_mode), entries)


@dataclass(frozen=True)
class SensitivityEntry:
    parameter: str
    nominal: float
    perturbed: float
    gamma1_nominal: float
    gamma1_perturbed: float
    sensitivity: float


@dataclass(frozen=True)
class SensitivityReport:
    ecmo_mode: EcmoMode
    port_mode: PortMode
    duration: float
    dt: float
    entries: tuple[SensitivityEntry, ...]

    def __getitem__(self, parameter: str) -> SensitivityEntry:
        for e in self.entries:
            if e.parameter == parameter:
                return e
        raise KeyError(parameter)

    def ranked(self) -> list[SensitivityEntry]:
        """Entries by decreasing ``|sensitivity|``."""
        return sorted(self.entries, key=lambda e: abs(e.sensitivity), reverse=True)


def sensitivity_analysis(
    p: ModelParameters,
    ecmo_mode: EcmoMode,
    port_mode: PortMode,
    duration: float = FOUR_HOURS,
    dt: float = 0.01,
) -> SensitivityReport:
    """Forward differences of ``gamma1(duration)`` for a +10% bump of each parameter.

    Uses the ADE engine.  Volumes and lags are recomputed for every
    perturbed set, so bumping ``alpha`` or ``V3`` also moves ``s3``.
    Sensitivities to ``alpha`` are fragile on coarse grids because the
    rounding of ``s3`` is of the same size as the effect being measured.
    """
    validate_parameters(p)
    cfg = ModelConfiguration(ecmo_mode, port_mode, ModelKind.ADE)
    perturbed = []
    for name in PARAMETER_NAMES:
        bumped = replace(p, **{name: getattr(p, name) * PERTURBATION})
        try:
            validate_parameters(bumped)
        except PlasmaFlowError as exc:
            raise PerturbationInvalid(name, exc) from exc
        perturbed.append(bumped)

    finals = parallel_map(lambda v: float(simulate_ade(v, cfg, duration, dt).gamma1[-1]), [p, *perturbed])
    g0 = finals[0]
    entries = []
    for name, bumped, g in zip(PARAMETER_NAMES, perturbed, finals[1:]):
        y, y_tilde = getattr(p, name), getattr(bumped, name)
        entries.append(SensitivityEntry(name, y, y_tilde, g0, g, (g - g0) / (y_tilde - y)))
    return SensitivityReport(EcmoMode(ecmo_mode), PortMode(port_mode), duration, dt, tuple(entries))
