"""Run configuration files and CSV output."""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ConfigError,
    ConfigTypeError,
    MissingKey,
    PlasmaFlowError,
    UnknownKeys,
    ValidationFailed,
)
from .kinetics import (
    NOMINAL,
    EcmoMode,
    ModelConfiguration,
    ModelKind,
    ModelParameters,
    PortMode,
    derive_quantities,
    validate_parameters,
)
from .timeseries import TimeSeries

logger = logging.getLogger(__name__)

# config key -> ModelParameters field
PARAMETER_KEYS = {
    "Q_mL_per_s": "Q",
    "Q1_mL_per_s": "Q1",
    "alpha": "alpha",
    "s1_s": "s1",
    "s2_s": "s2",
    "V3_mL": "V3",
}
FIELD_KEYS = {v: k for k, v in PARAMETER_KEYS.items()}
OPTIONAL_DEFAULTS = {
    "duration_h": 4.0,
    "dt_s": 0.01,
    "stride": 100,
    "ecmo": EcmoMode.VA.value,
    "ports": PortMode.TYPICAL.value,
    "model": ModelKind.DDE.value,
    "out": None,
}
CHOICES = {"ecmo": EcmoMode, "ports": PortMode, "model": ModelKind}


@dataclass(frozen=True)
class RunConfig:
    params: ModelParameters = NOMINAL
    config: ModelConfiguration = field(
        default_factory=lambda: ModelConfiguration(EcmoMode.VA, PortMode.TYPICAL, ModelKind.DDE)
    )
    duration_h: float = 4.0
    dt: float = 0.01
    out: str | None = None
    stride: int = 100

    @property
    def duration(self) -> float:
        """Duration in seconds."""
        return self.duration_h * 3600.0


def check_run_config(rc: RunConfig) -> RunConfig:
    """Validate ``rc`` as a whole; errors name the offending config key."""
    try:
        validate_parameters(rc.params)
    except PlasmaFlowError as exc:
        field_name = getattr(exc, "field", None)
        key = FIELD_KEYS.get(field_name, "Q1_mL_per_s, alpha, Q_mL_per_s")
        raise ValidationFailed(key, f"{key}: {exc}") from exc
    if not isinstance(rc.stride, int) or isinstance(rc.stride, bool) or rc.stride < 1:
        raise ValidationFailed("stride", f"stride must be a positive integer, got {rc.stride!r}")
    if not (math.isfinite(rc.dt) and rc.dt > 0):
        raise ValidationFailed("dt_s", f"dt_s must be positive, got {rc.dt!r}")
    try:
        window = derive_quantities(rc.params, rc.config, rc.dt).window
    except PlasmaFlowError as exc:
        raise ValidationFailed("dt_s", f"dt_s: {exc}") from exc
    if not rc.duration > window:
        raise ValidationFailed(
            "duration_h",
            f"duration_h={rc.duration_h!r} must exceed the initial window of {window!r} s",
        )
    return rc


def _number(doc: dict, key: str) -> float:
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigTypeError(key, "a number", value)
    return float(value)


def config_from_mapping(doc: dict) -> RunConfig:
    if not isinstance(doc, dict):
        raise ValidationFailed("<document>", "config must be a JSON object")
    unknown = sorted(set(doc) - set(PARAMETER_KEYS) - set(OPTIONAL_DEFAULTS))
    if unknown:
        logger.warning("unknown config keys: %s", ", ".join(unknown))
        raise UnknownKeys(unknown)
    for key in PARAMETER_KEYS:
        if key not in doc:
            raise MissingKey(key)
    params = ModelParameters(**{f: _number(doc, k) for k, f in PARAMETER_KEYS.items()})

    opts = {**OPTIONAL_DEFAULTS, **doc}
    duration_h = _number(opts, "duration_h")
    dt = _number(opts, "dt_s")
    stride = opts["stride"]
    if isinstance(stride, bool) or not isinstance(stride, int):
        raise ConfigTypeError("stride", "an integer", stride)
    modes = {}
    for key, enum in CHOICES.items():
        value = opts[key]
        if not isinstance(value, str):
            raise ConfigTypeError(key, "a string", value)
        try:
            modes[key] = enum(value.lower())
        except ValueError:
            allowed = "|".join(m.value for m in enum)
            raise ValidationFailed(key, f"{key} must be one of {allowed}, got {value!r}") from None
    out = opts["out"]
    if out is not None and not isinstance(out, str):
        raise ConfigTypeError("out", "a string or null", out)

    rc = RunConfig(
        params=params,
        config=ModelConfiguration(modes["ecmo"], modes["ports"], modes["model"]),
        duration_h=duration_h,
        dt=dt,
        out=out,
        stride=stride,
    )
    return check_run_config(rc)


def parse_config(path) -> RunConfig:
    """Read a flat JSON object of run settings.

    Required: ``Q_mL_per_s, Q1_mL_per_s, alpha, s1_s, s2_s, V3_mL``.
    Optional: ``duration_h`` (4), ``dt_s`` (0.01), ``stride`` (100),
    ``ecmo`` (va), ``ports`` (typical), ``model`` (dde), ``out`` (null).
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationFailed("<document>", f"{path}: not valid JSON ({exc})") from exc
    return config_from_mapping(doc)


def config_to_mapping(rc: RunConfig) -> dict:
    doc = {key: getattr(rc.params, f) for key, f in PARAMETER_KEYS.items()}
    doc.update(
        duration_h=rc.duration_h,
        dt_s=rc.dt,
        stride=rc.stride,
        ecmo=rc.config.ecmo_mode.value,
        ports=rc.config.port_mode.value,
        model=rc.config.model_kind.value,
        out=rc.out,
    )
    return doc


def write_config(rc: RunConfig, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(config_to_mapping(rc), indent=2) + "\n", encoding="utf-8")
    return path


def fmt(x: float) -> str:
    return f"{x:.9g}"


def write_rows_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    """CSV with '.' decimals and 9 significant digits for floats."""
    path = Path(path)
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) if isinstance(v, float) else str(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def write_timeseries_csv(ts: TimeSeries, path, stride: int = 1) -> Path:
    """Every ``stride``-th sample, header ``t_seconds,<columns...>``."""
    if ts.n_samples == 0:
        raise ValueError("cannot write an empty time series")
    if isinstance(stride, bool) or not isinstance(stride, int) or stride < 1:
        raise ValueError(f"stride must be a positive integer, got {stride!r}")
    names = list(ts.columns)
    times = (ts.start + ts.dt * np.arange(0, ts.n_samples, stride)).tolist()
    cols = [ts.columns[n][::stride].tolist() for n in names]
    return write_rows_csv(path, ["t_seconds", *names], zip(times, *cols))


__all__ = [
    "ConfigError",
    "RunConfig",
    "check_run_config",
    "config_from_mapping",
    "config_to_mapping",
    "parse_config",
    "write_config",
    "write_rows_csv",
    "write_timeseries_csv",
]
