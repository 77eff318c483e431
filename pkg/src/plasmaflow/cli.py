"""Command-line interface.

Exit codes: 0 success, 1 invalid parameters or config, 2 I/O failure or bad
usage.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from . import analytic, experiments
from .errors import PlasmaFlowError
from .io import RunConfig, check_run_config, fmt, parse_config, write_rows_csv, write_timeseries_csv
from .kinetics import EcmoMode, ModelConfiguration, ModelKind, PortMode
from .timeseries import TimeSeries

NOMINAL_PRESET = "nominal"

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2


class UsageError(Exception):
    pass


def _common(sub: argparse.ArgumentParser, out_required: bool = True) -> None:
    sub.add_argument("--config", default=NOMINAL_PRESET,
                     help="JSON run config, or 'nominal' for the built-in nominal parameters")
    sub.add_argument("--out", required=out_required, help="output CSV path")
    sub.add_argument("--duration-hours", type=float)
    sub.add_argument("--dt", type=float)
    sub.add_argument("--stride", type=int)


def _modes(sub: argparse.ArgumentParser, ports: bool = True, model: bool = False) -> None:
    sub.add_argument("--ecmo", choices=[m.value for m in EcmoMode])
    if ports:
        sub.add_argument("--ports", choices=[m.value for m in PortMode])
    if model:
        sub.add_argument("--model", choices=[m.value for m in ModelKind])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plasmaflow",
        description="New-plasma fraction during plasma exchange on an ECMO circuit.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    subs = parser.add_subparsers(dest="command", required=True)

    sim = subs.add_parser("simulate", help="run one model and write its trajectory")
    _common(sim)
    _modes(sim, model=True)

    cmp_ = subs.add_parser("compare", help="ADE vs DDE for one configuration")
    _common(cmp_)
    _modes(cmp_)

    sweep = subs.add_parser("sweep-alpha", help="typical vs switched ports across ECMO flow fractions")
    _common(sweep)
    _modes(sweep, ports=False)
    sweep.add_argument("--alphas", default=",".join(str(a) for a in experiments.DEFAULT_ALPHAS),
                       help="comma-separated list of alpha values")

    sens = subs.add_parser("sensitivity", help="+10%% forward-difference sensitivities of gamma1")
    _common(sens)
    _modes(sens)

    ana = subs.add_parser("analytic", help="lumped single-compartment formulas")
    ana.add_argument("--config", default=NOMINAL_PRESET)
    ana.add_argument("--ecmo", choices=[m.value for m in EcmoMode], default=EcmoMode.VV.value)
    which = ana.add_mutually_exclusive_group(required=True)
    which.add_argument("--pvp", type=float, help="plasma volumes processed")
    which.add_argument("--t-hours", type=float, help="elapsed time in hours")
    return parser


def load_run_config(source: str) -> RunConfig:
    if source == NOMINAL_PRESET and not Path(source).exists():
        return RunConfig()
    return parse_config(source)


def resolve(args: argparse.Namespace) -> RunConfig:
    """Config file values overridden by whatever flags were given."""
    rc = load_run_config(args.config)
    cfg = rc.config
    cfg = ModelConfiguration(
        getattr(args, "ecmo", None) or cfg.ecmo_mode,
        getattr(args, "ports", None) or cfg.port_mode,
        getattr(args, "model", None) or cfg.model_kind,
    )
    rc = replace(rc, config=cfg)
    if getattr(args, "duration_hours", None) is not None:
        rc = replace(rc, duration_h=args.duration_hours)
    if getattr(args, "dt", None) is not None:
        rc = replace(rc, dt=args.dt)
    if getattr(args, "stride", None) is not None:
        rc = replace(rc, stride=args.stride)
    if getattr(args, "out", None) is not None:
        rc = replace(rc, out=args.out)
    return check_run_config(rc)


def _sibling(out: Path, suffix: str) -> Path:
    return out.with_name(f"{out.stem}_{suffix}{out.suffix or '.csv'}")


def cmd_simulate(rc: RunConfig) -> None:
    ts = experiments.simulate(rc.params, rc.config, rc.duration, rc.dt)
    path = write_timeseries_csv(ts, rc.out, rc.stride)
    g = ts.gamma1[-1]
    print(f"{rc.config.label}: gamma1({fmt(rc.duration)} s)={fmt(float(g))} -> {path}")


def cmd_compare(rc: RunConfig) -> None:
    report = experiments.compare_models(
        rc.params, rc.config.ecmo_mode, rc.config.port_mode, rc.duration, rc.dt
    )
    out = Path(rc.out)
    write_timeseries_csv(report.ade, _sibling(out, "ade"), rc.stride)
    write_timeseries_csv(report.dde, _sibling(out, "dde"), rc.stride)
    print(f"sup_diff={fmt(report.sup_diff)} at t={fmt(report.t_sup_diff)}")


def _parse_alphas(text: str) -> list[float]:
    try:
        alphas = [float(a) for a in text.split(",") if a.strip()]
    except ValueError:
        raise UsageError(f"--alphas must be a comma-separated list of numbers, got {text!r}") from None
    if not alphas:
        raise UsageError("--alphas is empty")
    return alphas


def cmd_sweep(rc: RunConfig, alphas: list[float]) -> None:
    report = experiments.sweep_alpha(rc.params, rc.config.ecmo_mode, alphas, rc.duration, rc.dt)
    out = Path(rc.out)
    for e in report.entries:
        ts = TimeSeries(e.typical.dt, e.typical.start, {
            "gamma1_typical": e.typical.gamma1,
            "gamma1_switched": e.switched.gamma1,
            "percent_difference": e.percent.columns["percent_difference"],
        })
        write_timeseries_csv(ts, _sibling(out, f"alpha_{fmt(e.alpha)}"), rc.stride)
    write_rows_csv(out, ["alpha", "terminal_pd_percent"],
                   [(e.alpha, e.terminal_pd) for e in report.entries])
    for e in report.entries:
        print(f"alpha={fmt(e.alpha)} terminal_pd_percent={fmt(e.terminal_pd)}")


def cmd_sensitivity(rc: RunConfig) -> None:
    report = experiments.sensitivity_analysis(
        rc.params, rc.config.ecmo_mode, rc.config.port_mode, rc.duration, rc.dt
    )
    header = ["parameter", "nominal", "perturbed", "gamma1_nominal", "gamma1_perturbed", "sensitivity"]
    rows = [
        (e.parameter, e.nominal, e.perturbed, e.gamma1_nominal, e.gamma1_perturbed, e.sensitivity)
        for e in report.entries
    ]
    write_rows_csv(rc.out, header, rows)
    top = report.ranked()[0]
    print(f"largest |sensitivity|: {top.parameter}={fmt(top.sensitivity)}")


def cmd_analytic(args: argparse.Namespace) -> None:
    rc = load_run_config(args.config)
    p = rc.params
    ecmo = EcmoMode(args.ecmo)
    if args.t_hours is not None:
        t = args.t_hours * 3600.0
        pvp = analytic.plasma_volumes_processed(p, t, ecmo)
        print(f"plasma_volumes_processed = {pvp:.6f}")
        for pm in PortMode:
            g = analytic.lumped_solution(p, ecmo, pm, t)
            print(f"gamma2 = {g:.6f} ({pm.value})")
    else:
        pvp = args.pvp
    for pm in PortMode:
        f = analytic.fraction_old_remaining(pvp, p, pm)
        print(f"fraction_old_remaining = {f:.6f} ({pm.value})")


def cli_main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_IO
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "analytic":
            cmd_analytic(args)
            return EXIT_OK
        alphas = _parse_alphas(args.alphas) if args.command == "sweep-alpha" else None
        rc = resolve(args)
        if args.command == "simulate":
            cmd_simulate(rc)
        elif args.command == "compare":
            cmd_compare(rc)
        elif args.command == "sweep-alpha":
            cmd_sweep(rc, alphas)
        elif args.command == "sensitivity":
            cmd_sensitivity(rc)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"plasmaflow: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except PlasmaFlowError as exc:
        print(f"plasmaflow: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"plasmaflow: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
