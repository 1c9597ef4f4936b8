"""Command line entry point: ``rdsim simulate|sweep|compare|blind-table``."""
from __future__ import annotations

import argparse
import csv
import logging
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .blind_optics import (SlatGeometry, beam_beam_transmittance,
                           beam_diffuse_split, diffuse_exchange)
from .control import DEFAULT_SLATS, BlindMode
from .scenario import (ConfigError, SweepFailure, comparison_report,
                       load_config, read_config_data, read_loads_csv,
                       run_sweep, sweep_configs, write_comparison_csv,
                       write_loads_csv, write_trace_csv)
from .weather import WeatherError
from .zone import run_annual

EXIT_OK, EXIT_CONFIG, EXIT_WEATHER, EXIT_NUMERIC = 0, 2, 3, 4

log = logging.getLogger("rdsim")


class NumericalFailure(RuntimeError):
    pass


def _check_finite(report):
    for name in ("heating", "cooling", "lighting"):
        if not np.all(np.isfinite(getattr(report, name))):
            raise NumericalFailure(f"non-finite {name} load for {report.label}")


def _outdir(path) -> Path:
    out = Path(path)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {out}: {exc}") from exc
    return out


def cmd_simulate(args) -> int:
    cfg = load_config(args.config, args.city)
    weather = cfg.load_weather(args.weather)
    scenario = cfg.scenario(weather, mode=args.mode, reflectance=args.reflectance)
    result = run_annual(scenario, with_trace=args.trace,
                        window_breakdown=args.dump_window_gains)
    _check_finite(result.report)
    out = _outdir(args.out)
    write_loads_csv([result.report], out / "loads.csv")
    if args.trace or args.dump_window_gains:
        write_trace_csv(result.trace, out / "trace.csv")
    r = result.report
    print(f"{cfg.city} {scenario.mode.value} rho={scenario.reflectance:g}: "
          f"heating {r.annual_heating:.1f} kWh, cooling {r.annual_cooling:.1f} kWh, "
          f"lighting {r.annual_lighting:.1f} kWh, total {r.total:.1f} kWh")
    return EXIT_OK


def cmd_sweep(args) -> int:
    configs, modes, rhos = sweep_configs(read_config_data(args.config))
    bases = {cfg.city: cfg.scenario(cfg.load_weather()) for cfg in configs}
    try:
        reports = run_sweep(bases, modes, rhos)
    except SweepFailure as exc:
        log.error("%s", exc)
        if isinstance(exc.cause, WeatherError):
            raise exc.cause
        raise NumericalFailure(str(exc)) from exc
    for r in reports:
        _check_finite(r)
    out = _outdir(args.out)
    write_loads_csv(reports, out / "loads.csv")
    rows = []
    if {BlindMode.RDS, BlindMode.FIXED_INTERIOR, BlindMode.FIXED_EXTERIOR} <= set(modes):
        rows = comparison_report(reports)
        write_comparison_csv(rows, out / "comparison.csv")
    for r in reports:
        print(f"{r.label['city']:8s} {r.label['mode']:9s} {r.label['reflectance']:.2f} "
              f"total {r.total:9.2f} kWh")
    _print_comparison(rows)
    return EXIT_OK


def _print_comparison(rows):
    for c in rows:
        print(f"{c.city:8s} {c.pairing:16s} rho={c.reflectance:.2f} "
              f"vs interior {100 * c.vs_interior:6.2f}%  "
              f"vs exterior {100 * c.vs_exterior:6.2f}%")


def cmd_compare(args) -> int:
    runs = Path(args.runs)
    files = sorted(runs.rglob("loads.csv")) if runs.is_dir() else [runs]
    if not files:
        raise ConfigError(f"no loads.csv under {runs}")
    reports = []
    try:
        for f in files:
            reports.extend(read_loads_csv(f))
        rows = comparison_report(reports)
    except (KeyError, ValueError, OSError) as exc:
        raise ConfigError(f"cannot build comparison from {runs}: {exc!r}") from exc
    target = runs if runs.is_dir() else runs.parent
    write_comparison_csv(rows, target / "comparison.csv")
    _print_comparison(rows)
    return EXIT_OK


def _parse_geometry(text: str | None) -> SlatGeometry:
    if not text:
        return DEFAULT_SLATS
    values = {}
    for item in text.split(","):
        if not item.strip():
            continue
        key, sep, val = item.partition("=")
        if not sep:
            raise ConfigError(f"--geometry expects key=value pairs, got {item!r}")
        values[key.strip()] = float(val)
    rho = values.pop("reflectance", None)
    try:
        geometry = replace(DEFAULT_SLATS, **values)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"--geometry: {exc}") from exc
    return geometry.with_reflectance(rho) if rho is not None else geometry


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_blind_table(args) -> int:
    geometry = _parse_geometry(args.geometry)
    angles = _floats(args.angles)
    profiles = _floats(args.profiles)
    if any(not 0 <= a <= 180 for a in angles):
        raise ConfigError("slat angles must lie in [0, 180]")
    if any(not 0 <= p < 90 for p in profiles):
        raise ConfigError("profile angles must lie in [0, 90)")
    header = ["slat_angle", "profile_angle", "tau_beam_beam", "tau_beam_diffuse",
              "rho_beam", "alpha_beam", "tau_diffuse_diffuse",
              "rho_diffuse_front", "alpha_diffuse_front", "rho_diffuse_back",
              "alpha_diffuse_back"]
    if args.oracle_rays:
        from .raycast import mc_oracle
        header += ["mc_tau_beam_beam", "mc_tau_beam_diffuse", "mc_rho_beam",
                   "mc_alpha_beam"]
    out = Path(args.out)
    if out.parent != Path(""):
        _outdir(out.parent)
    with open(out, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for psi in angles:
            diff = diffuse_exchange(geometry, psi)
            tdd, rf, af = diff["front"]
            _, rb, ab = diff["back"]
            for p in profiles:
                tbb = float(beam_beam_transmittance(geometry, psi, p))
                tbd, rbm, abm = (float(x) for x in
                                 beam_diffuse_split(geometry, psi, p))
                row = [psi, p, tbb, tbd, rbm, abm, tdd, rf, af, rb, ab]
                if args.oracle_rays:
                    s = mc_oracle(geometry, psi, p, rays=args.oracle_rays,
                                  seed=args.seed)
                    row += [s.tau_direct, s.tau_scattered, s.rho, s.alpha]
                w.writerow([f"{float(v):.6f}" for v in row])
    print(f"wrote {len(angles) * len(profiles)} rows to {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rdsim", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="one annual run")
    s.add_argument("--config", required=True)
    s.add_argument("--weather", help="EPW file; overrides the config weather")
    s.add_argument("--city", help="preset city whose defaults fill the config")
    s.add_argument("--mode", choices=[m.value for m in BlindMode])
    s.add_argument("--reflectance", type=float)
    s.add_argument("--out", default=".")
    s.add_argument("--trace", action="store_true", help="write hourly trace.csv")
    s.add_argument("--dump-window-gains", action="store_true",
                   help="add the window heat-gain terms to trace.csv")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("sweep", help="cities x modes x reflectances")
    s.add_argument("--config", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("compare", help="efficiencies from stored loads.csv")
    s.add_argument("--runs", required=True)
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("blind-table", help="slat optics over an angle grid")
    s.add_argument("--geometry", default="",
                   help="comma separated key=value, e.g. width=20,separation=20,reflectance=0.5")
    s.add_argument("--angles", default="0,30,60,90,120,150,180")
    s.add_argument("--profiles", default="0,15,30,45,60,75")
    s.add_argument("--oracle-rays", type=int, default=0,
                   help="also run the Monte Carlo oracle with this many rays")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_blind_table)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        with np.errstate(invalid="raise", divide="raise", over="raise"):
            return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except WeatherError as exc:
        print(f"weather input error: {exc}", file=sys.stderr)
        return EXIT_WEATHER
    except (NumericalFailure, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
