"""Scenario assembly, configuration files, sweeps and comparison reports."""
from __future__ import annotations

import copy
import csv
import json
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from .blind_optics import DEFAULT_SEGMENTS, SlatGeometry
from .control import DEFAULT_SLATS, BlindMode, SeasonCalendar
from .daylight import DaylightConfig
from .fenestration import IP_TO_SI_U, WindowModel
from .weather import (SitePosition, WeatherError, WeatherSeries, parse_epw,
                      synth_weather)
from .zone import (IdealLoadsOptions, InternalGains, LoadReport, Setpoints,
                   ZoneSpec, run_annual)

REFLECTANCES = (0.1, 0.5, 0.9)
SWEEP_MODES = (BlindMode.FIXED_INTERIOR, BlindMode.FIXED_EXTERIOR, BlindMode.RDS)
MONTH_NAMES = ("jan", "feb", "mar", "apr", "may", "jun", "jul", "aug", "sep",
               "oct", "nov", "dec")


class ConfigError(ValueError):
    """Configuration file is unreadable, incomplete or inconsistent."""


class MismatchedWeather(ValueError):
    pass


class ZeroBase(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class CityPreset:
    name: str
    site: SitePosition
    wall_u_ip: float
    window_u_ip: float
    shgc: float
    monthly_dry_bulb: tuple
    monthly_humidity: tuple


CITIES = {
    "Tehran": CityPreset(
        "Tehran", SitePosition(35.42, 51.15, 3.5), 0.077, 0.42, 0.25,
        (3.89, 4.98, 10.66, 16.3, 21.74, 28.26, 29.87, 30.07, 25.9, 17.79,
         11.41, 5.59),
        (60.04, 56.82, 49.55, 38.91, 34.1, 21.92, 25.67, 24.48, 25.75, 38.24,
         49.15, 63.0)),
    "Tabriz": CityPreset(
        "Tabriz", SitePosition(38.13, 46.23, 3.5), 0.064, 0.36, 0.36,
        (-1.52, 0.52, 6.55, 11.78, 17.45, 22.96, 26.27, 26.9, 22.13, 14.96,
         6.21, 0.21),
        (64.17, 66.05, 56.26, 52.61, 49.35, 37.98, 34.95, 31.21, 36.15, 47.84,
         63.1, 66.41)),
    "Yazd": CityPreset(
        "Yazd", SitePosition(31.90, 54.28, 3.5), 0.084, 0.45, 0.25,
        (7.11, 9.98, 16.0, 21.0, 25.77, 31.4, 33.17, 31.28, 27.63, 21.03,
         12.86, 7.06),
        (49.38, 39.66, 26.93, 30.86, 21.66, 14.22, 15.62, 13.07, 15.82, 21.69,
         33.16, 46.45)),
}


@dataclass(frozen=True)
class Scenario:
    city: str
    weather: WeatherSeries
    zone: ZoneSpec = ZoneSpec()
    mode: BlindMode = BlindMode.RDS
    reflectance: float = 0.1
    calendar: SeasonCalendar = SeasonCalendar()
    geometry: SlatGeometry = DEFAULT_SLATS
    daylight: DaylightConfig = DaylightConfig()
    gains: InternalGains = InternalGains()
    setpoints: Setpoints = Setpoints()
    hvac: IdealLoadsOptions = IdealLoadsOptions()
    window_model: WindowModel = WindowModel()
    ground_reflectance: float = 0.2
    optics_segments: int = DEFAULT_SEGMENTS

    def __post_init__(self):
        object.__setattr__(self, "mode", BlindMode(self.mode))
        if not 0.0 <= self.reflectance <= 1.0:
            raise ConfigError(f"slat reflectance {self.reflectance} outside [0, 1]")
        if not 0.0 <= self.ground_reflectance <= 1.0:
            raise ConfigError("ground reflectance outside [0, 1]")

    @property
    def site(self) -> SitePosition:
        return self.weather.site

    @property
    def label(self) -> dict:
        return {"city": self.city, "mode": self.mode.value,
                "reflectance": self.reflectance}

    def with_blind(self, mode, reflectance) -> "Scenario":
        return replace(self, mode=BlindMode(mode), reflectance=float(reflectance))


def preset_zone(city: str, **overrides) -> ZoneSpec:
    p = CITIES[city]
    base = dict(wall_u=p.wall_u_ip * IP_TO_SI_U,
                window_u=p.window_u_ip * IP_TO_SI_U, window_shgc=p.shgc)
    base.update(overrides)
    return ZoneSpec(**base)


def preset_weather(city: str, **kwargs) -> WeatherSeries:
    p = CITIES[city]
    return synth_weather(p.monthly_dry_bulb, p.monthly_humidity, p.site, **kwargs)


def city_scenario(city: str, mode=BlindMode.RDS, reflectance: float = 0.1,
                  weather: WeatherSeries | None = None, **kwargs) -> Scenario:
    """Scenario for one of the preset cities on its synthetic weather."""
    if city not in CITIES:
        raise ConfigError(f"unknown city {city!r}; known: {sorted(CITIES)}")
    if weather is None:
        weather = preset_weather(city)
    kwargs.setdefault("zone", preset_zone(city))
    return Scenario(city, weather, mode=BlindMode(mode),
                    reflectance=reflectance, **kwargs)


# --- configuration files -----------------------------------------------------

_SECTIONS = ("site", "weather", "zone", "envelope", "blind", "daylight", "gains",
             "setpoints", "calendar", "hvac", "window", "sweep")


def _build(cls, section: dict, name: str, base=None):
    known = {f.name for f in fields(cls)}
    unknown = set(section) - known
    if unknown:
        raise ConfigError(f"[{name}] unknown keys: {sorted(unknown)}")
    try:
        if base is not None:
            return replace(base, **section)
        return cls(**section)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"[{name}] {exc}") from exc


def _pop_keys(section: dict, keys) -> dict:
    return {k: section.pop(k) for k in list(keys) if k in section}


@dataclass
class Config:
    """Parsed configuration: everything except the weather data itself."""

    city: str
    site: SitePosition
    weather: dict
    zone: ZoneSpec
    mode: BlindMode
    reflectance: float
    geometry: SlatGeometry
    segments: int
    daylight: DaylightConfig
    gains: InternalGains
    setpoints: Setpoints
    calendar: SeasonCalendar
    hvac: IdealLoadsOptions
    window_model: WindowModel
    ground_reflectance: float
    sweep: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict)

    def load_weather(self, epw_path: str | Path | None = None) -> WeatherSeries:
        """EPW when a path is given (argument or config), else synthetic."""
        path = epw_path or self.weather.get("epw")
        if path:
            try:
                with open(path, encoding="utf-8", errors="replace") as fh:
                    return parse_epw(fh)
            except OSError as exc:
                raise WeatherError(f"cannot read {path}: {exc}") from exc
        normals = {k: self.weather[k] for k in
                   ("monthly_dry_bulb", "monthly_humidity")}
        extra = _pop_keys(dict(self.weather), ("diurnal_amplitude",
                                               "diffuse_fraction"))
        return synth_weather(normals["monthly_dry_bulb"],
                             normals["monthly_humidity"], self.site, **extra)

    def scenario(self, weather: WeatherSeries, mode=None,
                 reflectance=None) -> Scenario:
        return Scenario(
            self.city, weather, zone=self.zone,
            mode=BlindMode(mode if mode is not None else self.mode),
            reflectance=float(self.reflectance if reflectance is None
                              else reflectance),
            calendar=self.calendar, geometry=self.geometry,
            daylight=self.daylight, gains=self.gains, setpoints=self.setpoints,
            hvac=self.hvac, window_model=self.window_model,
            ground_reflectance=self.ground_reflectance,
            optics_segments=self.segments)


def parse_config(data: dict, city: str | None = None) -> Config:
    """Turn a config mapping into a Config.

    Missing values fall back to the preset for ``site.city`` (or ``city``),
    then to library defaults.
    """
    if not isinstance(data, dict):
        raise ConfigError("configuration root must be an object")
    unknown = set(data) - set(_SECTIONS)
    if unknown:
        raise ConfigError(f"unknown sections: {sorted(unknown)}")
    d = {k: dict(data.get(k) or {}) for k in _SECTIONS}
    for k in _SECTIONS:
        if not isinstance(data.get(k, {}), dict):
            raise ConfigError(f"[{k}] must be an object")

    name = city or d["site"].pop("city", None) or "custom"
    d["site"].pop("city", None)
    preset = CITIES.get(name)
    if preset is None and not {"latitude", "longitude"} <= set(d["site"]):
        raise ConfigError(f"city {name!r} has no preset; give site.latitude "
                          "and site.longitude")
    site_vals = dict(latitude=preset.site.latitude if preset else None,
                     longitude=preset.site.longitude if preset else None,
                     timezone_offset=preset.site.timezone_offset if preset else 0.0)
    site_vals.update(d["site"])
    site = _build(SitePosition, site_vals, "site")

    weather = d["weather"]
    ground = float(weather.pop("ground_reflectance", 0.2))
    if "epw" not in weather:
        if preset is not None:
            weather.setdefault("monthly_dry_bulb", list(preset.monthly_dry_bulb))
            weather.setdefault("monthly_humidity", list(preset.monthly_humidity))
        missing = {"monthly_dry_bulb", "monthly_humidity"} - set(weather)
        if missing:
            raise ConfigError(f"[weather] needs 'epw' or {sorted(missing)}")
    extra = set(weather) - {"epw", "monthly_dry_bulb", "monthly_humidity",
                            "diurnal_amplitude", "diffuse_fraction"}
    if extra:
        raise ConfigError(f"[weather] unknown keys: {sorted(extra)}")

    env = d["envelope"]
    units = str(env.pop("units", "ip")).lower()
    if units not in ("ip", "si"):
        raise ConfigError("[envelope] units must be 'ip' or 'si'")
    scale = IP_TO_SI_U if units == "ip" else 1.0
    env_zone = {}
    if preset is not None:
        env_zone = dict(wall_u=preset.wall_u_ip * IP_TO_SI_U,
                        window_u=preset.window_u_ip * IP_TO_SI_U,
                        window_shgc=preset.shgc)
    for key, target in (("wall_u", "wall_u"), ("window_u", "window_u")):
        if key in env:
            env_zone[target] = float(env.pop(key)) * scale
    for key, target in (("shgc", "window_shgc"),
                        ("tau_visible", "window_tau_visible")):
        if key in env:
            env_zone[target] = env.pop(key)
    if env:
        raise ConfigError(f"[envelope] unknown keys: {sorted(env)}")
    zone = _build(ZoneSpec, {**env_zone, **d["zone"]}, "zone")

    blind = d["blind"]
    try:
        mode = BlindMode(blind.pop("mode", BlindMode.RDS.value))
    except ValueError as exc:
        raise ConfigError(f"[blind] {exc}") from exc
    reflectance = float(blind.pop("reflectance", 0.1))
    segments = int(blind.pop("segments", DEFAULT_SEGMENTS))
    geometry = _build(SlatGeometry, blind, "blind", DEFAULT_SLATS)

    cal = d["calendar"]
    if "heating_months" in cal:
        cal["heating_months"] = frozenset(cal["heating_months"])
    gains = d["gains"]
    if "occupied_weekdays" in gains:
        gains["occupied_weekdays"] = tuple(gains["occupied_weekdays"])

    cfg = Config(
        city=name, site=site, weather=weather, zone=zone, mode=mode,
        reflectance=reflectance, geometry=geometry, segments=segments,
        daylight=_build(DaylightConfig, d["daylight"], "daylight"),
        gains=_build(InternalGains, gains, "gains"),
        setpoints=_build(Setpoints, d["setpoints"], "setpoints"),
        calendar=_build(SeasonCalendar, cal, "calendar"),
        hvac=_build(IdealLoadsOptions, d["hvac"], "hvac"),
        window_model=_build(WindowModel, d["window"], "window"),
        ground_reflectance=ground, sweep=d["sweep"], raw=copy.deepcopy(data))
    if not 0.0 <= cfg.reflectance <= 1.0:
        raise ConfigError("[blind] reflectance outside [0, 1]")
    return cfg


def read_config_data(path: str | Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc


def load_config(path: str | Path, city: str | None = None) -> Config:
    return parse_config(read_config_data(path), city)


def sweep_configs(data: dict) -> tuple[list[Config], list[BlindMode], list[float]]:
    """Per-city configs plus the mode and reflectance lists of a sweep.

    Cities default to the three presets. A city without a preset must carry
    its own site and weather in the config.
    """
    sweep = dict((data or {}).get("sweep") or {})
    try:
        cities = [str(c) for c in sweep.get("cities", list(CITIES))]
        modes = [BlindMode(m) for m in
                 sweep.get("modes", [m.value for m in SWEEP_MODES])]
        rhos = [float(r) for r in sweep.get("reflectances", REFLECTANCES)]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"[sweep] {exc}") from exc
    if not cities or not modes or not rhos:
        raise ConfigError("[sweep] cities, modes and reflectances must be non-empty")
    if len(set(cities)) != len(cities):
        raise ConfigError("[sweep] duplicate city")
    return [parse_config(data, c) for c in cities], modes, rhos


# --- sweeps ------------------------------------------------------------------

class SweepFailure(RuntimeError):
    def __init__(self, label: dict, cause: Exception):
        super().__init__(f"scenario {label} failed: {cause}")
        self.label = label
        self.cause = cause


def run_sweep(base: dict[str, Scenario], modes=SWEEP_MODES,
              reflectances=REFLECTANCES) -> list[LoadReport]:
    """One annual run per (city, mode, reflectance), city-major order.

    ``base`` maps city name to a scenario carrying that city's weather and
    envelope; only its blind mode and reflectance are varied.
    """
    rows = []
    for city, scenario in base.items():
        for mode in modes:
            for rho in reflectances:
                cell = scenario.with_blind(mode, rho)
                try:
                    rows.append(run_annual(cell).report)
                except Exception as exc:   # noqa: BLE001 - re-raised with context
                    raise SweepFailure(cell.label, exc) from exc
    return rows


def default_sweep_bases(**kwargs) -> dict[str, Scenario]:
    return {c: city_scenario(c, **kwargs) for c in CITIES}


def _find(reports, city, mode, rho) -> LoadReport:
    mode = BlindMode(mode).value
    for r in reports:
        if (r.label.get("city") == city and r.label.get("mode") == mode
                and np.isclose(r.label.get("reflectance"), rho)):
            return r
    raise KeyError((city, mode, rho))


def rds_decomposition_check(rds: LoadReport, interior: LoadReport,
                            exterior: LoadReport,
                            calendar: SeasonCalendar = SeasonCalendar(),
                            tol: float = 1e-6) -> bool:
    """RDS months must equal the fixed mode active in that season."""
    cities = {r.label.get("city") for r in (rds, interior, exterior)}
    if len(cities) > 1:
        raise MismatchedWeather(f"reports come from different cities: {cities}")
    heating = calendar.is_heating(np.arange(1, 13))
    for attr in ("heating", "cooling", "lighting"):
        mine = getattr(rds, attr)
        expect = np.where(heating, getattr(interior, attr),
                          getattr(exterior, attr))
        if np.any(np.abs(mine - expect) > tol):
            return False
    return True


def efficiency(report_base: LoadReport, report_rds: LoadReport) -> float:
    base = report_base.total
    if base == 0.0:
        raise ZeroBase("base scenario has zero total load")
    if report_rds.total == base:
        return 0.0
    return (base - report_rds.total) / base


@dataclass(frozen=True)
class ComparisonRow:
    city: str
    pairing: str          # "same_reflectance" or "best_fixed"
    reflectance: float
    rds_total: float
    interior_total: float
    exterior_total: float
    vs_interior: float
    vs_exterior: float


def comparison_report(reports: list[LoadReport]) -> list[ComparisonRow]:
    """Efficiencies of RDS against both fixed modes.

    Two pairings are given: RDS against each fixed mode at the same slat
    reflectance, and RDS at the lowest swept reflectance against each fixed
    mode at that mode's own best reflectance.
    """
    cities = list(dict.fromkeys(r.label["city"] for r in reports))
    rhos = sorted({float(r.label["reflectance"]) for r in reports})
    rows = []
    for city in cities:
        for rho in rhos:
            rds = _find(reports, city, BlindMode.RDS, rho)
            i = _find(reports, city, BlindMode.FIXED_INTERIOR, rho)
            e = _find(reports, city, BlindMode.FIXED_EXTERIOR, rho)
            rows.append(ComparisonRow(city, "same_reflectance", rho, rds.total,
                                      i.total, e.total, efficiency(i, rds),
                                      efficiency(e, rds)))
        low = rhos[0]
        rds = _find(reports, city, BlindMode.RDS, low)
        best_i = min((_find(reports, city, BlindMode.FIXED_INTERIOR, r)
                      for r in rhos), key=lambda r: r.total)
        best_e = min((_find(reports, city, BlindMode.FIXED_EXTERIOR, r)
                      for r in rhos), key=lambda r: r.total)
        rows.append(ComparisonRow(city, "best_fixed", low, rds.total,
                                  best_i.total, best_e.total,
                                  efficiency(best_i, rds),
                                  efficiency(best_e, rds)))
    return rows


# --- CSV ---------------------------------------------------------------------

def _load_columns():
    cols = ["city", "mode", "reflectance"]
    for q in ("heating", "cooling", "lighting", "total"):
        cols += [f"{q}_{m}" for m in MONTH_NAMES] + [f"{q}_annual"]
    return cols


LOAD_COLUMNS = _load_columns()


def write_loads_csv(reports: list[LoadReport], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(LOAD_COLUMNS)
        for r in reports:
            row = [r.label.get("city", ""), r.label.get("mode", ""),
                   repr(float(r.label.get("reflectance", float("nan"))))]
            for monthly in (r.heating, r.cooling, r.lighting, r.total_monthly):
                row += [repr(float(v)) for v in monthly]
                row.append(repr(float(monthly.sum())))
            w.writerow(row)


def read_loads_csv(path: str | Path) -> list[LoadReport]:
    reports = []
    with open(path, newline="", encoding="utf-8") as fh:
        for rec in csv.DictReader(fh):
            monthly = {q: np.array([float(rec[f"{q}_{m}"]) for m in MONTH_NAMES])
                       for q in ("heating", "cooling", "lighting")}
            reports.append(LoadReport(
                monthly["heating"], monthly["cooling"], monthly["lighting"],
                {"city": rec["city"], "mode": rec["mode"],
                 "reflectance": float(rec["reflectance"])}))
    return reports


def write_comparison_csv(rows: list[ComparisonRow], path: str | Path) -> None:
    names = [f.name for f in fields(ComparisonRow)]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(names)
        for row in rows:
            w.writerow([v if isinstance(v, str) else repr(float(v))
                        for v in (getattr(row, n) for n in names)])


def write_trace_csv(trace: dict, path: str | Path) -> None:
    from .weather import CALENDAR
    names = list(trace)
    cols = [np.asarray(trace[n]) for n in names]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["timestamp"] + names)
        for i in range(len(cols[0])):
            stamp = CALENDAR.timestamp(i).isoformat(timespec="minutes")
            w.writerow([stamp] + [_cell_text(c[i]) for c in cols])


def _cell_text(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "" if np.isnan(v) else f"{float(v):.6g}"
    return str(v)
