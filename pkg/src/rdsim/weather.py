"""Hourly weather: EPW ingestion and synthesis from monthly normals."""
from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from typing import Iterable, TextIO

import numpy as np

HOURS_PER_YEAR = 8760
MONTH_DAYS = (31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)
# 2018 is a non-leap year starting on a Monday; used only to label hours
CANONICAL_YEAR = 2018

# EPW column indices (0-based) of the fields we read
_DRY_BULB, _RH, _DNI, _DHI = 6, 8, 14, 15
_MIN_FIELDS = 31
_MISSING = {_DRY_BULB: 99.9, _RH: 999.0, _DNI: 9999.0, _DHI: 9999.0}


class WeatherError(ValueError):
    pass


class MalformedHeader(WeatherError):
    pass


class BadRecord(WeatherError):
    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class WrongLength(WeatherError):
    pass


class BadInput(WeatherError):
    pass


@dataclass(frozen=True)
class SitePosition:
    latitude: float
    longitude: float
    timezone_offset: float = 0.0   # hours east of UTC

    def __post_init__(self):
        if abs(self.latitude) > 90 or abs(self.longitude) > 180:
            raise BadInput(f"invalid site {self}")


@dataclass(frozen=True)
class WeatherRecord:
    timestamp: datetime
    dry_bulb: float
    relative_humidity: float
    direct_normal_irradiance: float
    diffuse_horizontal_irradiance: float


def _month_index() -> np.ndarray:
    return np.repeat(np.arange(1, 13), [d * 24 for d in MONTH_DAYS])


@dataclass(frozen=True)
class Calendar:
    """Hour labels for the canonical 365-day year (hour = start of step)."""

    month: np.ndarray = field(default_factory=_month_index)
    day_of_year: np.ndarray = field(
        default_factory=lambda: np.arange(HOURS_PER_YEAR) // 24 + 1)
    hour: np.ndarray = field(
        default_factory=lambda: np.arange(HOURS_PER_YEAR) % 24)

    @property
    def weekday(self) -> np.ndarray:
        # Monday = 0
        return (self.day_of_year - 1) % 7

    def timestamp(self, i: int) -> datetime:
        return datetime(CANONICAL_YEAR, 1, 1) + timedelta(hours=int(i))


CALENDAR = Calendar()


def hour_index(month: int, day: int, hour: int) -> int:
    """Index of the hourly step starting at ``hour`` on ``month``/``day``."""
    return (sum(MONTH_DAYS[:month - 1]) + day - 1) * 24 + hour


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class WeatherSeries:
    site: SitePosition
    dry_bulb: np.ndarray
    relative_humidity: np.ndarray
    direct_normal: np.ndarray
    diffuse_horizontal: np.ndarray

    def __post_init__(self):
        for name in ("dry_bulb", "relative_humidity", "direct_normal",
                     "diffuse_horizontal"):
            arr = _frozen(getattr(self, name))
            if arr.shape != (HOURS_PER_YEAR,):
                raise WrongLength(f"{name} has {arr.size} values, "
                                  f"expected {HOURS_PER_YEAR}")
            object.__setattr__(self, name, arr)
        if np.any(self.direct_normal < 0) or np.any(self.diffuse_horizontal < 0):
            raise BadInput("negative irradiance")
        if np.any((self.relative_humidity < 0) | (self.relative_humidity > 100)):
            raise BadInput("relative humidity outside [0, 100]")
        if np.any((self.dry_bulb < -90) | (self.dry_bulb > 60)):
            raise BadInput("dry bulb outside [-90, 60]")

    def __len__(self):
        return HOURS_PER_YEAR

    def record(self, i: int) -> WeatherRecord:
        return WeatherRecord(CALENDAR.timestamp(i), float(self.dry_bulb[i]),
                             float(self.relative_humidity[i]),
                             float(self.direct_normal[i]),
                             float(self.diffuse_horizontal[i]))

    @property
    def records(self) -> list[WeatherRecord]:
        return [self.record(i) for i in range(HOURS_PER_YEAR)]

    def __eq__(self, other):
        if not isinstance(other, WeatherSeries):
            return NotImplemented
        return self.site == other.site and all(
            np.array_equal(getattr(self, n), getattr(other, n))
            for n in ("dry_bulb", "relative_humidity", "direct_normal",
                      "diffuse_horizontal"))

    def scaled_irradiance(self, factor: float) -> "WeatherSeries":
        return WeatherSeries(self.site, self.dry_bulb, self.relative_humidity,
                             self.direct_normal * factor,
                             self.diffuse_horizontal * factor)


# --- EPW ---------------------------------------------------------------------

def _parse_location(line: str) -> SitePosition:
    parts = [p.strip() for p in line.split(",")]
    if not parts or parts[0].upper() != "LOCATION" or len(parts) < 9:
        raise MalformedHeader("first header line must be LOCATION with "
                              "latitude, longitude and timezone")
    try:
        return SitePosition(float(parts[6]), float(parts[7]), float(parts[8]))
    except (ValueError, BadInput) as exc:
        raise MalformedHeader(f"unparsable LOCATION line: {exc}") from exc


def parse_epw(text: str | TextIO) -> WeatherSeries:
    """Read the fields used by the simulator from EPW text.

    Missing-value sentinels are replaced by the previous valid hour (0 for
    irradiance at the start of the file).
    """
    stream = io.StringIO(text) if isinstance(text, str) else text
    lines = stream.read().splitlines()
    if len(lines) < 8:
        raise MalformedHeader("fewer than 8 header lines")
    site = None
    for line in lines[:8]:
        if line.strip().upper().startswith("LOCATION"):
            site = _parse_location(line)
            break
    if site is None:
        raise MalformedHeader("LOCATION header line not found")

    rows = [(n, line) for n, line in enumerate(lines[8:], start=9)
            if line.strip()]
    if len(rows) != HOURS_PER_YEAR:
        raise WrongLength(f"{len(rows)} data rows, expected {HOURS_PER_YEAR}")

    cols = {k: np.empty(HOURS_PER_YEAR) for k in _MISSING}
    last = {_DRY_BULB: None, _RH: None, _DNI: 0.0, _DHI: 0.0}
    for i, (n, line) in enumerate(rows):
        fields = line.split(",")
        if len(fields) < _MIN_FIELDS:
            raise BadRecord(n, f"{len(fields)} fields, need {_MIN_FIELDS}")
        for k, sentinel in _MISSING.items():
            try:
                v = float(fields[k])
            except ValueError:
                raise BadRecord(n, f"field {k + 1} is not numeric: "
                                   f"{fields[k]!r}") from None
            if math.isnan(v):
                raise BadRecord(n, f"field {k + 1} is NaN")
            if v >= sentinel:
                if last[k] is None:
                    raise BadRecord(n, f"field {k + 1} missing with no "
                                       "earlier valid value")
                v = last[k]
            last[k] = v
            cols[k][i] = v
    try:
        return WeatherSeries(site, cols[_DRY_BULB], cols[_RH], cols[_DNI],
                             cols[_DHI])
    except BadInput as exc:
        raise WeatherError(str(exc)) from exc


def to_epw(series: WeatherSeries, city: str = "synthetic") -> str:
    """Serialize to EPW text. Unused fields carry EPW missing markers."""
    s = series.site
    header = [
        f"LOCATION,{city},-,-,rdsim,000000,{s.latitude!r},{s.longitude!r},"
        f"{s.timezone_offset!r},0.0",
        "DESIGN CONDITIONS,0",
        "TYPICAL/EXTREME PERIODS,0",
        "GROUND TEMPERATURES,0",
        "HOLIDAYS/DAYLIGHT SAVINGS,No,0,0,0",
        "COMMENTS 1,written by rdsim",
        "COMMENTS 2,",
        "DATA PERIODS,1,1,Data,Monday, 1/ 1,12/31",
    ]
    out = io.StringIO()
    out.write("\n".join(header) + "\n")
    cal = CALENDAR
    for i in range(HOURS_PER_YEAR):
        doy = int(cal.day_of_year[i])
        m = int(cal.month[i])
        d = doy - sum(MONTH_DAYS[:m - 1])
        f = [str(CANONICAL_YEAR), str(m), str(d), str(int(cal.hour[i]) + 1),
             "60", "?9?9?9?9E0?9?9?9?9?9?9?9?9?9?9?9?9?9?9?9*9*9?9?9?9",
             repr(float(series.dry_bulb[i])), "99.9",
             repr(float(series.relative_humidity[i])), "999999",
             "9999", "9999", "9999", "9999",
             repr(float(series.direct_normal[i])),
             repr(float(series.diffuse_horizontal[i]))]
        f += ["999999"] * 4 + ["999", "999", "9999", "99", "99", "9999",
                               "99999", "9", "999999999", "999", "0.999",
                               "999", "99", "999", "9999", "999", "99.0"]
        out.write(",".join(f) + "\n")
    return out.getvalue()


# --- synthesis ---------------------------------------------------------------

def diurnal_profile(hour: np.ndarray, amplitude: float = 5.0,
                    t_min: float = 5.0, t_max: float = 15.0) -> np.ndarray:
    """Asymmetric daily cosine: -amplitude at ``t_min``, +amplitude at ``t_max``."""
    h = np.asarray(hour, dtype=float)
    rise = t_max - t_min
    fall = 24.0 - rise
    since_min = np.mod(h - t_min, 24.0)
    rising = since_min <= rise
    out = np.where(rising,
                   -np.cos(np.pi * since_min / rise),
                   np.cos(np.pi * (since_min - rise) / fall))
    return amplitude * out


def clear_sky(altitude_deg: np.ndarray, diffuse_fraction: float = 0.25):
    """Haurwitz global horizontal split into (DNI, DHI)."""
    alt = np.radians(np.asarray(altitude_deg, dtype=float))
    sin_a = np.sin(alt)
    up = sin_a > 0
    safe = np.where(up, sin_a, 1.0)
    ghi = np.where(up, 1098.0 * safe * np.exp(-0.057 / safe), 0.0)
    dhi = diffuse_fraction * ghi
    dni = np.where(up, (1.0 - diffuse_fraction) * ghi / safe, 0.0)
    return dni, dhi


def synth_weather(monthly_dry_bulb: Iterable[float],
                  monthly_humidity: Iterable[float], site: SitePosition,
                  diurnal_amplitude: float = 5.0,
                  diffuse_fraction: float = 0.25) -> WeatherSeries:
    """Hourly clear-sky year whose monthly means match the given normals."""
    from .solar import solar_positions

    tdb = np.asarray(list(monthly_dry_bulb), dtype=float)
    rh = np.asarray(list(monthly_humidity), dtype=float)
    if tdb.shape != (12,) or rh.shape != (12,):
        raise BadInput("need exactly 12 monthly values")
    if np.any((rh < 0) | (rh > 100)):
        raise BadInput("humidity outside [0, 100]")
    if not isinstance(site, SitePosition):
        raise BadInput("site must be a SitePosition")

    cal = CALENDAR
    swing = diurnal_profile(cal.hour, diurnal_amplitude)
    month = cal.month - 1
    # remove the sampled monthly mean of the swing so means match exactly
    bias = np.bincount(month, weights=swing) / np.bincount(month)
    dry_bulb = tdb[month] + swing - bias[month]

    altitude, _ = solar_positions(site, cal.day_of_year, cal.hour + 0.5)
    dni, dhi = clear_sky(altitude, diffuse_fraction)
    return WeatherSeries(site, dry_bulb, rh[month], dni, dhi)


def monthly_summary(series: WeatherSeries) -> list[tuple[float, float]]:
    month = CALENDAR.month - 1
    counts = np.bincount(month)
    tdb = np.bincount(month, weights=series.dry_bulb) / counts
    rh = np.bincount(month, weights=series.relative_humidity) / counts
    return [(float(a), float(b)) for a, b in zip(tdb, rh)]
