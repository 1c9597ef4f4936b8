"""Single-zone hourly heat balance with ideal heating/cooling.

Only the south wall and its window exchange heat with outdoors. The zone is a
single air+mass node. With zero capacitance every hour is a steady-state
balance. With a capacitance each day is solved for its periodic (24 h
repeating) temperature cycle, so days never carry state into each other.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import TYPE_CHECKING

import numpy as np

from .blind_optics import BlindLocation, BlindOpticalProperties, blind_properties
from .control import blind_schedule
from .daylight import dimming_fraction, interior_illuminance, lighting_power
from .fenestration import GlazingSpec, window_heat_gain
from .solar import PlaneIrradiance, plane_irradiance, solar_positions
from .weather import CALENDAR, HOURS_PER_YEAR

if TYPE_CHECKING:
    from .scenario import Scenario

STEP = 3600.0   # s
_BISECT_LO, _BISECT_HI, _BISECT_ITERS = -100.0, 150.0, 64


@dataclass(frozen=True)
class ZoneSpec:
    width: float = 3.5
    depth: float = 4.0
    height: float = 3.0
    wwr: float = 0.3
    wall_u: float = 0.077 * 5.678263
    window_u: float = 0.42 * 5.678263
    window_shgc: float = 0.25
    window_tau_visible: float = 0.6
    # J/K; 0 selects the steady-state balance
    capacitance: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.wwr < 1.0:
            raise ValueError("wwr must lie in (0, 1)")
        if min(self.width, self.depth, self.height) <= 0:
            raise ValueError("zone dimensions must be positive")
        if self.capacitance < 0:
            raise ValueError("capacitance must be >= 0")

    @property
    def floor_area(self) -> float:
        return self.width * self.depth

    @property
    def south_wall_area(self) -> float:
        return self.width * self.height

    @property
    def window_area(self) -> float:
        return self.wwr * self.south_wall_area

    @property
    def opaque_area(self) -> float:
        return self.south_wall_area - self.window_area

    @property
    def glazing(self) -> GlazingSpec:
        return GlazingSpec(self.window_u, self.window_shgc,
                           self.window_tau_visible, self.window_area)

    @property
    def envelope_ua(self) -> float:
        """Bare-window plus wall conductance, W/K."""
        return self.wall_u * self.opaque_area + self.window_u * self.window_area


@dataclass(frozen=True)
class InternalGains:
    people_count: float = 2
    sensible_per_person: float = 120.0
    lighting_density: float = 7.97
    equipment_density: float = 6.89
    standby_fraction: float = 0.1
    occupied_weekdays: tuple = (0, 1, 2, 3, 4)
    occupied_start: int = 8
    occupied_end: int = 18

    def __post_init__(self):
        if min(self.people_count, self.sensible_per_person,
               self.lighting_density, self.equipment_density) < 0:
            raise ValueError("gain densities must be >= 0")

    def occupied(self, weekday, hour):
        weekday = np.asarray(weekday)
        hour = np.asarray(hour)
        return (np.isin(weekday, self.occupied_weekdays)
                & (hour >= self.occupied_start) & (hour < self.occupied_end))


@dataclass(frozen=True)
class Setpoints:
    heating: float = 21.0
    cooling: float = 26.0

    def __post_init__(self):
        if not self.heating < self.cooling:
            raise ValueError("heating setpoint must be below cooling setpoint")


@dataclass(frozen=True)
class IdealLoadsOptions:
    # False: setpoints held only in occupied hours
    always_on: bool = True
    # outdoor-air economizer meets cooling demand when outdoors is cooler
    economizer: bool = True
    economizer_conductance: float | None = None   # W/K, None = unlimited


@dataclass(frozen=True)
class IdealLoadResult:
    heating: np.ndarray | float     # Wh
    cooling: np.ndarray | float     # Wh
    zone_air_temp: np.ndarray | float
    economizer: np.ndarray | float = 0.0   # Wh removed by outdoor air


def internal_gain_at(gains: InternalGains, zone: ZoneSpec, occupied):
    """People + equipment gain in W (lighting excluded)."""
    occ = np.asarray(occupied, dtype=bool)
    equipment = gains.equipment_density * zone.floor_area
    people = gains.people_count * gains.sensible_per_person
    return np.where(occ, people + equipment, gains.standby_fraction * equipment)


def _ideal_step(t_start, gains, ua, t_out, setpoints, capacity_rate,
                controlled, options):
    """One backward-Euler hour for arrays of zones.

    ``capacity_rate`` is C/dt in W/K.
    """
    a = capacity_rate
    th, tc = setpoints.heating, setpoints.cooling
    drive = a * t_start + gains + ua * t_out

    def net(t):
        return drive - (a + ua) * t

    need_heat = np.maximum(0.0, -net(th))
    need_cool = np.maximum(0.0, net(tc))
    if options.economizer:
        headroom = np.maximum(tc - t_out, 0.0)
        if options.economizer_conductance is None:
            free = np.where(headroom > 0, need_cool, 0.0)
        else:
            free = np.minimum(need_cool,
                              options.economizer_conductance * headroom)
    else:
        free = np.zeros_like(need_cool)
    heating = np.where(controlled, need_heat, 0.0)
    economizer = np.where(controlled, free, 0.0)
    cooling = np.where(controlled, need_cool - free, 0.0)

    denom = a + ua
    with np.errstate(divide="ignore", invalid="ignore"):
        free_float = np.where(denom > 0, drive / np.where(denom > 0, denom, 1.0),
                              t_start)
    temp = np.where(controlled & (need_heat > 0), th,
                    np.where(controlled & (need_cool > 0), tc, free_float))
    return heating, cooling, economizer, temp


def step_hour(ua: float, t_out: float, gains: float,
              setpoints: Setpoints = Setpoints(), capacitance: float = 0.0,
              t_start: float | None = None, controlled: bool = True,
              options: IdealLoadsOptions = IdealLoadsOptions(economizer=False)
              ) -> IdealLoadResult:
    """Ideal loads for one hour.

    ``gains`` is every temperature-independent heat input in W (solar part of
    the window gain, people, equipment, lighting). Envelope exchange is
    ``ua * (t_out - t_zone)``.
    """
    if t_start is None:
        t_start = 0.5 * (setpoints.heating + setpoints.cooling)
    h, c, e, t = _ideal_step(np.float64(t_start), np.float64(gains),
                             np.float64(ua), np.float64(t_out), setpoints,
                             capacitance / STEP, np.bool_(controlled), options)
    return IdealLoadResult(float(h) * 1.0, float(c) * 1.0, float(t), float(e))


def solve_ideal_loads(gains, ua, t_out, controlled, setpoints: Setpoints,
                      capacitance: float, options: IdealLoadsOptions):
    """Ideal loads for a whole year of hourly arrays."""
    gains, ua, t_out = (np.broadcast_to(np.asarray(x, dtype=float),
                                        (HOURS_PER_YEAR,))
                        for x in (gains, ua, t_out))
    controlled = np.broadcast_to(np.asarray(controlled, dtype=bool),
                                 (HOURS_PER_YEAR,))
    if capacitance == 0.0:
        h, c, e, t = _ideal_step(np.zeros(HOURS_PER_YEAR), gains, ua, t_out,
                                 setpoints, 0.0, controlled, options)
        return IdealLoadResult(h, c, t, e)

    rate = capacitance / STEP
    days = HOURS_PER_YEAR // 24
    g, u, to, ctl = (x.reshape(days, 24) for x in (gains, ua, t_out, controlled))

    def run(t0, record=False):
        t = t0
        out = []
        for k in range(24):
            h, c, e, t = _ideal_step(t, g[:, k], u[:, k], to[:, k], setpoints,
                                     rate, ctl[:, k], options)
            if record:
                out.append((h, c, e, t))
        return t, out

    lo = np.full(days, _BISECT_LO)
    hi = np.full(days, _BISECT_HI)
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        end, _ = run(mid)
        above = end > mid
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
    _, steps = run(0.5 * (lo + hi), record=True)
    h, c, e, t = (np.stack([s[i] for s in steps], axis=1).ravel()
                  for i in range(4))
    return IdealLoadResult(h, c, t, e)


# --- reporting ---------------------------------------------------------------

@dataclass(frozen=True)
class LoadReport:
    """Monthly loads in kWh (arrays of length 12)."""

    heating: np.ndarray
    cooling: np.ndarray
    lighting: np.ndarray
    label: dict = field(default_factory=dict)

    @property
    def total_monthly(self) -> np.ndarray:
        return self.heating + self.cooling + self.lighting

    @property
    def annual_heating(self) -> float:
        return float(self.heating.sum())

    @property
    def annual_cooling(self) -> float:
        return float(self.cooling.sum())

    @property
    def annual_lighting(self) -> float:
        return float(self.lighting.sum())

    @property
    def total(self) -> float:
        return self.annual_heating + self.annual_cooling + self.annual_lighting

    @classmethod
    def from_hourly(cls, heating_wh, cooling_wh, lighting_wh, label=None):
        month = CALENDAR.month - 1
        agg = lambda x: np.bincount(month, weights=np.asarray(x),
                                    minlength=12) / 1000.0
        return cls(agg(heating_wh), agg(cooling_wh), agg(lighting_wh),
                   dict(label or {}))


@dataclass
class AnnualResult:
    report: LoadReport
    trace: dict


@lru_cache(maxsize=16)
def _sun(site):
    alt, az = solar_positions(site, CALENDAR.day_of_year, CALENDAR.hour + 0.5)
    alt.setflags(write=False)
    az.setflags(write=False)
    return alt, az


def run_annual(scenario: "Scenario", with_trace: bool = False,
               window_breakdown: bool = False) -> AnnualResult:
    """Simulate one scenario year: sun, blind, optics, window gains, daylight,
    internal gains, ideal loads."""
    wx = scenario.weather
    zone = scenario.zone
    glazing = zone.glazing
    model = scenario.window_model
    alt, az = _sun(wx.site)
    poa = plane_irradiance(wx.direct_normal, wx.diffuse_horizontal, alt, az,
                           scenario.ground_reflectance)
    t_out = wx.dry_bulb
    occupied = scenario.gains.occupied(CALENDAR.weekday, CALENDAR.hour)

    solar_gain = np.zeros(HOURS_PER_YEAR)
    window_ua = np.zeros(HOURS_PER_YEAR)
    illuminance = np.zeros(HOURS_PER_YEAR)
    location = np.full(HOURS_PER_YEAR, BlindLocation.NONE.value, dtype=object)
    slat_angle = np.full(HOURS_PER_YEAR, np.nan)
    parts = []
    dark = PlaneIrradiance(0.0, 0.0, 0.0, 0.0, 0.0)
    for state, mask in blind_schedule(scenario.mode, scenario.calendar,
                                      CALENDAR.month, scenario.reflectance,
                                      scenario.geometry):
        sub = PlaneIrradiance(*(np.asarray(getattr(poa, f))[mask] for f in
                                ("beam", "sky_diffuse", "ground_reflected",
                                 "incidence_angle", "profile_angle")))
        if state.location == BlindLocation.NONE:
            optics = optics_vis = None
        else:
            optics = blind_properties(state, sub.profile_angle, "solar",
                                      scenario.optics_segments)
            optics_vis = blind_properties(state, sub.profile_angle, "visible",
                                          scenario.optics_segments)
            location[mask] = state.location.value
            slat_angle[mask] = state.slat_angle
        to = t_out[mask]
        # window flows are linear in the sun and in (t_out - t_zone)
        solar_gain[mask] = window_heat_gain(glazing, state, sub, to, to,
                                            optics, model).q_total
        unit = _scalar_optics(optics)
        window_ua[mask] = window_heat_gain(glazing, state, dark, 1.0, 0.0,
                                           unit, model).q_total
        illuminance[mask] = interior_illuminance(sub, optics_vis, glazing,
                                                 zone, scenario.daylight)
        parts.append((state, mask, sub, optics))

    fraction = dimming_fraction(illuminance,
                                scenario.daylight.illuminance_setpoint,
                                scenario.daylight.minimum_output)
    light_w = lighting_power(fraction, scenario.gains, zone, occupied)
    internal_w = internal_gain_at(scenario.gains, zone, occupied)
    wall_ua = zone.wall_u * zone.opaque_area
    gains = solar_gain + internal_w + light_w
    ua = window_ua + wall_ua
    controlled = (np.ones(HOURS_PER_YEAR, dtype=bool)
                  if scenario.hvac.always_on else occupied)
    loads = solve_ideal_loads(gains, ua, t_out, controlled, scenario.setpoints,
                              zone.capacitance, scenario.hvac)
    report = LoadReport.from_hourly(loads.heating, loads.cooling, light_w,
                                    scenario.label)
    trace = {}
    if with_trace or window_breakdown:
        trace = {
            "t_out": t_out, "beam": poa.beam, "sky_diffuse": poa.sky_diffuse,
            "ground_reflected": poa.ground_reflected,
            "profile_angle": poa.profile_angle,
            "blind_location": location, "slat_angle": slat_angle,
            "window_q_total": solar_gain + window_ua * (t_out - loads.zone_air_temp),
            "illuminance": illuminance, "lighting_w": light_w,
            "internal_w": internal_w, "zone_temp": loads.zone_air_temp,
            "heating_wh": loads.heating, "cooling_wh": loads.cooling,
            "economizer_wh": loads.economizer, "gains_w": gains, "ua": ua,
            "occupied": occupied,
        }
    if window_breakdown:
        cols = {}
        for state, mask, sub, optics in parts:
            bd = window_heat_gain(glazing, state, sub, t_out[mask],
                                  loads.zone_air_temp[mask], optics, model)
            for name, value in bd.as_dict().items():
                cols.setdefault(name, np.zeros(HOURS_PER_YEAR))[mask] = value
        trace.update(cols)
    return AnnualResult(report, trace)


def _scalar_optics(optics):
    """Optics record usable with a scalar (sunless) irradiance."""
    if optics is None:
        return None
    return BlindOpticalProperties(
        optics.band, 0.0, 0.0, 0.0, 0.0,
        optics.tau_diffuse_front, optics.rho_diffuse_front,
        optics.alpha_diffuse_front, optics.tau_diffuse_back,
        optics.rho_diffuse_back, optics.alpha_diffuse_back)
