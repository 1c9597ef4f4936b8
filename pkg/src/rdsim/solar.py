"""Sun position and irradiance on the south-facing vertical facade."""
from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime

import numpy as np

from .weather import SitePosition, WeatherRecord

SURFACE_AZIMUTH = 180.0   # south, clockwise from north
_MAX_PROFILE = np.nextafter(90.0, 0.0)


class SunBelowHorizon(ValueError):
    pass


@dataclass(frozen=True)
class SolarPosition:
    altitude: float
    azimuth: float

    @property
    def sun_up(self) -> bool:
        return self.altitude > 0.0


@dataclass(frozen=True)
class PlaneIrradiance:
    beam: np.ndarray | float
    sky_diffuse: np.ndarray | float
    ground_reflected: np.ndarray | float
    incidence_angle: np.ndarray | float
    profile_angle: np.ndarray | float

    @property
    def diffuse(self):
        return self.sky_diffuse + self.ground_reflected

    @property
    def total(self):
        return self.beam + self.sky_diffuse + self.ground_reflected


def _gamma(day_of_year):
    return 2.0 * np.pi * (np.asarray(day_of_year, dtype=float) - 1.0) / 365.0


def declination(day_of_year) -> np.ndarray:
    """Spencer (1971) series, radians."""
    g = _gamma(day_of_year)
    return (0.006918 - 0.399912 * np.cos(g) + 0.070257 * np.sin(g)
            - 0.006758 * np.cos(2 * g) + 0.000907 * np.sin(2 * g)
            - 0.002697 * np.cos(3 * g) + 0.00148 * np.sin(3 * g))


def equation_of_time(day_of_year) -> np.ndarray:
    """Spencer (1971), minutes."""
    g = _gamma(day_of_year)
    return 229.18 * (0.000075 + 0.001868 * np.cos(g) - 0.032077 * np.sin(g)
                     - 0.014615 * np.cos(2 * g) - 0.040849 * np.sin(2 * g))


def solar_time(site: SitePosition, day_of_year, clock_hour):
    """Apparent solar time in hours from local standard clock time."""
    meridian = 15.0 * site.timezone_offset
    return (np.asarray(clock_hour, dtype=float)
            + (site.longitude - meridian) / 15.0
            + equation_of_time(day_of_year) / 60.0)


def position_from_solar_time(latitude: float, day_of_year, solar_hour):
    """(altitude, azimuth) in degrees for a given apparent solar time."""
    lat = np.radians(latitude)
    dec = declination(day_of_year)
    omega = np.radians(15.0 * (np.asarray(solar_hour, dtype=float) - 12.0))
    sin_alt = (np.sin(lat) * np.sin(dec)
               + np.cos(lat) * np.cos(dec) * np.cos(omega))
    alt = np.degrees(np.arcsin(np.clip(sin_alt, -1.0, 1.0)))
    # azimuth measured from south, positive toward west
    az_south = np.arctan2(np.sin(omega),
                          np.cos(omega) * np.sin(lat) - np.tan(dec) * np.cos(lat))
    az = np.mod(np.degrees(az_south) + 180.0, 360.0)
    return alt, az


def solar_positions(site: SitePosition, day_of_year, clock_hour):
    """Vectorized (altitude, azimuth) at fractional local standard clock hours."""
    return position_from_solar_time(
        site.latitude, day_of_year, solar_time(site, day_of_year, clock_hour))


def solar_position(site: SitePosition, timestamp: datetime,
                   step_offset: float = 0.5) -> SolarPosition:
    """Sun position for the hourly step starting at ``timestamp``.

    ``step_offset`` (hours) places the evaluation inside the step; the
    default evaluates at the step mid-point.
    """
    doy = timestamp.timetuple().tm_yday
    hour = timestamp.hour + timestamp.minute / 60.0 + step_offset
    alt, az = solar_positions(site, doy, hour)
    return SolarPosition(float(alt), float(az))


def profile_angle_from(altitude, azimuth):
    """Vertical profile angle on the south facade, clamped to [0, 90)."""
    alt = np.radians(np.asarray(altitude, dtype=float))
    gamma = np.radians(np.asarray(azimuth, dtype=float) - SURFACE_AZIMUTH)
    p = np.degrees(np.arctan2(np.tan(alt), np.cos(gamma)))
    return np.clip(p, 0.0, _MAX_PROFILE)


def profile_angle(pos: SolarPosition) -> float:
    if not pos.sun_up:
        raise SunBelowHorizon(f"altitude {pos.altitude:.2f} deg")
    return float(profile_angle_from(pos.altitude, pos.azimuth))


def incidence_angle_from(altitude, azimuth):
    """Angle between the sun and the south facade normal, degrees."""
    alt = np.radians(np.asarray(altitude, dtype=float))
    gamma = np.radians(np.asarray(azimuth, dtype=float) - SURFACE_AZIMUTH)
    cos_i = np.cos(alt) * np.cos(gamma)
    return np.degrees(np.arccos(np.clip(cos_i, -1.0, 1.0)))


def plane_irradiance(dni, dhi, altitude, azimuth,
                     ground_reflectance: float = 0.2) -> PlaneIrradiance:
    """Vectorized isotropic-sky irradiance on the vertical south plane."""
    dni = np.asarray(dni, dtype=float)
    dhi = np.asarray(dhi, dtype=float)
    alt = np.asarray(altitude, dtype=float)
    inc = incidence_angle_from(alt, azimuth)
    cos_i = np.cos(np.radians(inc))
    up = alt > 0.0
    beam = np.where(up & (cos_i > 0.0), dni * np.maximum(cos_i, 0.0), 0.0)
    sky = 0.5 * dhi
    horiz_beam = np.where(up, dni * np.sin(np.radians(np.maximum(alt, 0.0))), 0.0)
    ground = (horiz_beam + dhi) * ground_reflectance * 0.5
    prof = np.where(up, profile_angle_from(np.maximum(alt, 0.0), azimuth), 0.0)
    return PlaneIrradiance(beam, sky, ground, inc, prof)


def plane_of_array(record: WeatherRecord, pos: SolarPosition,
                   ground_reflectance: float = 0.2) -> PlaneIrradiance:
    poa = plane_irradiance(record.direct_normal_irradiance,
                           record.diffuse_horizontal_irradiance,
                           pos.altitude, pos.azimuth, ground_reflectance)
    return PlaneIrradiance(*(float(getattr(poa, f)) for f in (
        "beam", "sky_diffuse", "ground_reflected", "incidence_angle",
        "profile_angle")))
