"""Blind placement and slat-angle control."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from datetime import datetime

import numpy as np

from .blind_optics import BlindLocation, BlindState, SlatGeometry

DEFAULT_SLATS = SlatGeometry(width=20.0, separation=20.0, conductivity=160.0,
                               reflectance_front=0.5, reflectance_back=0.5,
                               emissivity_front=0.9, emissivity_back=0.9)


class BlindMode(str, enum.Enum):
    FIXED_INTERIOR = "interior"
    FIXED_EXTERIOR = "exterior"
    RDS = "rds"
    NO_BLIND = "none"


@dataclass(frozen=True)
class SeasonCalendar:
    heating_months: frozenset = frozenset({11, 12, 1, 2, 3, 4})
    heating_slat_angle: float = 120.0
    cooling_slat_angle: float = 30.0

    def __post_init__(self):
        months = frozenset(int(m) for m in self.heating_months)
        if not months <= set(range(1, 13)):
            raise ValueError(f"invalid months {sorted(months)}")
        object.__setattr__(self, "heating_months", months)

    @property
    def cooling_months(self) -> frozenset:
        return frozenset(range(1, 13)) - self.heating_months

    def is_heating(self, month) -> np.ndarray | bool:
        out = np.isin(np.asarray(month), sorted(self.heating_months))
        return bool(out) if out.ndim == 0 else out


def _location(mode: BlindMode, heating: bool) -> BlindLocation:
    if mode == BlindMode.FIXED_INTERIOR:
        return BlindLocation.INTERIOR
    if mode == BlindMode.FIXED_EXTERIOR:
        return BlindLocation.EXTERIOR
    if mode == BlindMode.RDS:
        return BlindLocation.INTERIOR if heating else BlindLocation.EXTERIOR
    return BlindLocation.NONE


def blind_state_for(mode: BlindMode, calendar: SeasonCalendar,
                    timestamp: datetime, reflectance: float,
                    geometry: SlatGeometry = DEFAULT_SLATS) -> BlindState:
    mode = BlindMode(mode)
    heating = calendar.is_heating(timestamp.month)
    angle = (calendar.heating_slat_angle if heating
             else calendar.cooling_slat_angle)
    return BlindState(_location(mode, heating), angle,
                      geometry.with_reflectance(reflectance))


def blind_schedule(mode: BlindMode, calendar: SeasonCalendar, month,
                   reflectance: float,
                   geometry: SlatGeometry = DEFAULT_SLATS):
    """Group hours by blind state: list of (BlindState, boolean mask)."""
    mode = BlindMode(mode)
    heating = calendar.is_heating(month)
    groups = []
    for season in (True, False):
        mask = heating == season
        if not mask.any():
            continue
        angle = (calendar.heating_slat_angle if season
                 else calendar.cooling_slat_angle)
        state = BlindState(_location(mode, season), angle,
                           geometry.with_reflectance(reflectance))
        groups.append((state, mask))
    return groups
