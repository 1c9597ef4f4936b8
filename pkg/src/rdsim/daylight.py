"""Lumen-method workplane illuminance and continuous dimming."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blind_optics import BlindOpticalProperties
from .solar import PlaneIrradiance


@dataclass(frozen=True)
class DaylightConfig:
    illuminance_setpoint: float = 500.0    # lux
    sensor_height: float = 0.8             # m, informational
    luminous_efficacy_beam: float = 93.0   # lm/W
    luminous_efficacy_diffuse: float = 110.0
    room_utilization: float = 0.05
    minimum_output: float = 0.0

    def __post_init__(self):
        if self.illuminance_setpoint <= 0:
            raise ValueError("illuminance setpoint must be positive")
        if self.luminous_efficacy_beam <= 0 or self.luminous_efficacy_diffuse <= 0:
            raise ValueError("luminous efficacies must be positive")
        if not 0.0 < self.room_utilization <= 1.0:
            raise ValueError("room utilization must lie in (0, 1]")


def interior_illuminance(poa: PlaneIrradiance,
                         optics_visible: BlindOpticalProperties | None,
                         glazing, zone, cfg: DaylightConfig):
    """Average workplane illuminance (lux) from the window.

    ``optics_visible=None`` means an unshaded window.
    """
    if optics_visible is None:
        beam_t, diff_t = 1.0, 1.0
    else:
        beam_t = optics_visible.tau_beam_beam + optics_visible.tau_beam_diffuse
        diff_t = optics_visible.tau_diffuse_front
    lumens_per_m2 = (poa.beam * cfg.luminous_efficacy_beam * beam_t
                     + (poa.sky_diffuse + poa.ground_reflected)
                     * cfg.luminous_efficacy_diffuse * diff_t)
    flux = glazing.area * lumens_per_m2 * glazing.tau_visible
    return flux * cfg.room_utilization / zone.floor_area


def dimming_fraction(e_daylight, setpoint: float, minimum_output: float = 0.0):
    if setpoint <= 0:
        raise ValueError("setpoint must be positive")
    return np.clip(1.0 - np.asarray(e_daylight, dtype=float) / setpoint,
                   minimum_output, 1.0)


def lighting_power(fraction, gains, zone, occupied):
    """Electric lighting power in W (also its heat gain to the zone)."""
    full = gains.lighting_density * zone.floor_area
    return np.where(occupied, np.asarray(fraction) * full, 0.0)
