"""Hourly heat balance of a glazing + venetian blind assembly.

All functions broadcast over numpy arrays, so a whole year of hours can be
evaluated in one call. Heat flows are in W, positive into the zone.

The glazing is a single absorbing node at its inner surface. Its solar
behaviour is derived from SHGC alone: a fixed share of SHGC is direct
transmission and the rest is absorbed heat that flows inward. Absorptance is
chosen so that the bare window reproduces SHGC exactly, and the remainder of
the incident flux is reflected.
"""
from __future__ import annotations

from dataclasses import dataclass, fields
from functools import lru_cache

import numpy as np

from .blind_optics import (BlindLocation, BlindOpticalProperties, BlindState,
                           longwave_openness)
from .solar import PlaneIrradiance

IP_TO_SI_U = 5.678263   # Btu/(h ft2 F) -> W/(m2 K)
SIGMA = 5.670374419e-8


class ConfigMismatch(ValueError):
    pass


@dataclass(frozen=True)
class GlazingSpec:
    u_value: float          # W/(m2 K)
    shgc: float
    tau_visible: float = 0.6
    area: float = 1.0       # m2

    def __post_init__(self):
        if self.u_value <= 0:
            raise ValueError("u_value must be positive")
        if not 0.0 < self.shgc <= 1.0:
            raise ValueError("shgc must lie in (0, 1]")
        if not 0.0 <= self.tau_visible <= 1.0:
            raise ValueError("tau_visible must lie in [0, 1]")


@dataclass(frozen=True)
class WindowModel:
    h_in: float = 7.7               # inner surface film, W/(m2 K)
    h_out: float = 25.0
    radiative_share_in: float = 0.4
    h_gap: float = 3.0              # glass-blind gap convection, per face
    transmitted_share: float = 0.85  # of SHGC
    glass_emissivity: float = 0.84
    room_return: float = 0.02       # share of admitted shortwave sent back to the window
    t_ref: float = 293.15           # K, for linearized longwave exchange


DEFAULT_WINDOW = WindowModel()


@dataclass(frozen=True)
class GlassSolar:
    transmittance: float
    absorptance: float
    reflectance: float
    k_out: float        # conductance from the glass node to outdoors
    inward_share: float


def glass_solar(glazing: GlazingSpec, model: WindowModel = DEFAULT_WINDOW):
    resistance_out = 1.0 / glazing.u_value - 1.0 / model.h_in
    if resistance_out <= 0:
        raise ValueError(f"U={glazing.u_value} exceeds the inner film "
                         f"coefficient {model.h_in}")
    k_out = 1.0 / resistance_out
    inward = model.h_in / (model.h_in + k_out)
    tau = model.transmitted_share * glazing.shgc
    alpha = (1.0 - model.transmitted_share) * glazing.shgc / inward
    refl = 1.0 - tau - alpha
    if refl < 0:
        raise ValueError("SHGC split implies negative glass reflectance")
    return GlassSolar(tau, alpha, refl, k_out, inward)


@dataclass(frozen=True)
class WindowHeatGainBreakdown:
    q_solartrans: np.ndarray | float
    q_conv_air: np.ndarray | float
    q_conv_blind: np.ndarray | float
    q_conv_win: np.ndarray | float
    q_rad_win: np.ndarray | float
    q_rad_blind: np.ndarray | float
    q_rad_out: np.ndarray | float   # magnitude; always subtracted
    q_cond_frame: np.ndarray | float
    q_total: np.ndarray | float

    @staticmethod
    def compose(q_solartrans, q_conv_air, q_conv_blind, q_conv_win, q_rad_win,
                q_rad_blind, q_rad_out, q_cond_frame):
        total = (q_solartrans + q_conv_air + q_conv_blind + q_conv_win
                 + q_rad_win + q_rad_blind - q_rad_out + q_cond_frame)
        return WindowHeatGainBreakdown(q_solartrans, q_conv_air, q_conv_blind,
                                       q_conv_win, q_rad_win, q_rad_blind,
                                       q_rad_out, q_cond_frame, total)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@lru_cache(maxsize=64)
def _openness(geometry, slat_angle):
    return longwave_openness(geometry, slat_angle)


def _h_rad(model: WindowModel, eps_a: float, eps_b: float) -> float:
    base = 4.0 * SIGMA * model.t_ref**3
    if eps_a <= 0 or eps_b <= 0:
        return 0.0
    return base / (1.0 / eps_a + 1.0 / eps_b - 1.0)


def heat_gain_interior(glazing: GlazingSpec, blind: BlindState,
                       poa: PlaneIrradiance, t_out, t_zone,
                       optics: BlindOpticalProperties,
                       model: WindowModel = DEFAULT_WINDOW
                       ) -> WindowHeatGainBreakdown:
    """Window gain with the blind on the room side of the glazing."""
    if blind.location != BlindLocation.INTERIOR:
        raise ConfigMismatch(f"expected interior blind, got {blind.location}")
    g = glass_solar(glazing, model)
    geo = blind.geometry
    ib = np.asarray(poa.beam, dtype=float)
    idf = np.asarray(poa.sky_diffuse + poa.ground_reflected, dtype=float)

    # glass, then blind; reflections bounce between blind front and glass
    beam_in, diff_in = g.transmittance * ib, g.transmittance * idf
    to_glass = optics.rho_beam * beam_in + optics.rho_diffuse_front * diff_in
    to_glass = to_glass / (1.0 - g.reflectance * optics.rho_diffuse_front)
    returned = g.reflectance * to_glass
    s_room = ((optics.tau_beam_beam + optics.tau_beam_diffuse) * beam_in
              + optics.tau_diffuse_front * (diff_in + returned))
    s_blind = (optics.alpha_beam * beam_in
               + optics.alpha_diffuse_front * (diff_in + returned))
    s_glass = g.absorptance * (ib + idf + to_glass)
    lost_back = (model.room_return * s_room * optics.tau_diffuse_back
                 * g.transmittance)

    openness = _openness(geo, float(blind.slat_angle))
    hc = (1.0 - model.radiative_share_in) * model.h_in
    hr = model.radiative_share_in * model.h_in
    eps_b = 0.5 * (geo.emissivity_front + geo.emissivity_back)
    hr_gb = (1.0 - openness) * _h_rad(model, model.glass_emissivity, eps_b)
    hc_glass = openness * hc + (1.0 - openness) * model.h_gap
    hr_glass = openness * hr
    hr_blind = (1.0 - openness) * hr

    t_out = np.asarray(t_out, dtype=float)
    t_zone = np.asarray(t_zone, dtype=float)
    a11 = g.k_out + hc_glass + hr_glass + hr_gb
    a12 = -hr_gb
    a22 = model.h_gap + hc + hr_blind + hr_gb
    b1 = g.k_out * t_out + s_glass + (hc_glass + hr_glass) * t_zone
    b2 = s_blind + (model.h_gap + hc + hr_blind) * t_zone
    det = a11 * a22 - a12 * a12
    t_glass = (b1 * a22 - a12 * b2) / det
    t_blind = (a11 * b2 - a12 * b1) / det

    area = glazing.area
    zero = np.zeros(np.broadcast(t_glass, s_room).shape)
    return WindowHeatGainBreakdown.compose(
        q_solartrans=area * s_room + zero,
        q_conv_air=area * (hc_glass * (t_glass - t_zone)
                           + model.h_gap * (t_blind - t_zone)) + zero,
        q_conv_blind=area * hc * (t_blind - t_zone) + zero,
        q_conv_win=zero,
        q_rad_win=area * hr_glass * (t_glass - t_zone) + zero,
        q_rad_blind=area * hr_blind * (t_blind - t_zone) + zero,
        q_rad_out=area * lost_back + zero,
        q_cond_frame=zero,
    )


def heat_gain_exterior(glazing: GlazingSpec, blind: BlindState,
                       poa: PlaneIrradiance, t_out, t_zone,
                       optics: BlindOpticalProperties,
                       model: WindowModel = DEFAULT_WINDOW
                       ) -> WindowHeatGainBreakdown:
    """Window gain with the blind outside; heat absorbed by it stays outdoors."""
    if blind.location != BlindLocation.EXTERIOR:
        raise ConfigMismatch(f"expected exterior blind, got {blind.location}")
    g = glass_solar(glazing, model)
    ib = np.asarray(poa.beam, dtype=float)
    idf = np.asarray(poa.sky_diffuse + poa.ground_reflected, dtype=float)

    at_glass = ((optics.tau_beam_beam + optics.tau_beam_diffuse) * ib
                + optics.tau_diffuse_front * idf)
    at_glass = at_glass / (1.0 - g.reflectance * optics.rho_diffuse_back)
    s_room = g.transmittance * at_glass
    s_glass = g.absorptance * at_glass
    lost_back = (model.room_return * s_room * g.transmittance
                 * optics.tau_diffuse_back)
    return _bare_glass_flows(glazing, g, s_room, s_glass, lost_back,
                             t_out, t_zone, model)


def _bare_glass_flows(glazing, g, s_room, s_glass, lost_back, t_out, t_zone,
                      model):
    t_out = np.asarray(t_out, dtype=float)
    t_zone = np.asarray(t_zone, dtype=float)
    t_glass = ((g.k_out * t_out + s_glass + model.h_in * t_zone)
               / (g.k_out + model.h_in))
    q_in = glazing.area * model.h_in * (t_glass - t_zone)
    zero = np.zeros(np.broadcast(t_glass, s_room).shape)
    return WindowHeatGainBreakdown.compose(
        q_solartrans=glazing.area * s_room + zero,
        q_conv_air=zero,
        q_conv_blind=zero,
        q_conv_win=(1.0 - model.radiative_share_in) * q_in + zero,
        q_rad_win=model.radiative_share_in * q_in + zero,
        q_rad_blind=zero,
        q_rad_out=glazing.area * lost_back + zero,
        q_cond_frame=zero,
    )


def heat_gain_bare(glazing: GlazingSpec, poa: PlaneIrradiance, t_out, t_zone,
                   model: WindowModel = DEFAULT_WINDOW
                   ) -> WindowHeatGainBreakdown:
    """Unshaded window (composition of the exterior form with no blind)."""
    g = glass_solar(glazing, model)
    incident = np.asarray(poa.beam + poa.sky_diffuse + poa.ground_reflected,
                          dtype=float)
    s_room = g.transmittance * incident
    lost_back = model.room_return * s_room * g.transmittance
    return _bare_glass_flows(glazing, g, s_room, g.absorptance * incident,
                             lost_back, t_out, t_zone, model)


def window_heat_gain(glazing, blind, poa, t_out, t_zone, optics=None,
                     model: WindowModel = DEFAULT_WINDOW):
    """Dispatch on blind location."""
    if blind is None or blind.location == BlindLocation.NONE:
        return heat_gain_bare(glazing, poa, t_out, t_zone, model)
    if blind.location == BlindLocation.INTERIOR:
        return heat_gain_interior(glazing, blind, poa, t_out, t_zone, optics,
                                  model)
    return heat_gain_exterior(glazing, blind, poa, t_out, t_zone, optics, model)


def wall_conduction(u_wall: float, area: float, t_out, t_zone):
    return u_wall * area * (np.asarray(t_out) - np.asarray(t_zone))
