"""Solar-optical properties of a horizontal-slat venetian blind layer.

The slat cross-section is treated in 2-D. Slats are flat, zero-thickness
Lambertian reflectors. A ray entering the gap between two adjacent slats stays
in that gap until it hits one of the two slats or leaves through the front or
back opening, so a single slat cell is a closed enclosure. Radiative exchange
inside it is solved with view factors from the crossed-strings rule.

Coordinates: x points from the outdoor (front) side to the indoor (back) side,
y points up. With slat angle ``psi`` (90 deg = horizontal) the slat rises by
``90 - psi`` degrees going inward, so for ``psi < 90`` the outer edge is the
lower one and the slats screen high sun. The *front* face of a slat is its
upper face.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# below this |cos(tilt)| the slats are treated as vertical (degenerate cell)
_VERTICAL_TOL = 1e-12


class BadAngle(ValueError):
    pass


class NoBlindPresent(ValueError):
    pass


class BlindLocation(str, enum.Enum):
    INTERIOR = "interior"
    EXTERIOR = "exterior"
    NONE = "none"


@dataclass(frozen=True)
class SlatGeometry:
    """Slat geometry and surface properties. Lengths in mm."""

    width: float = 20.0
    separation: float = 20.0
    conductivity: float = 160.0
    reflectance_front: float = 0.5
    reflectance_back: float = 0.5
    emissivity_front: float = 0.9
    emissivity_back: float = 0.9

    def __post_init__(self):
        if self.width < 0 or self.separation <= 0:
            raise ValueError("slat width must be >= 0 and separation > 0")
        for name in ("reflectance_front", "reflectance_back",
                     "emissivity_front", "emissivity_back"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name}={v} outside [0, 1]")
        # opaque slat: solar absorptance 1 - rho must be non-negative
        if self.conductivity <= 0:
            raise ValueError("conductivity must be positive")

    def with_reflectance(self, rho: float) -> "SlatGeometry":
        return SlatGeometry(self.width, self.separation, self.conductivity,
                            rho, rho, self.emissivity_front, self.emissivity_back)


@dataclass(frozen=True)
class BlindState:
    location: BlindLocation
    slat_angle: float
    geometry: SlatGeometry

    def __post_init__(self):
        if not 0.0 <= self.slat_angle <= 180.0:
            raise BadAngle(f"slat angle {self.slat_angle} outside [0, 180]")


@dataclass(frozen=True)
class BlindOpticalProperties:
    """Optical properties of the blind layer for one band.

    Beam values are for front (outdoor-side) incidence and may be arrays
    over profile angle. Diffuse values are given for front and back incidence.
    """

    band: str
    tau_beam_beam: np.ndarray | float
    tau_beam_diffuse: np.ndarray | float
    rho_beam: np.ndarray | float
    alpha_beam: np.ndarray | float
    tau_diffuse_front: float
    rho_diffuse_front: float
    alpha_diffuse_front: float
    tau_diffuse_back: float
    rho_diffuse_back: float
    alpha_diffuse_back: float

    @property
    def tau_diffuse_diffuse(self) -> float:
        return self.tau_diffuse_front


def _tilt(slat_angle):
    return np.radians(90.0 - np.asarray(slat_angle, dtype=float))


def _check_profile(profile_angle):
    p = np.asarray(profile_angle, dtype=float)
    if np.any(p >= 90.0) or np.any(p <= -90.0):
        raise BadAngle("profile angle must lie in (-90, 90) degrees")
    return p


def beam_beam_transmittance(geometry: SlatGeometry, slat_angle: float,
                            profile_angle):
    """Fraction of beam passing the slat array without touching a slat."""
    p = np.radians(_check_profile(profile_angle))
    phi = _tilt(slat_angle)
    blocked = (geometry.width / geometry.separation
               * np.abs(np.sin(phi + p)) / np.cos(p))
    return np.clip(1.0 - blocked, 0.0, 1.0)


# --- enclosure ---------------------------------------------------------------

def _crossed_strings(a1, b1, a2, b2):
    """View factor from segment (a1, b1) to segment (a2, b2)."""
    length = np.hypot(*(b1 - a1))
    d = lambda u, v: float(np.hypot(*(u - v)))
    s1 = d(a1, a2) + d(b1, b2)
    s2 = d(a1, b2) + d(b1, a2)
    return (max(s1, s2) - min(s1, s2)) / (2.0 * length)


@dataclass(frozen=True)
class _Cell:
    """Discretized slat cell: front opening, back opening, n segments on the
    lower slat's upper face, n segments on the upper slat's lower face."""

    view: np.ndarray      # view[i, j]: fraction leaving i that reaches j
    rho: np.ndarray       # reflectance of the 2n slat segments
    segments: int

    FRONT = 0
    BACK = 1


@lru_cache(maxsize=256)
def _cell(width, separation, slat_angle, rho_front, rho_back, segments):
    phi = float(_tilt(slat_angle))
    u = np.array([np.cos(phi), np.sin(phi)])
    up = np.array([0.0, separation])
    b1 = -0.5 * width * u
    a1 = b1 + up
    edges = np.linspace(0.0, width, segments + 1)
    surfaces = [(b1, a1), (b1 + width * u, a1 + width * u)]
    surfaces += [(b1 + t0 * u, b1 + t1 * u) for t0, t1 in zip(edges, edges[1:])]
    surfaces += [(a1 + t0 * u, a1 + t1 * u) for t0, t1 in zip(edges, edges[1:])]
    m = len(surfaces)
    view = np.zeros((m, m))
    lower = set(range(2, 2 + segments))
    upper = set(range(2 + segments, m))
    for i in range(m):
        for j in range(m):
            if i == j or ({i, j} <= lower) or ({i, j} <= upper):
                continue
            view[i, j] = _crossed_strings(*surfaces[i], *surfaces[j])
    rho = np.array([rho_front] * segments + [rho_back] * segments)
    return _Cell(view=view, rho=rho, segments=segments)


def _exchange(cell: _Cell, first_hit: np.ndarray, direct: np.ndarray):
    """Solve inter-reflection given first-arrival flux on slat segments.

    ``first_hit`` has shape (..., 2n); ``direct`` has shape (..., 2) and holds
    flux reaching the (front, back) openings without touching a slat.
    Returns (to_front, to_back, absorbed).
    """
    slats = slice(2, None)
    f_ss = cell.view[slats, slats]
    # outgoing J = rho * (E + F_ss^T J)
    system = np.eye(len(cell.rho)) - cell.rho[:, None] * f_ss.T
    rhs = first_hit * cell.rho
    radiosity = np.linalg.solve(system, rhs.T).T if rhs.ndim > 1 else np.linalg.solve(system, rhs)
    irradiation = first_hit + radiosity @ f_ss
    absorbed = irradiation @ (1.0 - cell.rho)
    to_front = direct[..., 0] + radiosity @ cell.view[slats, _Cell.FRONT]
    to_back = direct[..., 1] + radiosity @ cell.view[slats, _Cell.BACK]
    return to_front, to_back, absorbed


DEFAULT_SEGMENTS = 16


def _is_vertical(slat_angle):
    return abs(np.cos(float(_tilt(slat_angle)))) < _VERTICAL_TOL


def _vertical_face_rho(geometry, slat_angle, from_front):
    # psi = 0: upper face looks outward; psi = 180: upper face looks inward
    upper_faces_out = slat_angle < 90.0
    if upper_faces_out == from_front:
        return geometry.reflectance_front
    return geometry.reflectance_back


def diffuse_exchange(geometry: SlatGeometry, slat_angle: float,
                     segments: int = DEFAULT_SEGMENTS):
    """Diffuse-diffuse properties for front and back incidence.

    Returns ``{"front": (tau, rho, alpha), "back": (tau, rho, alpha)}``.
    """
    if geometry.width == 0.0:
        return {"front": (1.0, 0.0, 0.0), "back": (1.0, 0.0, 0.0)}
    if _is_vertical(slat_angle):
        cover = min(1.0, geometry.width / geometry.separation)
        out = {}
        for side, front in (("front", True), ("back", False)):
            r = _vertical_face_rho(geometry, slat_angle, front)
            out[side] = (1.0 - cover, cover * r, cover * (1.0 - r))
        return out
    cell = _cell(geometry.width, geometry.separation, float(slat_angle),
                 geometry.reflectance_front, geometry.reflectance_back, segments)
    out = {}
    for side, src, dst in (("front", _Cell.FRONT, _Cell.BACK),
                           ("back", _Cell.BACK, _Cell.FRONT)):
        first = cell.view[src, 2:]
        direct = np.zeros(2)
        direct[dst] = cell.view[src, dst]
        to_front, to_back, absorbed = _exchange(cell, first, direct)
        tau, rho = (to_back, to_front) if side == "front" else (to_front, to_back)
        out[side] = (float(tau), float(rho), float(absorbed))
    return out


def _lit_flux(cell: _Cell, geometry, slat_angle, profile_angle):
    """First-arrival beam flux per slat segment for unit flux through the
    front opening, plus the unobstructed fraction."""
    w, s = geometry.width, geometry.separation
    n = cell.segments
    p = np.radians(np.atleast_1d(profile_angle).astype(float))
    sigma = np.sin(float(_tilt(slat_angle)) + p)
    with np.errstate(divide="ignore"):
        # slat length lit from the edge nearest the front opening
        lit_len = np.where(np.abs(sigma) > 0,
                           np.minimum(w, s * np.cos(p) / np.abs(sigma)), 0.0)
    lit_flux = np.minimum(1.0, w * np.abs(sigma) / (s * np.cos(p)))
    edges = np.linspace(0.0, w, n + 1)
    overlap = np.clip(lit_len[:, None] - edges[None, :-1], 0.0, w / n)
    with np.errstate(invalid="ignore", divide="ignore"):
        share = np.where(lit_len[:, None] > 0, overlap / lit_len[:, None], 0.0)
    first = np.zeros((len(p), 2 * n))
    down = sigma > 0   # beam descends relative to the slats: lower slat lit
    first[down, :n] = share[down] * lit_flux[down, None]
    first[~down, n:] = share[~down] * lit_flux[~down, None]
    return first, 1.0 - lit_flux


def beam_diffuse_split(geometry: SlatGeometry, slat_angle: float,
                       profile_angle, segments: int = DEFAULT_SEGMENTS):
    """Split intercepted beam into (tau_beam_diffuse, rho_beam, alpha_beam)."""
    p = _check_profile(profile_angle)
    scalar = p.ndim == 0
    if geometry.width == 0.0:
        z = np.zeros_like(p, dtype=float)
        return (z, z, z) if not scalar else (0.0, 0.0, 0.0)
    if _is_vertical(slat_angle):
        cover = min(1.0, geometry.width / geometry.separation)
        r = _vertical_face_rho(geometry, slat_angle, True)
        res = (np.zeros_like(p, dtype=float) + 0.0,
               np.full_like(p, cover * r, dtype=float),
               np.full_like(p, cover * (1.0 - r), dtype=float))
    else:
        cell = _cell(geometry.width, geometry.separation, float(slat_angle),
                     geometry.reflectance_front, geometry.reflectance_back,
                     segments)
        first, _ = _lit_flux(cell, geometry, slat_angle, p)
        to_front, to_back, absorbed = _exchange(cell, first,
                                                np.zeros((len(first), 2)))
        res = tuple(x.reshape(p.shape) for x in (to_back, to_front, absorbed))
    if scalar:
        return tuple(float(x) for x in res)
    return res


def blind_properties(state: BlindState, profile_angle, band: str = "solar",
                     segments: int = DEFAULT_SEGMENTS) -> BlindOpticalProperties:
    """Full property record for a blind state; visible band reuses the
    solar slat reflectance."""
    if state.location == BlindLocation.NONE:
        raise NoBlindPresent("no blind in this state")
    if band not in ("solar", "visible"):
        raise ValueError(f"unknown band {band!r}")
    g, psi = state.geometry, state.slat_angle
    tbb = beam_beam_transmittance(g, psi, profile_angle)
    tbd, rb, ab = beam_diffuse_split(g, psi, profile_angle, segments)
    diff = diffuse_exchange(g, psi, segments)
    return BlindOpticalProperties(band, tbb, tbd, rb, ab,
                                  *diff["front"], *diff["back"])


def longwave_openness(geometry: SlatGeometry, slat_angle: float) -> float:
    """Fraction of diffuse radiation passing the array with black slats."""
    black = geometry.with_reflectance(0.0)
    return diffuse_exchange(black, slat_angle)["front"][0]
