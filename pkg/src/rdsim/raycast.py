"""2-D Monte Carlo ray casting through a periodic slat array.

Used as an independent check of the enclosure model in ``blind_optics``. Rays
enter through the front plane of the slat layer, travel straight until they
hit a slat, and are re-emitted from the hit point with a Lambertian (in-plane
cosine) distribution. Weights are reduced by the face reflectance at each hit,
the lost part is booked as absorbed.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blind_optics import SlatGeometry, _is_vertical, _vertical_face_rho


@dataclass(frozen=True)
class SampledProperties:
    tau_direct: float     # left through the back without touching a slat
    tau_scattered: float  # left through the back after at least one hit
    rho: float            # left through the front
    alpha: float
    rays: int

    @property
    def tau(self) -> float:
        return self.tau_direct + self.tau_scattered

    def sigma(self, value: float) -> float:
        """Binomial standard error of a sampled fraction."""
        return float(np.sqrt(max(value * (1.0 - value), 0.0) / self.rays))


_EPS = 1e-9
_MIN_WEIGHT = 1e-12


def _lambertian(rng, normal, tangent):
    sin_t = rng.uniform(-1.0, 1.0, size=normal.shape[0])
    cos_t = np.sqrt(1.0 - sin_t**2)
    return cos_t[:, None] * normal + sin_t[:, None] * tangent


def mc_oracle(geometry: SlatGeometry, slat_angle: float,
              profile_angle: float | None, rays: int = 1_000_000,
              seed: int = 0, max_bounces: int = 10_000) -> SampledProperties:
    """Sample blind properties for front incidence.

    ``profile_angle=None`` requests diffuse (Lambertian) incidence.
    """
    if rays < 1:
        raise ValueError("rays must be >= 1")
    rng = np.random.default_rng(seed)
    w, s = geometry.width, geometry.separation
    phi = np.radians(90.0 - slat_angle)

    if profile_angle is None:
        sin_t = rng.uniform(-1.0, 1.0, size=rays)
        d = np.stack([np.sqrt(1.0 - sin_t**2), sin_t], axis=1)
    else:
        p = np.radians(profile_angle)
        d = np.tile([np.cos(p), -np.sin(p)], (rays, 1))
    y = rng.uniform(0.0, s, size=rays)

    if w == 0.0:
        return SampledProperties(1.0, 0.0, 0.0, 0.0, rays)

    if _is_vertical(slat_angle):
        # all slats lie in one plane; a ray either enters a gap or hits a face
        rel = np.mod(y + 0.5 * w, s)
        hit = (rel <= w) if w < s else np.ones(rays, dtype=bool)
        r = _vertical_face_rho(geometry, slat_angle, True)
        frac = hit.mean()
        return SampledProperties(1.0 - frac, 0.0, frac * r, frac * (1.0 - r),
                                 rays)

    u = np.array([np.cos(phi), np.sin(phi)])
    n = np.array([-np.sin(phi), np.cos(phi)])   # upper-face normal
    x_front = -0.5 * w * np.cos(phi)
    x_back = -x_front
    spacing = s * np.cos(phi)                   # line spacing along n

    pos = np.stack([np.full(rays, x_front), y - 0.5 * w * np.sin(phi)], axis=1)
    weight = np.ones(rays)
    hits = np.zeros(rays, dtype=np.int64)
    tau_d = tau_s = rho = alpha = 0.0
    active = np.arange(rays)

    for _ in range(max_bounces):
        if active.size == 0:
            break
        o, dd = pos[active], d[active]
        g0 = (o @ n) / spacing
        rate = (dd @ n) / spacing
        with np.errstate(divide="ignore", invalid="ignore"):
            k = np.where(rate > 0, np.floor(g0 + _EPS) + 1.0,
                         np.ceil(g0 - _EPS) - 1.0)
            lam_line = np.where(rate != 0, (k - g0) / rate, np.inf)
            lam_exit = np.where(dd[:, 0] > 0, (x_back - o[:, 0]) / dd[:, 0],
                                np.where(dd[:, 0] < 0,
                                         (x_front - o[:, 0]) / dd[:, 0], np.inf))
        hit = lam_line < lam_exit

        out = ~hit
        wt = weight[active[out]]
        forward = dd[out, 0] > 0
        fresh = hits[active[out]] == 0
        tau_d += wt[forward & fresh].sum()
        tau_s += wt[forward & ~fresh].sum()
        rho += wt[~forward].sum()

        idx = active[hit]
        if idx.size == 0:
            active = idx
            break
        lam = lam_line[hit][:, None]
        new_pos = o[hit] + lam * dd[hit]
        # moving along +n hits a lower (back) face, else an upper (front) face
        from_below = rate[hit] > 0
        r = np.where(from_below, geometry.reflectance_back,
                     geometry.reflectance_front)
        alpha += (weight[idx] * (1.0 - r)).sum()
        weight[idx] *= r
        hits[idx] += 1
        normal = np.where(from_below[:, None], -n, n)
        pos[idx] = new_pos
        d[idx] = _lambertian(rng, normal, np.broadcast_to(u, normal.shape))
        keep = weight[idx] > _MIN_WEIGHT
        alpha += weight[idx[~keep]].sum()
        active = idx[keep]
    alpha += weight[active].sum()
    return SampledProperties(tau_d / rays, tau_s / rays, rho / rays,
                             alpha / rays, rays)
