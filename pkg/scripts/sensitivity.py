"""How the headline patterns depend on control and daylighting assumptions.

Each variant reruns the 27-scenario sweep and counts how many of the ordering
checks (reflectance trends, per-mode optimum, RDS dominance and efficiency
band) hold.
"""
from dataclasses import replace

import numpy as np

from rdsim.control import BlindMode
from rdsim.daylight import DaylightConfig
from rdsim.scenario import (CITIES, REFLECTANCES, _find, default_sweep_bases,
                            efficiency, run_sweep)
from rdsim.zone import IdealLoadsOptions

INT, EXT, RDS = BlindMode.FIXED_INTERIOR, BlindMode.FIXED_EXTERIOR, BlindMode.RDS


def failures(reports):
    bad = []
    trends = {INT: {"heating": 1, "cooling": -1, "lighting": -1},
              EXT: {"heating": -1, "cooling": 1, "lighting": -1}}
    for city in CITIES:
        for mode, signs in trends.items():
            rs = [_find(reports, city, mode, r) for r in REFLECTANCES]
            for q, s in signs.items():
                d = np.diff([getattr(r, f"annual_{q}") for r in rs])
                if not np.all(s * d > 0):
                    bad.append(f"{city}/{mode.value}/{q} trend")
        tot = {m: [_find(reports, city, m, r).total for r in REFLECTANCES]
               for m in (INT, EXT, RDS)}
        if np.argmin(tot[INT]) != 2:
            bad.append(f"{city} interior optimum")
        if np.argmin(tot[EXT]) != 0:
            bad.append(f"{city} exterior optimum")
        for k in range(3):
            if tot[RDS][k] > min(tot[INT][k], tot[EXT][k]) + 1e-6:
                bad.append(f"{city} dominance rho={REFLECTANCES[k]}")
        rds = _find(reports, city, RDS, 0.1)
        vi = efficiency(_find(reports, city, INT, 0.1), rds)
        ve = efficiency(_find(reports, city, EXT, 0.1), rds)
        if not (vi >= ve and 0.005 <= ve and vi <= 0.25):
            bad.append(f"{city} efficiency {100 * vi:.1f}%/{100 * ve:.1f}%")
    return bad


VARIANTS = {
    "default": {},
    "occupied-hours control": {"hvac": IdealLoadsOptions(always_on=False)},
    "no economizer": {"hvac": IdealLoadsOptions(economizer=False)},
    "room utilization 0.2": {"daylight": DaylightConfig(room_utilization=0.2)},
    "room utilization 0.4": {"daylight": DaylightConfig(room_utilization=0.4)},
}


def main():
    for name, change in VARIANTS.items():
        bases = {c: replace(s, **change) for c, s in default_sweep_bases().items()}
        reports = run_sweep(bases)
        light = [_find(reports, c, RDS, 0.1).annual_lighting for c in CITIES]
        bad = failures(reports)
        print(f"{name:24s} lighting {min(light):6.1f}-{max(light):6.1f} kWh  "
              f"failed checks {len(bad):2d}  {bad[:4]}")


if __name__ == "__main__":
    main()
