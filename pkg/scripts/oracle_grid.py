"""Compare analytic slat optics with the Monte Carlo oracle over the angle grid."""
import argparse
import time

from rdsim.blind_optics import (beam_beam_transmittance, beam_diffuse_split,
                                diffuse_exchange)
from rdsim.control import DEFAULT_SLATS
from rdsim.raycast import mc_oracle


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rays", type=int, default=1_000_000)
    ap.add_argument("--reflectance", type=float, default=0.5)
    args = ap.parse_args()
    g = DEFAULT_SLATS.with_reflectance(args.reflectance)
    start = time.perf_counter()
    worst = 0.0
    print(" psi    p    tau_bb  mc      tau_bd  mc      rho     mc      max|d|")
    for psi in (0, 30, 60, 90, 120, 150, 180):
        for p in (0, 15, 30, 45, 60, 75):
            mc = mc_oracle(g, psi, p, rays=args.rays, seed=psi * 100 + p)
            tbb = float(beam_beam_transmittance(g, psi, p))
            tbd, rho, alpha = (float(v) for v in beam_diffuse_split(g, psi, p))
            d = max(abs(tbb - mc.tau_direct), abs(tbd - mc.tau_scattered),
                    abs(rho - mc.rho), abs(alpha - mc.alpha))
            worst = max(worst, d)
            print(f"{psi:4d} {p:4d}   {tbb:.4f}  {mc.tau_direct:.4f}  {tbd:.4f}  "
                  f"{mc.tau_scattered:.4f}  {rho:.4f}  {mc.rho:.4f}  {d:.4f}")
        t, r, a = diffuse_exchange(g, psi)["front"]
        mc = mc_oracle(g, psi, None, rays=args.rays, seed=psi)
        d = max(abs(t - mc.tau), abs(r - mc.rho), abs(a - mc.alpha))
        worst = max(worst, d)
        print(f"{psi:4d} diff   tau_dd {t:.4f} vs {mc.tau:.4f}, rho {r:.4f} vs {mc.rho:.4f}  {d:.4f}")
    print(f"worst absolute difference {worst:.4f} in {time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()
