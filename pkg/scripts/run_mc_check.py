#!/usr/bin/env python3
"""Run the Monte Carlo cross-check of the Gaussian corner decay at scale.

Usage: python scripts/run_mc_check.py [--quick] [--seed S] [--out report.json]
"""

import argparse
import json

from werner_ou.noise import Coupling
from werner_ou.sweep import MCSettings, SweepConfig, run_mc_validation


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true",
                        help="5k trajectories instead of 100k")
    parser.add_argument("--seed", type=int, default=2024)
    parser.add_argument("--out", default=None)
    args = parser.parse_args()

    n_traj = 5_000 if args.quick else 100_000
    cfg = SweepConfig(couplings=(Coupling.CQN, Coupling.IQN), g_values=(0.4, 1.0),
                      lam_values=(0.5, 1.0), tau_values=(1.0, 2.0, 5.0),
                      mc=MCSettings(n_traj=n_traj, dt=0.01, seed=args.seed))
    report = run_mc_validation(cfg)
    for chk in report.checks:
        print(f"{chk.config} g={chk.g:<4g} lam={chk.lam:<4g} tau={chk.tau:<3g} "
              f"mc={chk.mc_real:+.6f} target={chk.target:+.6f} z={chk.z:+.2f}")
    print(f"{'OK' if report.ok else 'FAIL'}: max |z| = {report.max_abs_z:.3f} "
          f"(n_traj={n_traj})")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0 if report.ok else 3


if __name__ == "__main__":
    raise SystemExit(main())
