#!/usr/bin/env python3
"""Generate the CSV (and metadata sidecar) for every figure preset.

Usage: python scripts/make_figure_data.py [--out-dir data] [--tau-points N] [--workers N]
"""

import argparse
from pathlib import Path

from werner_ou.sweep import PRESETS, emit_csv, preset_config, run_sweep, write_metadata


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="data")
    parser.add_argument("--tau-points", type=int, default=None)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    overrides = {} if args.tau_points is None else {"tau_points": args.tau_points}
    for name in sorted(PRESETS):
        result = run_sweep(preset_config(name, **overrides), workers=args.workers)
        csv_path = out_dir / f"{name}.csv"
        emit_csv(result, csv_path)
        write_metadata(result, out_dir / f"{name}.csv.meta.json")
        print(f"{csv_path}: {len(result.rows)} rows")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
