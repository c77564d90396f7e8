#!/usr/bin/env python3
"""Run the three experiment sweeps and print per-point aggregates.

Sweeps: (1) varying city count in a fixed 100x100 area, (2) varying area
at 10 cities, (3) both together at a constant density of one city per
1000 square units.  Each writes a CSV next to this script; aggregates
(improvement likelihood, mean flips) are recomputed from the CSVs, the
same way any downstream plotting would.

Full-size runs (100 trials per point, city counts up to 14) take a long
while; the defaults below are a lighter profile.  Raise --trials and
--max-n to reproduce the full sweeps.
"""

import argparse
import sys
from collections import defaultdict
from pathlib import Path

from vectortsp import ExperimentConfig, run_experiment, write_csv
from vectortsp.harness import read_csv


def aggregate(path: Path) -> None:
    groups = defaultdict(list)
    for row in read_csv(str(path)):
        groups[(row.n, row.width, row.height)].append(row)
    print(f"  {'n':>3} {'area':>9} {'P(improve)':>11} {'mean flips':>11} "
          f"{'mean gain':>10}")
    for (n, w, h), rows in sorted(groups.items()):
        p = sum(r.improved for r in rows) / len(rows)
        flips = sum(r.flips for r in rows) / len(rows)
        gain = sum(r.racetrack_etsp_cost - r.flipvtsp_cost for r in rows) / len(rows)
        print(f"  {n:>3} {f'{w}x{h}':>9} {p:>11.2f} {flips:>11.2f} {gain:>10.2f}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=25)
    parser.add_argument("--max-n", type=int, default=12)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--out-dir", type=Path,
                        default=Path(__file__).resolve().parent)
    args = parser.parse_args()

    n_values = tuple(range(4, args.max_n + 1, 2))
    sides = (60, 80, 100, 120)
    sweeps = {
        "varying_n": [ExperimentConfig(
            n_values=n_values, width=100, height=100,
            trials=args.trials, seed=args.seed)],
        "varying_area": [ExperimentConfig(
            n_values=(10,), width=side, height=side,
            trials=args.trials, seed=args.seed) for side in sides],
        "constant_density": [ExperimentConfig(
            n_values=n_values, density_mode=True, area_per_city=1000,
            trials=args.trials, seed=args.seed)],
    }

    args.out_dir.mkdir(parents=True, exist_ok=True)
    for name, configs in sweeps.items():
        out = args.out_dir / f"{name}.csv"
        print(f"== {name} -> {out}")
        rows = []
        for cfg in configs:
            rows.extend(run_experiment(cfg))
        write_csv(rows, str(out))
        aggregate(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
