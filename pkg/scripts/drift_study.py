"""Stochastic drift on the documented seeds.

Runs the default population (10^4 sensors, 500 epochs) for each seed and
prints the median uncertainty before and after, the Spearman correlation of
the final density with the preference field and the top-decile overlap.

    python3 scripts/drift_study.py [--seeds 1,2,3] [--threads 4] [--csv drift.csv]
"""
from __future__ import annotations

import argparse
import time

from motion_uncertainty.io import write_csv
from motion_uncertainty.stochastic_tuning import DOCUMENTED_SEEDS, SimulationConfig, run_simulation


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--seeds", default=",".join(map(str, DOCUMENTED_SEEDS)))
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--sensors", type=int, default=10_000)
    ap.add_argument("--epochs", type=int, default=500)
    ap.add_argument("--csv", help="also write the table here")
    args = ap.parse_args()

    rows = []
    print(f"{'seed':>4} {'median_0':>10} {'median_end':>10} {'rho':>7} {'overlap':>7} {'sec':>6}")
    for seed in (int(s) for s in args.seeds.split(",")):
        start = time.perf_counter()
        cfg = SimulationConfig(n_sensors=args.sensors, epochs=args.epochs, seed=seed)
        s = run_simulation(cfg, threads=args.threads)
        m0, m1 = float(s.median_uncertainty[0]), float(s.median_uncertainty[-1])
        sec = time.perf_counter() - start
        print(f"{seed:>4} {m0:>10.4f} {m1:>10.4f} {s.spearman_rho:>7.4f} {s.top_decile_overlap:>7.3f} {sec:>6.1f}")
        rows.append((float(seed), m0, m1, s.spearman_rho, s.top_decile_overlap))
    if args.csv:
        write_csv(args.csv, ("seed", "median_start", "median_end", "spearman_rho", "top_decile_overlap"), rows)


if __name__ == "__main__":
    main()
