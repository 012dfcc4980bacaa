"""Environment switch: a tuned population meets a new speed prior.

For each seed the population is first tuned under ``delta:A`` for 500 epochs
and then continued for 200 epochs under ``delta:B``.  The printed offsets are
the log distance of the density peak from the line S = B*T before and after
the switch.

    python3 scripts/adaptation_switch.py [--from 0.5] [--to 2] [--seeds 1,2]
"""
from __future__ import annotations

import argparse

from motion_uncertainty.optimal_sets import SpeedPrior
from motion_uncertainty.stochastic_tuning import DOCUMENTED_SEEDS, SimulationConfig, environment_switch


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--from", dest="v_from", type=float, default=0.5)
    ap.add_argument("--to", dest="v_to", type=float, default=2.0)
    ap.add_argument("--seeds", default=",".join(map(str, DOCUMENTED_SEEDS)))
    ap.add_argument("--extra-epochs", type=int, default=200)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    moved = 0
    seeds = [int(s) for s in args.seeds.split(",")]
    for seed in seeds:
        r = environment_switch(SimulationConfig(seed=seed, prior=SpeedPrior.delta(args.v_from)),
                               SpeedPrior.delta(args.v_to), args.extra_epochs, threads=args.threads)
        moved += r.moved_toward
        print(f"seed {seed:>3}: offset {r.offset_before:.4f} -> {r.offset_after:.4f}"
              f" ({'toward' if r.moved_toward else 'not toward'} S={args.v_to:g}T)")
    print(f"moved toward the new speed line in {moved}/{len(seeds)} runs")


if __name__ == "__main__":
    main()
