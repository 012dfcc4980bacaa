"""Regenerate the golden fixtures in tests/fixtures.

Run from the repository root:

    python3 scripts/make_fixtures.py

Reference numbers for the replica expansion come from a direct evaluation
that does not use the package (closed-form Gaussian spectrum, explicit sum on
a dense grid).  Simulation and curve fixtures record what the package
produces so that later changes are caught.
"""
from __future__ import annotations

import argparse
import json
import math
from pathlib import Path

import numpy as np

from motion_uncertainty.foundations import SamplerKernel, emulate_sampler
from motion_uncertainty.io import write_curve_csv
from motion_uncertainty.optimal_sets import SpeedPrior
from motion_uncertainty.sensitivity_maps import max_sensitivity_set
from motion_uncertainty.stochastic_tuning import (
    DOCUMENTED_SEEDS,
    SimulationConfig,
    environment_switch,
    run_simulation,
)
from motion_uncertainty.uncertainty_core import GridSpec, UncertaintyWeights

FIXTURES = Path(__file__).resolve().parents[1] / "tests" / "fixtures"
N_SWEEP = (64, 128, 256, 512, 1024, 2048)
RANGE_SWEEP = (2.0, 4.0, 6.0, 8.0, 10.0, 12.0)


def reference_cosine_residual(n, half_range, omega=1.0, width=1.0, lo=-3.0, hi=3.0, n_eval=20001):
    """Sup error of the midpoint replica sum for cos(omega u), computed from scratch."""
    a = math.sqrt(2 * math.pi) * width * math.exp(-(width * omega) ** 2 / 2)
    step = 2 * half_range / n
    x = -half_range + (np.arange(n) + 0.5) * step
    u = np.linspace(lo, hi, n_eval)
    worst = 0.0
    for k in range(0, n_eval, 1000):
        uu = u[k:k + 1000, None]
        approx = np.exp(-((uu + x / omega) ** 2) / (2 * width**2)) @ (step / omega * np.cos(x) / a)
        worst = max(worst, float(np.max(np.abs(approx - np.cos(omega * u[k:k + 1000])))))
    return worst


def expansion_fixtures():
    base_step = 16.0 / 512
    out = {
        "cosine_n512_r8": reference_cosine_residual(512, 8.0),
        "n_sweep": {str(n): reference_cosine_residual(n, 8.0) for n in N_SWEEP},
        "range_sweep": {f"{r:g}": reference_cosine_residual(int(round(2 * r / base_step)), r)
                        for r in RANGE_SWEEP},
    }
    base, target = SamplerKernel.gaussian(1.0), SamplerKernel.gaussian(0.5)
    out["emulate_narrow"] = {str(k): emulate_sampler(target, base, k)[1] for k in range(1, 7)}
    return out


def simulation_fixtures():
    drift = {}
    for seed in DOCUMENTED_SEEDS:
        s = run_simulation(SimulationConfig(seed=seed))
        drift[str(seed)] = {"median_start": float(s.median_uncertainty[0]),
                            "median_end": float(s.median_uncertainty[-1]),
                            "spearman_rho": s.spearman_rho,
                            "top_decile_overlap": s.top_decile_overlap}
        print(f"drift seed {seed}: rho={s.spearman_rho:.4f}")
    switch = {}
    for a, b in ((0.5, 2.0), (2.0, 0.5)):
        rows = {}
        for seed in DOCUMENTED_SEEDS:
            r = environment_switch(SimulationConfig(seed=seed, prior=SpeedPrior.delta(a)),
                                   SpeedPrior.delta(b))
            rows[str(seed)] = {"offset_before": r.offset_before, "offset_after": r.offset_after}
            print(f"switch {a}->{b} seed {seed}: {r.offset_before:.3f} -> {r.offset_after:.3f}")
        switch[f"{a:g}->{b:g}"] = rows
    return {"drift": drift, "switch": switch}


def maxset_fixture():
    prior = SpeedPrior.histogram([(0.5, 1.0), (1.0, 1.0), (2.0, 1.0)])
    curve = max_sensitivity_set(prior, GridSpec(), UncertaintyWeights())
    write_curve_csv(FIXTURES / "maxset_uniform_hist.csv", curve)


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--skip-simulation", action="store_true")
    args = ap.parse_args()
    FIXTURES.mkdir(parents=True, exist_ok=True)
    path = FIXTURES / "golden.json"
    golden = json.loads(path.read_text()) if path.exists() else {}
    golden["expansion"] = expansion_fixtures()
    if not args.skip_simulation:
        golden["simulation"] = simulation_fixtures()
    maxset_fixture()
    path.write_text(json.dumps(golden, indent=2, sort_keys=True) + "\n")
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
