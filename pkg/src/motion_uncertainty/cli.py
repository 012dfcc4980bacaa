"""Command-line entry point.

Every subcommand resolves a :class:`RunConfig` (``--config`` file first,
then flags), writes its data files into the output directory and a JSON
manifest echoing the effective configuration next to them.

Exit codes: 0 success, 2 invalid arguments or configuration, 3 output
directory not writable.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from .config import (
    FORMATS,
    MODES,
    OUT_ENV,
    RunConfig,
    parse_floats,
    parse_grid,
    parse_prior,
    parse_weights,
)
from .errors import ConfigError, DomainError
from .foundations import (
    SamplerKernel,
    cosine_expansion,
    independence_bound,
    max_entropy_check,
    sup_error,
    emulate_sampler,
    worst_case_uncertainty,
)
from .io import (
    ensure_dir,
    field_svg,
    field_to_dict,
    line_plot_svg,
    write_csv,
    write_curve_csv,
    write_expansion_csv,
    write_field_csv,
    write_json,
    write_text,
)
from .optimal_sets import (
    asymptotes,
    blend_optimal_set,
    integral_optimal_set,
    local_optimal_set,
)
from .sensitivity_maps import (
    AdaptationConfig,
    RegimeLabel,
    adaptation_change_map,
    equivalence_contours,
    frequency_coordinates,
    max_sensitivity_set,
    preference_field,
    regime_classify,
    sensitivity_map,
)
from .stochastic_tuning import run_simulation
from .uncertainty_core import (
    ScalarField,
    equilibrium_1d,
    evaluate_field,
    global_minimum,
    joint_uncertainty_1d,
)

LEVEL_FACTORS = (1.05, 1.25, 1.5, 2.0, 3.0, 5.0)
FIG7_SPEEDS = (0.25, 0.5, 1.0, 2.0, 4.0)
ENTROPY_SWEEP = 20


class Emitter:
    """Writes outputs in the requested formats and records what was written."""

    def __init__(self, root: Path, formats):
        self.root = Path(root)
        self.formats = tuple(formats)
        self.files: list[str] = []

    def _path(self, name):
        self.files.append(name)
        return self.root / name

    def csv(self, name, header, rows):
        if "csv" in self.formats:
            write_csv(self._path(name + ".csv"), header, rows)

    def json(self, name, obj):
        if "json" in self.formats:
            write_json(self._path(name + ".json"), obj)

    def svg(self, name, text_fn):
        if "svg" in self.formats:
            write_text(self._path(name + ".svg"), text_fn())

    def field(self, name, fld: ScalarField, curves=(), points=(), title=""):
        if "csv" in self.formats:
            write_field_csv(self._path(name + ".csv"), fld)
        self.json(name, field_to_dict(fld))
        self.svg(name, lambda: field_svg(fld, curves, points, title or fld.label))

    def curve(self, name, curve, extra=None, background=None, points=(), title="", grid=None):
        if "csv" in self.formats:
            write_curve_csv(self._path(name + ".csv"), curve, extra)
        self.json(name, {"kind": curve.kind, "n_points": len(curve), "meta": curve.meta})
        self.svg(name, lambda: field_svg(background, [curve], points, title or curve.kind, grid=grid))

    def manifest(self, command, config: RunConfig, results: dict, name="manifest"):
        path = self.root / f"{name}.json"
        write_json(path, {
            "command": command,
            "version": __version__,
            "config": config.to_dict(),
            "outputs": sorted(self.files),
            "results": results,
        })
        return path


# -- subcommands ---------------------------------------------------------------


def _t_samples(cfg: RunConfig):
    g = cfg.grid
    t = np.geomspace(g.t_min, g.t_max, int(cfg.curve_samples))
    t[0], t[-1] = g.t_min, g.t_max
    return t


def _levels(cfg: RunConfig):
    if cfg.levels is not None:
        return list(cfg.levels)
    u_min = global_minimum(cfg.weights)[2]
    return [k * u_min for k in LEVEL_FACTORS]


def cmd_surface(cfg, out: Emitter, args=None):
    fld = evaluate_field(cfg.grid, cfg.weights, workers=cfg.threads)
    t, s, u = global_minimum(cfg.weights)
    out.field("surface", fld, points=[(t, s)], title="uncertainty")
    i, j = fld.argmin()
    return {"t_star": t, "s_star": s, "u_min": u, "grid_argmin": [int(i), int(j)],
            "grid_min": float(fld.values[i, j])}


def cmd_minimum(cfg, out: Emitter, args=None):
    t, s, u = global_minimum(cfg.weights)
    print(f"T*={t:.17g} S*={s:.17g} U={u:.17g}")
    return {"t_star": t, "s_star": s, "u_min": u}


def cmd_contours(cfg, out: Emitter, args=None):
    fld = evaluate_field(cfg.grid, cfg.weights, workers=cfg.threads)
    levels = _levels(cfg)
    curves = equivalence_contours(fld, levels)
    rows, summary = [], []
    for k, c in enumerate(curves):
        for t, s in zip(c.t, c.s):
            rows.append((str(k), c.meta["level"], str(int(c.meta["closed"])), c.meta["status"], t, s))
        present = sorted(set(regime_classify(c.t, c.s, cfg.weights).tolist())) if len(c) else []
        summary.append({"id": k, "level": c.meta["level"], "closed": c.meta["closed"],
                        "status": c.meta["status"], "n_points": len(c), "regimes": present})
    out.csv("contours", ("id", "level", "closed", "status", "T", "S"), rows)
    out.svg("contours", lambda: field_svg(fld, curves, [global_minimum(cfg.weights)[:2]], "equivalence contours"))
    return {"levels": levels, "contours": summary}


_REGIME_CODES = {r.value: n for n, r in enumerate(RegimeLabel)}


def cmd_regimes(cfg, out: Emitter, args=None):
    t, s = cfg.grid.mesh()
    labels = regime_classify(t, s, cfg.weights)
    out.csv("regimes", ("T", "S", "regime"), zip(t.ravel(), s.ravel(), labels.ravel().tolist()))
    codes = np.vectorize(_REGIME_CODES.get)(labels).astype(float)
    code_field = ScalarField(cfg.grid, codes, label="regime_code")
    out.svg("regimes", lambda: field_svg(code_field, title="regimes"))
    counts = {r.value: int(np.sum(labels == r.value)) for r in RegimeLabel}
    return {"counts": counts, "codes": _REGIME_CODES}


def _optimal_curve(cfg, mode, v_e=None):
    t = _t_samples(cfg)
    v_e = cfg.v_e if v_e is None else v_e
    if mode == "local":
        return local_optimal_set(cfg.weights, t)
    if mode == "integral":
        return integral_optimal_set(cfg.weights, v_e, t)
    return blend_optimal_set(cfg.weights, v_e, cfg.gamma, t)


def cmd_optimal_set(cfg, out: Emitter, args=None):
    curve = _optimal_curve(cfg, cfg.mode)
    t, s, u = global_minimum(cfg.weights)
    out.curve(f"optimal_{cfg.mode}", curve, points=[(t, s)], grid=cfg.grid,
              title=f"{cfg.mode} optimal set")
    res = {"mode": cfg.mode, "n_points": len(curve),
           "omitted": curve.meta.get("omitted", 0), "residual_max": curve.meta.get("residual_max")}
    if cfg.mode != "local":
        res["v_e"] = cfg.v_e
    if cfg.mode == "integral":
        res["t_min"], res["s_inf"] = asymptotes(cfg.weights, cfg.v_e)
    if cfg.mode == "blend":
        res["gamma"] = cfg.gamma
    return res


def cmd_sensitivity(cfg, out: Emitter, args=None):
    fld = sensitivity_map(cfg.prior, cfg.grid, cfg.weights, cfg.beta, cfg.baseline)
    out.field("sensitivity", fld, title="sensitivity")
    i, j = fld.argmax()
    return {"argmax": [int(i), int(j)], "argmax_ts": list(fld.point(i, j)),
            "max": float(fld.values[i, j])}


def cmd_adapt(cfg, out: Emitter, args=None):
    ac = AdaptationConfig(cfg.prior, cfg.prior_b, cfg.beta, cfg.grid, cfg.weights, cfg.baseline)
    a = sensitivity_map(ac.prior_a, ac.grid, ac.weights, ac.beta, ac.baseline)
    b = sensitivity_map(ac.prior_b, ac.grid, ac.weights, ac.beta, ac.baseline)
    change = adaptation_change_map(ac)
    out.field("sensitivity_a", a, title="sensitivity (a)")
    out.field("sensitivity_b", b, title="sensitivity (b)")
    out.field("change", change, title="100 a / b")
    i, j = change.argmax()
    v = change.values
    return {"max": float(v.max()), "min": float(v.min()), "argmax": [int(i), int(j)],
            "argmax_ts": list(change.point(i, j)),
            "cells_above_100": int(np.sum(v > 100)), "cells_below_100": int(np.sum(v < 100))}


def cmd_maxset(cfg, out: Emitter, args=None):
    curve = max_sensitivity_set(cfg.prior, cfg.grid, cfg.weights, cfg.beta, cfg.baseline)
    f_t, f_s = frequency_coordinates(curve.t, curve.s)
    out.curve("maxset", curve, extra={"f_t": f_t, "f_s": f_s}, grid=cfg.grid,
              title="maximal sensitivity set")
    return {"n_points": len(curve)}


def cmd_simulate(cfg, out: Emitter, args=None):
    sim = cfg.simulation_config()
    summary = run_simulation(sim, threads=cfg.threads)
    epochs = np.arange(len(summary.median_uncertainty))
    out.csv("stats", ("epoch", "median_uncertainty", "mean_uncertainty"),
            zip(epochs.astype(float), summary.median_uncertainty, summary.mean_uncertainty))
    for e, dens in sorted(summary.checkpoints.items()):
        if "csv" in out.formats:
            write_field_csv(out._path(f"density_epoch_{e:05d}.csv"), dens)
    out.field("target", summary.target, title=summary.target.label)
    out.svg("density_final", lambda: field_svg(summary.final_density, title="final density"))
    pop = summary.population
    out.csv("population", ("id", "T", "S"), zip(pop.ids.astype(float), pop.t, pop.s))
    out.svg("median_uncertainty", lambda: line_plot_svg(
        epochs, {"median": summary.median_uncertainty, "mean": summary.mean_uncertainty},
        logy=True, title="population uncertainty", xlabel="epoch", ylabel="U"))
    out.json("summary", summary.to_dict())
    return {"median_start": float(summary.median_uncertainty[0]),
            "median_end": float(summary.median_uncertainty[-1]),
            "spearman_rho": summary.spearman_rho, "top_decile_overlap": summary.top_decile_overlap}


def _reconstruction(out, exp, target, lo, hi, name):
    u = np.linspace(lo, hi, 401)
    approx, want = exp(u), target(u)
    out.csv(name, ("u", "approx", "target"), zip(u, approx, want))
    out.svg(name, lambda: line_plot_svg(u, {"approx": approx, "target": want},
                                        title=name, xlabel="u", ylabel="value"))


def cmd_expand(cfg, out: Emitter, args=None):
    e = cfg.expansion
    kernel = SamplerKernel.gaussian(e.kernel_width)
    exp = cosine_expansion(e.omega0, kernel, e.n_points, e.half_range)

    def target(u):
        return np.cos(e.omega0 * np.asarray(u))

    err = sup_error(exp, target, -3.0, 3.0)
    if "csv" in out.formats:
        write_expansion_csv(out._path("expansion.csv"), exp)
    out.json("expansion", {"kernel": kernel.to_dict(), "omega0": e.omega0, "n_points": e.n_points,
                           "half_range": e.half_range, "sup_error": err, "meta": exp.meta})
    _reconstruction(out, exp, target, -3.0, 3.0, "reconstruction")
    return {"sup_error": err, "n_coefficients": len(exp)}


def _load_tabulated(path) -> SamplerKernel:
    try:
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except (OSError, ValueError) as exc:
        raise ConfigError("target_file", f"cannot read {path}: {exc}") from None
    if data.shape[1] < 2 or data.shape[0] < 2:
        raise ConfigError("target_file", "need at least two rows of x,value")
    x = data[:, 0]
    dx = np.diff(x)
    if not np.allclose(dx, dx[0], rtol=1e-9, atol=0) or dx[0] <= 0:
        raise ConfigError("target_file", "x must be uniformly spaced and increasing")
    return SamplerKernel("user_tabulated", samples=tuple(data[:, 1]), origin=float(x[0]),
                         spacing=float((x[-1] - x[0]) / (len(x) - 1)))


def cmd_emulate(cfg, out: Emitter, args=None):
    e = cfg.expansion
    base = SamplerKernel.gaussian(e.kernel_width)
    target = _load_tabulated(e.target_file) if e.target_file else SamplerKernel.gaussian(e.target_width)
    exp, err = emulate_sampler(target, base, e.n_harmonics, e.emulate_points, e.emulate_half_range,
                               e.window, e.eval_half_width)
    if "csv" in out.formats:
        write_expansion_csv(out._path("expansion.csv"), exp)
    out.json("expansion", {"kernel": base.to_dict(), "target": exp.target, "sup_error": err,
                           "meta": exp.meta})
    _reconstruction(out, exp, target, -e.eval_half_width, e.eval_half_width, "reconstruction")
    return {"sup_error": err, "n_coefficients": len(exp)}


def cmd_entropy_check(cfg, out: Emitter, args=None):
    sigmas = sorted(set(np.geomspace(0.1, 10.0, ENTROPY_SWEEP).tolist()) | {cfg.entropy_sigma})
    reports = [max_entropy_check(s) for s in sigmas]
    out.csv("max_entropy", ("sigma", "gaussian", "uniform", "laplace", "gaussian_quad", "uniform_quad",
                            "laplace_quad"),
            [(r.sigma, r.gaussian, r.uniform, r.laplace, r.gaussian_quad, r.uniform_quad, r.laplace_quad)
             for r in reports])
    rng = np.random.default_rng(cfg.seed)
    slacks = []
    for _ in range(100):
        p = rng.random((int(rng.integers(2, 6)), int(rng.integers(2, 6))))
        slacks.append(independence_bound(p / p.sum()).slack)
    out.csv("independence_slack", ("trial", "slack"), zip(np.arange(len(slacks)).astype(float), slacks))
    return {"gaussian_is_max_everywhere": all(r.gaussian_is_max for r in reports),
            "max_quad_error": max(r.max_quad_error for r in reports),
            "min_slack": min(slacks),
            "worst_case_unit": worst_case_uncertainty(cfg.entropy_sigma, cfg.entropy_sigma)}


def cmd_reproduce_figures(cfg, out: Emitter, args=None):
    """Every model-side dataset (fields, contours, curves, maps), one subdirectory each."""
    root = out.root
    results = {}

    def sub(name, fn):
        em = Emitter(ensure_dir(root / name), cfg.formats)
        res = fn(em)
        em.manifest(f"reproduce-figures/{name}", cfg, res)
        out.files.extend(f"{name}/{f}" for f in em.files + ["manifest.json"])
        results[name] = res

    def fig_preference(em):
        w = cfg.weights.spatial
        dx = np.geomspace(cfg.grid.s_min, cfg.grid.s_max, int(cfg.curve_samples))
        u = joint_uncertainty_1d(dx, w)
        x_eq, u_eq = equilibrium_1d(w)
        em.csv("preference_1d", ("dx", "uncertainty", "preference"), zip(dx, u, u_eq / u))
        em.svg("preference_1d", lambda: line_plot_svg(dx, {"uncertainty": u, "preference": u_eq / u},
                                                      logx=True, logy=True, xlabel="interval"))
        pref = preference_field(evaluate_field(cfg.grid, cfg.weights, workers=cfg.threads))
        em.field("preference", pref, title="preference")
        return {"equilibrium": x_eq, "u_equilibrium": u_eq}

    def fig_surface(em):
        return cmd_surface(cfg, em)

    def fig_contours(em):
        res = cmd_contours(cfg, em)
        res["regimes"] = cmd_regimes(cfg, em)["counts"]
        return res

    def fig_optimal_sets(em):
        t, s, u = global_minimum(cfg.weights)
        surface = evaluate_field(cfg.grid, cfg.weights, workers=cfg.threads)
        local = _optimal_curve(cfg, "local")
        integral = _optimal_curve(cfg, "integral")
        em.curve("optimal_local", local, grid=cfg.grid)
        em.curve("optimal_integral", integral, grid=cfg.grid)
        em.svg("optimal_sets", lambda: field_svg(surface, [local, integral], [(t, s)], "optimal sets"))
        return {"t_star": t, "s_star": s, "local_residual_max": local.meta["residual_max"],
                "integral_residual_max": integral.meta["residual_max"]}

    def fig_prior_shift(em):
        curves, table = [], []
        for v in FIG7_SPEEDS:
            c = _optimal_curve(cfg, "integral", v_e=v)
            em.curve(f"integral_ve_{v:g}", c, grid=cfg.grid)
            curves.append(c)
            table.append((v, *asymptotes(cfg.weights, v)))
        em.csv("asymptotes", ("v_e", "t_min", "s_inf"), table)
        em.svg("integral_sets", lambda: field_svg(None, curves, title="integral sets", grid=cfg.grid))
        return {"asymptotes": [list(r) for r in table]}

    def fig_adaptation(em):
        return cmd_adapt(cfg, em)

    for name, fn in (("preference", fig_preference), ("surface", fig_surface),
                     ("contours_regimes", fig_contours), ("optimal_sets", fig_optimal_sets),
                     ("prior_shift", fig_prior_shift), ("adaptation", fig_adaptation)):
        sub(name, fn)
    return results


COMMANDS = {
    "surface": cmd_surface,
    "minimum": cmd_minimum,
    "contours": cmd_contours,
    "regimes": cmd_regimes,
    "optimal-set": cmd_optimal_set,
    "sensitivity": cmd_sensitivity,
    "adapt": cmd_adapt,
    "maxset": cmd_maxset,
    "simulate": cmd_simulate,
    "expand": cmd_expand,
    "emulate": cmd_emulate,
    "entropy-check": cmd_entropy_check,
    "reproduce-figures": cmd_reproduce_figures,
}


# -- argument handling ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; flags override its values")
    common.add_argument("--lambda", dest="weights", metavar="L1,L2,L3,L4",
                        help="weights: spatial loc, spatial freq, temporal loc, temporal freq")
    common.add_argument("--grid", metavar="TMIN,TMAX,SMIN,SMAX,NT,NS")
    common.add_argument("--out", dest="out_dir", help=f"output directory (default ${OUT_ENV} or ./out)")
    common.add_argument("--threads", type=int)
    common.add_argument("--formats", help=f"comma-separated subset of {','.join(FORMATS)}")
    common.add_argument("--seed", type=int)

    priors = argparse.ArgumentParser(add_help=False)
    priors.add_argument("--beta", type=float, help="log-speed kernel bandwidth")
    priors.add_argument("--baseline", type=float, help="prior-independent allocation share")

    parser = argparse.ArgumentParser(prog="motion-uncertainty", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_, extra=()):
        return subs.add_parser(name, help=help_, parents=[common, *extra])

    add("surface", "uncertainty field on the grid")
    add("minimum", "closed-form global minimum")
    p = add("contours", "equivalence contours")
    p.add_argument("--levels", help="comma-separated uncertainty levels")
    add("regimes", "coupling/tradeoff classification on the grid")
    p = add("optimal-set", "local, integral or blended optimal set")
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--ve", dest="v_e", type=float, help="expected speed")
    p.add_argument("--gamma", type=float, help="blend exponent in [0, 1]")
    p.add_argument("--samples", dest="curve_samples", type=int, help="number of T samples")
    p = add("sensitivity", "prior-weighted sensitivity map", [priors])
    p.add_argument("--prior", help="delta:V | lognormal:MU,SIGMA | hist:V:W,...")
    p = add("adapt", "adaptation change map 100*a/b", [priors])
    p.add_argument("--prior-a", dest="prior")
    p.add_argument("--prior-b", dest="prior_b")
    p = add("maxset", "maximal-sensitivity set", [priors])
    p.add_argument("--prior")
    p = add("simulate", "stochastic tuning of a sensor population", [priors])
    p.add_argument("--sensors", type=int)
    p.add_argument("--epochs", type=int)
    p.add_argument("--gain", type=float)
    p.add_argument("--bounds", metavar="TLO,THI,SLO,SHI")
    p.add_argument("--bins", type=int, help="density bins per axis")
    p.add_argument("--checkpoint-every", type=int)
    p.add_argument("--prior", dest="sim_prior", help="environment speed prior (default: none)")
    p.add_argument("--gamma", type=float)
    p = add("expand", "replica expansion of a harmonic")
    p.add_argument("--omega0", type=float)
    p.add_argument("--kernel-width", type=float)
    p.add_argument("--points", dest="n_points", type=int)
    p.add_argument("--half-range", type=float)
    p = add("emulate", "emulate one sampler by replicas of another")
    p.add_argument("--kernel-width", type=float)
    p.add_argument("--target-width", type=float)
    p.add_argument("--target-file", help="CSV x,value on a uniform grid")
    p.add_argument("--harmonics", dest="n_harmonics", type=int)
    p.add_argument("--points", dest="emulate_points", type=int)
    p.add_argument("--half-range", dest="emulate_half_range", type=float)
    p.add_argument("--window", type=float)
    p = add("entropy-check", "entropy bounds and maximum-entropy check")
    p.add_argument("--sigma", dest="entropy_sigma", type=float)
    p = add("reproduce-figures", "write every figure dataset", [priors])
    p.add_argument("--ve", dest="v_e", type=float)
    return parser


def resolve_config(args) -> RunConfig:
    cfg = RunConfig.load(args.config) if getattr(args, "config", None) else RunConfig()
    get = lambda name: getattr(args, name, None)  # noqa: E731
    top = {}
    if get("weights") is not None:
        top["weights"] = parse_weights(args.weights)
    if get("grid") is not None:
        top["grid"] = parse_grid(args.grid)
    if get("formats") is not None:
        top["formats"] = tuple(f.strip() for f in args.formats.split(",") if f.strip())
    if get("levels") is not None:
        top["levels"] = parse_floats(args.levels, "levels")
    if get("prior") is not None:
        top["prior"] = parse_prior(args.prior, "prior")
    if get("prior_b") is not None:
        top["prior_b"] = parse_prior(args.prior_b, "prior_b")
    for name in ("out_dir", "threads", "seed", "beta", "baseline", "mode", "v_e", "gamma",
                 "curve_samples", "entropy_sigma"):
        if get(name) is not None:
            top[name] = get(name)

    sim = {}
    for flag, name in (("sensors", "n_sensors"), ("epochs", "epochs"), ("gain", "gain"),
                       ("bins", "density_bins"), ("checkpoint_every", "checkpoint_every")):
        if get(flag) is not None:
            sim[name] = get(flag)
    if get("bounds") is not None:
        sim["bounds"] = parse_floats(args.bounds, "bounds", 4)
    if get("sim_prior") is not None:
        sim["prior"] = parse_prior(args.sim_prior, "prior")

    exp = {}
    for name in ("omega0", "kernel_width", "n_points", "half_range", "target_width", "target_file",
                 "n_harmonics", "emulate_points", "emulate_half_range", "window"):
        if get(name) is not None:
            exp[name] = get(name)

    if sim:
        top["simulation"] = replace(cfg.simulation, **sim)
    if exp:
        top["expansion"] = replace(cfg.expansion, **exp)
    return replace(cfg, **top)


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
    except (ConfigError, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        root = ensure_dir(cfg.resolved_out_dir())
    except OSError as exc:
        print(f"error: cannot write to output directory: {exc}", file=sys.stderr)
        return 3
    cfg = replace(cfg, out_dir=str(root))
    out = Emitter(root, cfg.formats)
    try:
        results = COMMANDS[args.command](cfg, out, args)
        out.manifest(args.command, cfg, results, name=f"{args.command}.manifest")
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 3
    return 0


def main():  # pragma: no cover - console entry
    sys.exit(run_cli())


if __name__ == "__main__":  # pragma: no cover
    main()
