"""Run configuration shared by the command line and the scripts.

A :class:`RunConfig` holds every parameter a subcommand can use.  It
serialises to plain JSON (floats are written with ``repr`` precision, so a
save/load cycle is lossless) and a partial JSON file may be used as a base
that command-line flags then override.
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import asdict, dataclass, field, fields, replace

from .errors import ConfigError
from .optimal_sets import SpeedPrior
from .sensitivity_maps import DEFAULT_BASELINE, DEFAULT_BETA
from .stochastic_tuning import SimulationConfig
from .uncertainty_core import GridSpec, UncertaintyWeights

OUT_ENV = "MOTION_UNCERTAINTY_OUT"
FORMATS = ("csv", "json", "svg")
MODES = ("local", "integral", "blend")


# -- string parsers used by flags --------------------------------------------


def parse_floats(text: str, name: str, count: int | None = None) -> tuple[float, ...]:
    try:
        values = tuple(float(x) for x in str(text).split(","))
    except ValueError:
        raise ConfigError(name, f"expected comma-separated numbers, got {text!r}") from None
    if count is not None and len(values) != count:
        raise ConfigError(name, f"expected {count} values, got {len(values)}")
    if not all(math.isfinite(v) for v in values):
        raise ConfigError(name, f"values must be finite, got {text!r}")
    return values


def parse_weights(text: str) -> UncertaintyWeights:
    """``"l1,l2,l3,l4"`` in the order spatial loc, spatial freq, temporal loc, temporal freq."""
    return UncertaintyWeights.from_sequence(parse_floats(text, "lambda", 4))


def parse_grid(text: str) -> GridSpec:
    """``"t_min,t_max,s_min,s_max,n_t,n_s"``."""
    v = parse_floats(text, "grid", 6)
    if v[4] != int(v[4]) or v[5] != int(v[5]):
        raise ConfigError("grid", "sample counts must be integers")
    return GridSpec(v[0], v[1], v[2], v[3], int(v[4]), int(v[5]))


def parse_prior(text: str, name: str = "prior") -> SpeedPrior:
    """Parse ``delta:2``, ``lognormal:MU,SIGMA`` or ``hist:V1:W1,V2:W2,...``."""
    kind, _, rest = str(text).partition(":")
    kind = kind.strip().lower()
    try:
        if kind == "delta":
            return SpeedPrior.delta(float(rest))
        if kind in ("lognormal", "log_normal"):
            mu, sigma = parse_floats(rest, name, 2)
            return SpeedPrior.log_normal(mu, sigma)
        if kind in ("hist", "histogram"):
            bins = []
            for item in rest.split(","):
                v, _, w = item.partition(":")
                bins.append((float(v), float(w)))
            return SpeedPrior.histogram(bins)
    except ConfigError as exc:
        raise ConfigError(name, str(exc)) from None
    except ValueError:
        raise ConfigError(name, f"cannot parse {text!r}") from None
    raise ConfigError(name, f"unknown prior {text!r}; use delta:V, lognormal:MU,SIGMA or hist:V:W,...")


def prior_to_string(prior: SpeedPrior) -> str:
    if prior.kind == "delta":
        return f"delta:{prior.v0!r}"
    if prior.kind == "log_normal":
        return f"lognormal:{prior.mu!r},{prior.sigma_log!r}"
    return "hist:" + ",".join(f"{v!r}:{w!r}" for v, w in prior.bins)


# -- config sections ----------------------------------------------------------


@dataclass(frozen=True)
class SimulationSettings:
    n_sensors: int = 10_000
    epochs: int = 500
    gain: float = 0.02
    bounds: tuple[float, float, float, float] = (0.01, 100.0, 0.01, 100.0)
    density_bins: int = 16
    checkpoint_every: int = 100
    prior: SpeedPrior | None = None

    def __post_init__(self):
        object.__setattr__(self, "bounds", tuple(float(b) for b in self.bounds))


@dataclass(frozen=True)
class ExpansionSettings:
    omega0: float = 1.0
    kernel_width: float = 1.0
    n_points: int = 512
    half_range: float = 8.0
    target_width: float = 0.5
    n_harmonics: int = 6
    emulate_points: int = 1024
    emulate_half_range: float = 12.0
    window: float = 3.0
    eval_half_width: float = 2.0
    target_file: str | None = None  # CSV ``x,value`` on a uniform grid; overrides target_width

    def __post_init__(self):
        for name in ("omega0", "kernel_width", "half_range", "target_width", "emulate_half_range",
                     "window", "eval_half_width"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ConfigError(name, f"must be > 0, got {v!r}")
        for name in ("n_points", "n_harmonics", "emulate_points"):
            if int(getattr(self, name)) < 1:
                raise ConfigError(name, f"must be >= 1, got {getattr(self, name)!r}")


@dataclass(frozen=True)
class RunConfig:
    weights: UncertaintyWeights = field(default_factory=UncertaintyWeights)
    grid: GridSpec = field(default_factory=GridSpec)
    prior: SpeedPrior = field(default_factory=lambda: SpeedPrior.delta(2.0))
    prior_b: SpeedPrior = field(default_factory=lambda: SpeedPrior.delta(0.5))
    beta: float = DEFAULT_BETA
    baseline: float = DEFAULT_BASELINE
    mode: str = "integral"
    v_e: float = 1.0
    gamma: float = 0.5
    curve_samples: int = 512
    levels: tuple[float, ...] | None = None  # None: multiples of the minimum
    simulation: SimulationSettings = field(default_factory=SimulationSettings)
    expansion: ExpansionSettings = field(default_factory=ExpansionSettings)
    entropy_sigma: float = 1.0
    out_dir: str | None = None
    formats: tuple[str, ...] = FORMATS
    seed: int = 1
    threads: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError("mode", f"must be one of {', '.join(MODES)}, got {self.mode!r}")
        if not (math.isfinite(self.v_e) and self.v_e > 0):
            raise ConfigError("ve", f"expected speed must be > 0, got {self.v_e!r}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ConfigError("gamma", f"must lie in [0, 1], got {self.gamma!r}")
        if not (math.isfinite(self.beta) and self.beta > 0):
            raise ConfigError("beta", f"must be > 0, got {self.beta!r}")
        if not (math.isfinite(self.baseline) and self.baseline >= 0):
            raise ConfigError("baseline", f"must be >= 0, got {self.baseline!r}")
        if int(self.curve_samples) < 2:
            raise ConfigError("curve_samples", f"must be >= 2, got {self.curve_samples!r}")
        if self.levels is not None:
            object.__setattr__(self, "levels", tuple(float(v) for v in self.levels))
            if not all(math.isfinite(v) for v in self.levels):
                raise ConfigError("levels", "levels must be finite")
        if not (math.isfinite(self.entropy_sigma) and self.entropy_sigma > 0):
            raise ConfigError("sigma", f"must be > 0, got {self.entropy_sigma!r}")
        formats = tuple(self.formats)
        bad = [f for f in formats if f not in FORMATS]
        if bad or not formats:
            raise ConfigError("formats", f"choose from {', '.join(FORMATS)}, got {formats!r}")
        object.__setattr__(self, "formats", formats)
        if int(self.threads) < 1:
            raise ConfigError("threads", f"must be >= 1, got {self.threads!r}")
        if int(self.seed) < 0:
            raise ConfigError("seed", f"must be >= 0, got {self.seed!r}")
        # simulation checks live in SimulationConfig
        self.simulation_config()

    def resolved_out_dir(self) -> str:
        return self.out_dir or os.environ.get(OUT_ENV) or "out"

    def simulation_config(self, **overrides) -> SimulationConfig:
        sim = self.simulation
        kw = dict(n_sensors=sim.n_sensors, weights=self.weights, bounds=sim.bounds, gain=sim.gain,
                  epochs=sim.epochs, seed=self.seed, prior=sim.prior, gamma=self.gamma if sim.prior else 0.0,
                  beta=self.beta, baseline=self.baseline, density_bins=sim.density_bins,
                  checkpoint_every=sim.checkpoint_every)
        kw.update(overrides)
        return SimulationConfig(**kw)

    def to_dict(self) -> dict:
        sim = asdict(self.simulation)
        sim["bounds"] = list(self.simulation.bounds)
        sim["prior"] = self.simulation.prior.to_dict() if self.simulation.prior else None
        return {
            "weights": list(self.weights.as_tuple()),
            "grid": asdict(self.grid),
            "prior": self.prior.to_dict(),
            "prior_b": self.prior_b.to_dict(),
            "beta": self.beta,
            "baseline": self.baseline,
            "mode": self.mode,
            "v_e": self.v_e,
            "gamma": self.gamma,
            "curve_samples": self.curve_samples,
            "levels": None if self.levels is None else list(self.levels),
            "simulation": sim,
            "expansion": asdict(self.expansion),
            "entropy_sigma": self.entropy_sigma,
            "out_dir": self.out_dir,
            "formats": list(self.formats),
            "seed": self.seed,
            "threads": self.threads,
        }

    @classmethod
    def from_dict(cls, d: dict, base: "RunConfig | None" = None) -> "RunConfig":
        """Build from a (possibly partial) dict; missing keys come from ``base``."""
        base = base or cls()
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(d) - known)
        if unknown:
            raise ConfigError(unknown[0], "unknown configuration key")
        kw = {}
        for key, value in d.items():
            if key == "weights":
                kw[key] = UncertaintyWeights.from_sequence(value)
            elif key == "grid":
                kw[key] = _section(GridSpec, value, base.grid, "grid")
            elif key in ("prior", "prior_b"):
                kw[key] = _prior_from(value, key)
            elif key == "simulation":
                value = dict(value)
                if "prior" in value:
                    value["prior"] = None if value["prior"] is None else _prior_from(value["prior"], "prior")
                kw[key] = _section(SimulationSettings, value, base.simulation, "simulation")
            elif key == "expansion":
                kw[key] = _section(ExpansionSettings, value, base.expansion, "expansion")
            elif key in ("levels", "formats"):
                kw[key] = None if value is None else tuple(value)
            else:
                kw[key] = value
        return replace(base, **kw)

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "RunConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError("config", f"cannot read {path}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config", "top level must be a JSON object")
        return cls.from_dict(data)


def _prior_from(value, name):
    if isinstance(value, str):
        return parse_prior(value, name)
    if not isinstance(value, dict):
        raise ConfigError(name, f"expected an object or string, got {value!r}")
    try:
        return SpeedPrior.from_dict(value)
    except (KeyError, TypeError) as exc:
        raise ConfigError(name, f"malformed prior: {exc}") from None


def _section(cls, value, base, name):
    if not isinstance(value, dict):
        raise ConfigError(name, "expected an object")
    allowed = {f.name for f in fields(cls)}
    unknown = sorted(set(value) - allowed)
    if unknown:
        raise ConfigError(f"{name}.{unknown[0]}", "unknown configuration key")
    try:
        return replace(base, **value)
    except TypeError as exc:
        raise ConfigError(name, str(exc)) from None


def simulation_to_dict(config: SimulationConfig) -> dict:
    return {
        "n_sensors": int(config.n_sensors),
        "weights": list(config.weights.as_tuple()),
        "bounds": list(config.bounds),
        "gain": config.gain,
        "epochs": int(config.epochs),
        "seed": int(config.seed),
        "prior": None if config.prior is None else config.prior.to_dict(),
        "gamma": config.gamma,
        "beta": config.beta,
        "baseline": config.baseline,
        "density_bins": int(config.density_bins),
        "checkpoint_every": int(config.checkpoint_every),
    }


def simulation_from_dict(d: dict) -> SimulationConfig:
    d = dict(d)
    d["weights"] = UncertaintyWeights.from_sequence(d["weights"])
    d["bounds"] = tuple(d["bounds"])
    d["prior"] = None if d.get("prior") is None else SpeedPrior.from_dict(d["prior"])
    return SimulationConfig(**d)
