"""Uncoupled stochastic tuning of a sensor population.

Each sensor performs a random walk in ``(ln T, ln S)`` whose step amplitude is
proportional to its own uncertainty.  There is no gradient term: the
population drifts toward low uncertainty only because sensors linger where
their steps are short.  For an Ito walk with amplitude ``a(x)`` and reflecting
walls the stationary density is proportional to ``1/a(x)^2``.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.stats import rankdata

from .errors import ConfigError, GridMismatchError
from .optimal_sets import SpeedPrior, expected_speed
from .rng import PURPOSE_INIT, PURPOSE_STEP, stream_normals, stream_uniforms
from .sensitivity_maps import (
    DEFAULT_BASELINE,
    DEFAULT_BETA,
    preference_field,
    sensitivity_map,
    speed_weight,
)
from .uncertainty_core import (
    GridSpec,
    ScalarField,
    UncertaintyWeights,
    evaluate_field,
    global_minimum,
    spatiotemporal_uncertainty,
)

DOCUMENTED_SEEDS = tuple(range(1, 11))


@dataclass(frozen=True)
class SimulationConfig:
    n_sensors: int = 10_000
    weights: UncertaintyWeights = field(default_factory=UncertaintyWeights)
    bounds: tuple[float, float, float, float] = (0.01, 100.0, 0.01, 100.0)  # t_lo, t_hi, s_lo, s_hi
    gain: float = 0.02
    epochs: int = 500
    seed: int = 1
    prior: SpeedPrior | None = None
    gamma: float = 0.0
    beta: float = DEFAULT_BETA
    baseline: float = DEFAULT_BASELINE
    density_bins: int = 16
    checkpoint_every: int = 100

    def __post_init__(self):
        object.__setattr__(self, "bounds", tuple(float(b) for b in self.bounds))
        if len(self.bounds) != 4:
            raise ConfigError("bounds", "expected t_lo,t_hi,s_lo,s_hi")
        t_lo, t_hi, s_lo, s_hi = self.bounds
        if not (0 < t_lo < t_hi and 0 < s_lo < s_hi):
            raise ConfigError("bounds", f"need 0 < lo < hi on both axes, got {self.bounds}")
        if int(self.n_sensors) < 1:
            raise ConfigError("n_sensors", f"need at least one sensor, got {self.n_sensors}")
        if not (math.isfinite(self.gain) and self.gain >= 0):
            raise ConfigError("gain", f"must be >= 0, got {self.gain}")
        if int(self.epochs) < 1:
            raise ConfigError("epochs", f"must be >= 1, got {self.epochs}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ConfigError("gamma", f"must lie in [0, 1], got {self.gamma}")
        if not self.beta > 0:
            raise ConfigError("beta", f"must be > 0, got {self.beta}")
        if not self.baseline >= 0:
            raise ConfigError("baseline", f"must be >= 0, got {self.baseline}")
        if int(self.density_bins) < 2:
            raise ConfigError("density_bins", f"must be >= 2, got {self.density_bins}")
        if int(self.checkpoint_every) < 1:
            raise ConfigError("checkpoint_every", f"must be >= 1, got {self.checkpoint_every}")

    @property
    def log_bounds(self) -> tuple[float, float, float, float]:
        return tuple(math.log(b) for b in self.bounds)

    def density_grid(self) -> GridSpec:
        t_lo, t_hi, s_lo, s_hi = self.bounds
        n = int(self.density_bins)
        return GridSpec.centered(t_lo, t_hi, s_lo, s_hi, n, n)


@dataclass
class SensorPopulation:
    """Sensor states in log coordinates; ``ids`` address each sensor's random stream."""

    ids: np.ndarray
    log_t: np.ndarray
    log_s: np.ndarray

    @property
    def t(self) -> np.ndarray:
        return np.exp(self.log_t)

    @property
    def s(self) -> np.ndarray:
        return np.exp(self.log_s)

    def __len__(self):
        return len(self.ids)

    def subset(self, mask) -> "SensorPopulation":
        return SensorPopulation(self.ids[mask], self.log_t[mask], self.log_s[mask])

    def copy(self) -> "SensorPopulation":
        return SensorPopulation(self.ids.copy(), self.log_t.copy(), self.log_s.copy())


@dataclass
class SimulationSummary:
    config: SimulationConfig
    median_uncertainty: np.ndarray  # index = epoch, 0 is the initial state
    mean_uncertainty: np.ndarray
    checkpoints: dict[int, ScalarField]
    final_density: ScalarField
    target: ScalarField
    spearman_rho: float
    top_decile_overlap: float
    population: SensorPopulation

    def to_dict(self) -> dict:
        from .config import simulation_to_dict

        return {
            "config": simulation_to_dict(self.config),
            "median_uncertainty": self.median_uncertainty.tolist(),
            "mean_uncertainty": self.mean_uncertainty.tolist(),
            "checkpoint_epochs": sorted(self.checkpoints),
            "spearman_rho": self.spearman_rho,
            "top_decile_overlap": self.top_decile_overlap,
        }


def reflect(x, lo, hi):
    """Fold ``x`` into ``[lo, hi]`` by repeated reflection off the walls."""
    width = hi - lo
    y = np.mod(x - lo, 2.0 * width)
    return lo + np.where(y > width, 2.0 * width - y, y)


def init_population(config: SimulationConfig) -> SensorPopulation:
    """Independent log-uniform draws over the bounding box, one stream per sensor."""
    n = int(config.n_sensors)
    lt0, lt1, ls0, ls1 = config.log_bounds
    ids = np.arange(n, dtype=np.int64)
    u_t, u_s, _, _ = stream_uniforms(config.seed, ids, 0, PURPOSE_INIT)
    return SensorPopulation(ids, lt0 + (lt1 - lt0) * u_t, ls0 + (ls1 - ls0) * u_s)


def effective_uncertainty(log_t, log_s, config: SimulationConfig):
    """Uncertainty driving the step length, including the environment's speed prior."""
    t, s = np.exp(log_t), np.exp(log_s)
    u = spatiotemporal_uncertainty(t, s, config.weights)
    if config.prior is None:
        return u
    log_speed = log_s - log_t
    if config.gamma > 0:
        log_speed = (1 - config.gamma) * log_speed + config.gamma * math.log(expected_speed(config.prior))
    return u / speed_weight(t, s, config.prior, config.beta, config.baseline, log_speed=log_speed)


def step_amplitude(population: SensorPopulation, config: SimulationConfig) -> np.ndarray:
    """Standard deviation of each sensor's next log-step: ``gain * U_eff / u_min``."""
    u_min = global_minimum(config.weights)[2]
    return config.gain * effective_uncertainty(population.log_t, population.log_s, config) / u_min


def step_population(population: SensorPopulation, config: SimulationConfig, epoch_index: int,
                    threads: int = 1) -> SensorPopulation:
    lt0, lt1, ls0, ls1 = config.log_bounds
    out_t = np.empty_like(population.log_t)
    out_s = np.empty_like(population.log_s)

    def work(idx):
        part = population.subset(idx)
        amp = step_amplitude(part, config)
        eta_t, eta_s = stream_normals(config.seed, part.ids, epoch_index, PURPOSE_STEP)
        out_t[idx] = reflect(part.log_t + amp * eta_t, lt0, lt1)
        out_s[idx] = reflect(part.log_s + amp * eta_s, ls0, ls1)

    chunks = [c for c in np.array_split(np.arange(len(population)), max(1, int(threads))) if c.size]
    if len(chunks) <= 1:
        work(np.arange(len(population)))
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            list(pool.map(work, chunks))
    return SensorPopulation(population.ids.copy(), out_t, out_s)


def population_density(population: SensorPopulation, grid: GridSpec) -> ScalarField:
    """Normalised histogram over log cells centred on the grid samples.

    Cells are right-open except the top cell on each axis, which includes its
    upper edge.
    """
    def bins(logs, lo, step, n, axis):
        edge0 = math.log(lo) - 0.5 * step
        x = (logs - edge0) / step
        # sensors sitting on an outer edge up to rounding belong to the edge cell
        x = np.where((x < 0) & (x > -1e-9), 0.0, x)
        x = np.where((x >= n) & (x < n + 1e-9), n - 0.5, x)
        k = np.floor(x).astype(np.int64)
        bad = np.nonzero((k < 0) | (k >= n))[0]
        if bad.size:
            b = bad[0]
            raise ValueError(
                f"sensor {int(population.ids[b])} at {axis}={math.exp(logs[b]):.6g} "
                f"lies outside the density grid"
            )
        return k

    i = bins(population.log_t, grid.t_min, grid.log_step_t, grid.n_t, "T")
    j = bins(population.log_s, grid.s_min, grid.log_step_s, grid.n_s, "S")
    counts = np.zeros((grid.n_t, grid.n_s))
    np.add.at(counts, (i, j), 1.0)
    return ScalarField(grid, counts / counts.sum(), label="density")


def _top_cells(values, k):
    return set(np.argsort(-values, kind="stable")[:k].tolist())


def compare_to_preference(density: ScalarField, preference: ScalarField) -> tuple[float, float]:
    """Spearman rank correlation (average ranks) and top-decile cell overlap.

    A constant field has no rank information; its correlation is reported as 0.
    """
    if density.grid != preference.grid:
        raise GridMismatchError("density and preference are sampled on different grids")
    a = rankdata(density.values.ravel(), method="average")
    b = rankdata(preference.values.ravel(), method="average")
    a -= a.mean()
    b -= b.mean()
    denom = math.sqrt(float(a @ a) * float(b @ b))
    rho = float(a @ b) / denom if denom > 0 else 0.0
    k = max(1, math.ceil(0.1 * a.size))
    overlap = len(_top_cells(density.values.ravel(), k) & _top_cells(preference.values.ravel(), k)) / k
    return rho, overlap


def target_field(config: SimulationConfig) -> ScalarField:
    """Allocation the population should approach: preference, or the sensitivity map under a prior."""
    grid = config.density_grid()
    if config.prior is None:
        return preference_field(evaluate_field(grid, config.weights))
    return sensitivity_map(config.prior, grid, config.weights, config.beta, config.baseline)


def run_simulation(config: SimulationConfig, threads: int = 1,
                   population: SensorPopulation | None = None, epoch_offset: int = 0,
                   progress=None) -> SimulationSummary:
    """Iterate :func:`step_population` for ``config.epochs`` epochs.

    ``population`` and ``epoch_offset`` allow continuing a previous run (for an
    environment switch) without reusing random streams.
    """
    pop = init_population(config) if population is None else population.copy()
    grid = config.density_grid()

    def stats(p):
        u = spatiotemporal_uncertainty(p.t, p.s, config.weights)
        return float(np.median(u)), float(np.mean(u))

    med, mean = [], []
    m0, a0 = stats(pop)
    med.append(m0)
    mean.append(a0)
    checkpoints = {0: population_density(pop, grid)}
    for e in range(1, int(config.epochs) + 1):
        pop = step_population(pop, config, epoch_offset + e, threads=threads)
        m, a = stats(pop)
        med.append(m)
        mean.append(a)
        if e % config.checkpoint_every == 0 or e == config.epochs:
            checkpoints[e] = population_density(pop, grid)
        if progress is not None:
            progress(e)
    final = checkpoints[int(config.epochs)]
    target = target_field(config)
    rho, overlap = compare_to_preference(final, target)
    return SimulationSummary(config, np.array(med), np.array(mean), checkpoints, final, target,
                             rho, overlap, pop)


def speed_line_offset(density: ScalarField, v: float) -> float:
    """Log distance ``|ln(S/T) - ln v|`` of the density's peak cell from the line ``S = v T``."""
    t, s = density.point(*density.argmax())
    return abs(math.log(s / t) - math.log(v))


@dataclass
class SwitchResult:
    before: SimulationSummary
    after: SimulationSummary
    v_new: float
    offset_before: float
    offset_after: float

    @property
    def moved_toward(self) -> bool:
        return self.offset_after < self.offset_before


def environment_switch(config: SimulationConfig, new_prior: SpeedPrior, extra_epochs: int = 200,
                       threads: int = 1) -> SwitchResult:
    """Run ``config``, then continue the same population under ``new_prior``.

    The continuation uses epochs after the first run's, so no random stream is
    reused.  Offsets are measured from the line of the new prior's expected speed.
    """
    first = run_simulation(config, threads=threads)
    cont = replace(config, prior=new_prior, epochs=int(extra_epochs), checkpoint_every=int(extra_epochs))
    second = run_simulation(cont, threads=threads, population=first.population,
                            epoch_offset=int(config.epochs))
    v_new = expected_speed(new_prior)
    return SwitchResult(first, second, v_new, speed_line_offset(first.final_density, v_new),
                        speed_line_offset(second.final_density, v_new))
