"""Gabor-style uncertainty functionals over sensor scale.

A sensor with location interval ``dx`` has frequency interval ``C / dx``.
The joint (location + content) uncertainty of a 1D sensor is

    U(dx) = lam_loc * dx + lam_freq / dx

and the spatiotemporal uncertainty of a sensor with temporal interval ``T``
and spatial interval ``S`` is the separable sum

    U_ST(T, S) = l1 * S + l2 / S + l3 * T + l4 / T.

All functions accept scalars or numpy arrays and raise ``DomainError`` on
non-positive intervals instead of clamping.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError


@dataclass(frozen=True)
class Logon:
    """Information cell of fixed area ``capacity`` on the (location, frequency) plane."""

    delta_x: float
    capacity: float = 1.0

    def __post_init__(self):
        if not self.delta_x > 0:
            raise DomainError(f"delta_x must be > 0, got {self.delta_x!r}")
        if not self.capacity > 0:
            raise DomainError(f"capacity must be > 0, got {self.capacity!r}")

    @property
    def delta_f(self) -> float:
        return self.capacity / self.delta_x

    @property
    def location_uncertainty(self) -> float:
        return self.delta_x

    @property
    def frequency_uncertainty(self) -> float:
        return self.delta_f


@dataclass(frozen=True)
class Weights1D:
    """Pair of weights for a single axis: location term and frequency term."""

    loc: float = 1.0
    freq: float = 1.0

    def __post_init__(self):
        for name in ("loc", "freq"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise ConfigError("lambda", f"weight {name}={v!r} must be strictly positive")


@dataclass(frozen=True)
class UncertaintyWeights:
    """The four weights of the spatiotemporal functional.

    Ordering follows ``(l1, l2, l3, l4)``: spatial location, spatial frequency,
    temporal location, temporal frequency.
    """

    s_loc: float = 1.0
    s_freq: float = 1.0
    t_loc: float = 1.0
    t_freq: float = 1.0

    def __post_init__(self):
        for name in ("s_loc", "s_freq", "t_loc", "t_freq"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float, np.floating)) and math.isfinite(v) and v > 0):
                raise ConfigError("lambda", f"weight {name}={v!r} must be strictly positive")

    @classmethod
    def from_sequence(cls, values) -> "UncertaintyWeights":
        values = [float(v) for v in values]
        if len(values) != 4:
            raise ConfigError("lambda", f"expected 4 weights, got {len(values)}")
        return cls(*values)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.s_loc, self.s_freq, self.t_loc, self.t_freq)

    def scaled(self, k: float) -> "UncertaintyWeights":
        return UncertaintyWeights(*(k * w for w in self.as_tuple()))

    @property
    def spatial(self) -> Weights1D:
        return Weights1D(self.s_loc, self.s_freq)

    @property
    def temporal(self) -> Weights1D:
        return Weights1D(self.t_loc, self.t_freq)


@dataclass(frozen=True)
class GridSpec:
    """Log-spaced sampling of the (T, S) plane."""

    t_min: float = 0.01
    t_max: float = 100.0
    s_min: float = 0.01
    s_max: float = 100.0
    n_t: int = 128
    n_s: int = 128

    def __post_init__(self):
        if not (0 < self.t_min < self.t_max):
            raise ConfigError("grid", f"need 0 < t_min < t_max, got [{self.t_min}, {self.t_max}]")
        if not (0 < self.s_min < self.s_max):
            raise ConfigError("grid", f"need 0 < s_min < s_max, got [{self.s_min}, {self.s_max}]")
        if int(self.n_t) < 2 or int(self.n_s) < 2:
            raise ConfigError("grid", f"need at least 2 samples per axis, got {self.n_t}x{self.n_s}")

    @classmethod
    def centered(cls, t_lo, t_hi, s_lo, s_hi, n_t, n_s) -> "GridSpec":
        """Grid whose log cells, centred on the samples, exactly tile the box."""
        def centers(lo, hi, n):
            step = (math.log(hi) - math.log(lo)) / n
            return math.exp(math.log(lo) + 0.5 * step), math.exp(math.log(hi) - 0.5 * step)

        t0, t1 = centers(t_lo, t_hi, n_t)
        s0, s1 = centers(s_lo, s_hi, n_s)
        return cls(t0, t1, s0, s1, n_t, n_s)

    @staticmethod
    def _axis(lo, hi, n):
        i = np.arange(n) / (n - 1)
        ax = lo * (hi / lo) ** i
        ax[0], ax[-1] = lo, hi
        return ax

    @property
    def t_axis(self) -> np.ndarray:
        return self._axis(self.t_min, self.t_max, self.n_t)

    @property
    def s_axis(self) -> np.ndarray:
        return self._axis(self.s_min, self.s_max, self.n_s)

    @property
    def log_step_t(self) -> float:
        return math.log(self.t_max / self.t_min) / (self.n_t - 1)

    @property
    def log_step_s(self) -> float:
        return math.log(self.s_max / self.s_min) / (self.n_s - 1)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """``(T, S)`` arrays of shape ``(n_t, n_s)``, T varying along rows."""
        return np.meshgrid(self.t_axis, self.s_axis, indexing="ij")

    def cell_of(self, t: float, s: float) -> tuple[int, int]:
        """Index of the sample nearest to ``(t, s)`` in log coordinates."""
        i = int(round(math.log(t / self.t_min) / self.log_step_t))
        j = int(round(math.log(s / self.s_min) / self.log_step_s))
        return min(max(i, 0), self.n_t - 1), min(max(j, 0), self.n_s - 1)


@dataclass
class ScalarField:
    """Values of a scalar quantity on a :class:`GridSpec`, indexed ``[i_t, j_s]``."""

    grid: GridSpec
    values: np.ndarray
    label: str = "value"
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.grid.n_t, self.grid.n_s):
            raise ValueError(
                f"values shape {self.values.shape} does not match grid "
                f"({self.grid.n_t}, {self.grid.n_s})"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError(f"field {self.label!r} contains non-finite values")

    def argmin(self) -> tuple[int, int]:
        return np.unravel_index(int(np.argmin(self.values)), self.values.shape)

    def argmax(self) -> tuple[int, int]:
        return np.unravel_index(int(np.argmax(self.values)), self.values.shape)

    def point(self, i: int, j: int) -> tuple[float, float]:
        return float(self.grid.t_axis[i]), float(self.grid.s_axis[j])


def _positive(name, x):
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise DomainError(f"{name} must be > 0")
    return x


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def joint_uncertainty_1d(delta_x, weights: Weights1D):
    """Weighted sum of location and frequency uncertainty for interval ``delta_x``."""
    dx = _positive("delta_x", delta_x)
    return _out(weights.loc * dx + weights.freq / dx)


def equilibrium_1d(weights: Weights1D) -> tuple[float, float]:
    """Interval of balanced uncertainties and the uncertainty there."""
    dx = math.sqrt(weights.freq / weights.loc)
    return dx, 2.0 * math.sqrt(weights.loc * weights.freq)


def spatiotemporal_uncertainty(t, s, weights: UncertaintyWeights):
    t = _positive("t", t)
    s = _positive("s", s)
    l1, l2, l3, l4 = weights.as_tuple()
    # spatial part plus temporal part, so the sum equals the two 1D functionals exactly
    return _out((l1 * s + l2 / s) + (l3 * t + l4 / t))


def uncertainty_gradient(t, s, weights: UncertaintyWeights):
    """Analytic partials ``(dU/dT, dU/dS)``."""
    t = _positive("t", t)
    s = _positive("s", s)
    l1, l2, l3, l4 = weights.as_tuple()
    return _out(l3 - l4 / t**2), _out(l1 - l2 / s**2)


def global_minimum(weights: UncertaintyWeights) -> tuple[float, float, float]:
    l1, l2, l3, l4 = weights.as_tuple()
    t_star = math.sqrt(l4 / l3)
    s_star = math.sqrt(l2 / l1)
    u_min = 2.0 * math.sqrt(l1 * l2) + 2.0 * math.sqrt(l3 * l4)
    return t_star, s_star, u_min


def evaluate_field(grid: GridSpec, weights: UncertaintyWeights, workers: int = 1) -> ScalarField:
    """Sample the spatiotemporal functional on ``grid``.

    Rows may be computed by a thread pool; every entry is an independent
    elementwise evaluation so the result does not depend on ``workers``.
    """
    t_axis, s_axis = grid.t_axis, grid.s_axis
    values = np.empty((grid.n_t, grid.n_s))

    def fill(rows):
        values[rows] = spatiotemporal_uncertainty(t_axis[rows][:, None], s_axis[None, :], weights)

    blocks = [b for b in np.array_split(np.arange(grid.n_t), max(1, int(workers))) if b.size]
    if len(blocks) == 1:
        fill(blocks[0])
    else:
        with ThreadPoolExecutor(max_workers=len(blocks)) as pool:
            list(pool.map(fill, blocks))
    return ScalarField(grid, values, label="uncertainty",
                       meta={"weights": list(weights.as_tuple())})
