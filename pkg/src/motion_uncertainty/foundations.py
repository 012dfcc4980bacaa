"""Numerical checks behind the additive uncertainty model and sensor emulation.

Two groups of routines live here:

* entropy bookkeeping: discrete entropy, the independence bound
  ``H(X,F) <= H(X) + H(F)``, and the maximum-entropy property of the Gaussian
  among densities of equal variance;
* replica expansion: writing a harmonic (and then any target built from
  harmonics) as a weighted sum of shifted copies of a base sampler whose
  spectrum has no zeros.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy import integrate

from .errors import DomainError, SpectrumHoleError

HOLE_THRESHOLD = 1e-12  # on |psi_hat|^2
_SUM_TOL = 1e-12


# -- entropy -----------------------------------------------------------------


def _check_distribution(p):
    p = np.asarray(p, dtype=float)
    if p.size == 0:
        raise DomainError("empty distribution")
    if np.any(~np.isfinite(p)) or np.any(p < 0):
        raise DomainError("probabilities must be finite and non-negative")
    if abs(p.sum() - 1.0) > _SUM_TOL:
        raise DomainError(f"probabilities sum to {p.sum():.17g}, not 1")
    return p


def _entropy(p):
    nz = p[p > 0]
    return float(-np.sum(nz * np.log(nz)))


def discrete_entropy(p) -> float:
    """Shannon entropy in nats, with ``0 log 0 = 0``."""
    return _entropy(_check_distribution(p).ravel())


class IndependenceBound(NamedTuple):
    h_joint: float
    h_x: float
    h_f: float
    slack: float
    independent: bool


def independence_bound(joint) -> IndependenceBound:
    """Compare the joint entropy of an ``n x m`` table with the sum of its marginal entropies."""
    p = _check_distribution(joint)
    if p.ndim != 2:
        raise DomainError("joint distribution must be a 2-D table")
    px, pf = p.sum(axis=1), p.sum(axis=0)
    h_joint, h_x, h_f = _entropy(p.ravel()), _entropy(px), _entropy(pf)
    independent = bool(np.all(np.abs(p - np.outer(px, pf)) <= 1e-10))
    # for a product table the three entropies differ only by rounding
    slack = 0.0 if independent else h_x + h_f - h_joint
    return IndependenceBound(h_joint, h_x, h_f, slack, independent)


def worst_case_uncertainty(sigma_x: float, sigma_f: float) -> float:
    """Sum of variances, the uncertainty ranked by the minimax argument."""
    if sigma_x < 0 or sigma_f < 0:
        raise DomainError("standard deviations must be >= 0")
    return sigma_x**2 + sigma_f**2


def gaussian_entropy(sigma):
    return 0.5 * math.log(2 * math.pi * math.e * sigma**2)


def uniform_entropy(sigma):
    # width sqrt(12) * sigma
    return 0.5 * math.log(12 * sigma**2)


def laplace_entropy(sigma):
    # scale b = sigma / sqrt(2); h = 1 + ln(2b)
    return 1.0 + 0.5 * math.log(2 * sigma**2)


def _quad_entropy(sigma):
    """Differential entropies by direct quadrature of ``-p log p``."""
    opts = dict(epsabs=1e-13, epsrel=1e-12, limit=200)
    log_norm = math.log(sigma * math.sqrt(2 * math.pi))
    g = integrate.quad(
        lambda x: math.exp(-x * x / (2 * sigma**2) - log_norm) * (x * x / (2 * sigma**2) + log_norm),
        -np.inf, np.inf, **opts)[0]
    width = math.sqrt(12) * sigma
    u = integrate.quad(lambda x: -(1 / width) * math.log(1 / width), -width / 2, width / 2, **opts)[0]
    b = sigma / math.sqrt(2)
    lap = 2 * integrate.quad(
        lambda x: math.exp(-x / b) / (2 * b) * (x / b + math.log(2 * b)), 0, np.inf, **opts)[0]
    return g, u, lap


@dataclass
class MaxEntropyReport:
    sigma: float
    gaussian: float
    uniform: float
    laplace: float
    gaussian_quad: float
    uniform_quad: float
    laplace_quad: float
    gaussian_is_max: bool
    max_quad_error: float


def max_entropy_check(sigma: float) -> MaxEntropyReport:
    """Entropies of variance-matched Gaussian, uniform and Laplace densities."""
    if not sigma > 0:
        raise DomainError(f"sigma must be > 0, got {sigma!r}")
    g, u, lap = gaussian_entropy(sigma), uniform_entropy(sigma), laplace_entropy(sigma)
    gq, uq, lq = _quad_entropy(sigma)
    return MaxEntropyReport(
        sigma, g, u, lap, gq, uq, lq,
        gaussian_is_max=g > u and g > lap,
        max_quad_error=max(abs(g - gq), abs(u - uq), abs(lap - lq)),
    )


# -- replica expansion -------------------------------------------------------


@dataclass(frozen=True)
class SamplerKernel:
    """A sampling function: an unnormalised Gaussian, or samples on a uniform grid.

    Tabulated kernels are linearly interpolated and vanish outside their
    support.
    """

    kind: str
    width: float | None = None
    samples: tuple[float, ...] = ()
    origin: float = 0.0
    spacing: float = 0.0

    def __post_init__(self):
        if self.kind == "gaussian":
            if self.width is None or not self.width > 0:
                raise DomainError(f"gaussian width must be > 0, got {self.width!r}")
        elif self.kind == "user_tabulated":
            if len(self.samples) < 2 or not self.spacing > 0:
                raise DomainError("tabulated kernel needs >= 2 samples and a positive spacing")
            object.__setattr__(self, "samples", tuple(float(v) for v in self.samples))
        else:
            raise DomainError(f"unknown kernel kind {self.kind!r}")

    @classmethod
    def gaussian(cls, width: float = 1.0) -> "SamplerKernel":
        return cls("gaussian", width=float(width))

    @classmethod
    def tabulate(cls, func, lo: float, hi: float, n: int) -> "SamplerKernel":
        x = np.linspace(lo, hi, n)
        return cls("user_tabulated", samples=tuple(func(x)), origin=lo, spacing=(hi - lo) / (n - 1))

    @property
    def nodes(self) -> np.ndarray:
        """Quadrature grid: the tabulation grid, or +/-12 widths at width/16 for a Gaussian."""
        if self.kind == "gaussian":
            return self.width * np.linspace(-12.0, 12.0, 385)
        return self.origin + self.spacing * np.arange(len(self.samples))

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        if self.kind == "gaussian":
            return np.exp(-(s * s) / (2 * self.width**2))
        return np.interp(s, self.nodes, np.asarray(self.samples), left=0.0, right=0.0)

    def to_dict(self) -> dict:
        if self.kind == "gaussian":
            return {"kind": "gaussian", "width": self.width}
        return {"kind": "user_tabulated", "origin": self.origin, "spacing": self.spacing,
                "n_samples": len(self.samples)}


def kernel_spectrum(kernel: SamplerKernel, omega: float) -> tuple[float, float]:
    """Real and imaginary parts of ``int psi(s) exp(-i omega s) ds`` by the trapezoid rule.

    Raises :class:`SpectrumHoleError` where ``a^2 + b^2 < 1e-12``.
    """
    x = kernel.nodes
    y = kernel(x)
    a = float(np.trapezoid(y * np.cos(omega * x), x))
    b = float(-np.trapezoid(y * np.sin(omega * x), x))
    mag2 = a * a + b * b
    if mag2 < HOLE_THRESHOLD:
        raise SpectrumHoleError(omega, mag2)
    return a, b


@dataclass
class Expansion:
    """``sum_j c_j * base(u + d_j)``."""

    coefficients: np.ndarray
    shifts: np.ndarray
    base: SamplerKernel
    target: dict
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.coefficients = np.asarray(self.coefficients, dtype=float)
        self.shifts = np.asarray(self.shifts, dtype=float)
        if self.coefficients.shape != self.shifts.shape:
            raise ValueError("coefficient and shift arrays differ in length")

    def __len__(self):
        return self.coefficients.size

    def __call__(self, u, chunk: int = 512) -> np.ndarray:
        u = np.atleast_1d(np.asarray(u, dtype=float))
        out = np.empty_like(u)
        for k in range(0, u.size, chunk):
            uu = u[k:k + chunk]
            out[k:k + chunk] = self.base(uu[:, None] + self.shifts[None, :]) @ self.coefficients
        return out


def _midpoints(half_range, n):
    step = 2.0 * half_range / n
    return -half_range + (np.arange(n) + 0.5) * step, step


def cosine_expansion(omega0: float, kernel: SamplerKernel, n_points: int = 512,
                     half_range: float = 8.0, phase: float = 0.0) -> Expansion:
    """Replicas of ``kernel`` summing to ``cos(omega0 * u + phase)``.

    The Fourier integral of the shifted kernel is discretised with the
    midpoint rule on ``x in [-half_range, half_range]``; node ``x_j`` becomes
    the shift ``x_j / omega0``.  With ``psi_hat(omega0) = a + i b``,

        cos(omega0 u) ~ sum_j (dx/omega0) (a cos x_j - b sin x_j) / (a^2 + b^2) psi(u + x_j/omega0).

    Coefficients are emitted as ``N`` cosine-branch entries followed by ``N``
    sine-branch entries (all zero for an even kernel).  ``phase = -pi/2``
    gives ``sin``.
    """
    if not omega0 > 0:
        raise DomainError(f"omega0 must be > 0, got {omega0!r}")
    if int(n_points) < 2:
        raise DomainError(f"n_points must be >= 2, got {n_points!r}")
    if not half_range > 0:
        raise DomainError(f"half_range must be > 0, got {half_range!r}")
    a, b = kernel_spectrum(kernel, omega0)
    x, dx = _midpoints(half_range, int(n_points))
    scale = dx / omega0 / (a * a + b * b)
    shifts = x / omega0 + phase / omega0
    coeffs = np.concatenate([scale * a * np.cos(x), -scale * b * np.sin(x)])
    return Expansion(coeffs, np.concatenate([shifts, shifts]), kernel,
                     {"kind": "harmonic", "omega0": omega0, "phase": phase},
                     {"n_points": int(n_points), "half_range": half_range, "spectrum": [a, b]})


def constant_expansion(kernel: SamplerKernel, n_points: int, half_range: float) -> Expansion:
    """Replicas summing to the constant 1 (the zero-frequency harmonic)."""
    a0, _ = kernel_spectrum(kernel, 0.0)
    d, dd = _midpoints(half_range, int(n_points))
    return Expansion(np.full(d.size, dd / a0), d, kernel, {"kind": "constant"},
                     {"n_points": int(n_points), "half_range": half_range, "spectrum": [a0, 0.0]})


def sup_error(expansion: Expansion, target, lo: float, hi: float, n: int = 4001) -> float:
    u = np.linspace(lo, hi, n)
    return float(np.max(np.abs(expansion(u) - target(u))))


def _series_coefficients(target: SamplerKernel, window: float, k: int):
    w = k * math.pi / window
    if target.kind == "user_tabulated":
        # piecewise-linear target: dense trapezoid instead of adaptive quadrature
        s = np.linspace(-window, window, 200_001)
        y = target(s)
        ac = float(np.trapezoid(y * np.cos(w * s), s))
        bs = float(np.trapezoid(y * np.sin(w * s), s)) if k else 0.0
    else:
        opts = dict(limit=400, epsabs=1e-14, epsrel=1e-12)
        ac = integrate.quad(lambda s: float(target(s)) * math.cos(w * s), -window, window, **opts)[0]
        bs = 0.0  # even target
    norm = 2 * window if k == 0 else window
    return w, ac / norm, bs / norm


def emulate_sampler(target: SamplerKernel, base: SamplerKernel, n_harmonics: int = 6,
                    n_points: int = 1024, half_range: float = 12.0, window: float = 3.0,
                    eval_half_width: float = 2.0) -> tuple[Expansion, float]:
    """Approximate ``target`` by shifted, weighted copies of ``base``.

    ``target`` is first written as a truncated Fourier series on
    ``[-window, window]`` (harmonics ``k * pi / window``, ``k < n_harmonics``);
    each harmonic is then expanded against ``base`` with shifts covering
    ``[-half_range, half_range]``.  Returns the combined expansion and its sup
    error on ``[-eval_half_width, eval_half_width]``.

    Accuracy is bounded by the base spectrum: high harmonics are divided by
    ``|psi_hat(omega)|^2`` and a spectrum hole stops the construction.
    """
    if int(n_harmonics) < 1:
        raise DomainError(f"n_harmonics must be >= 1, got {n_harmonics!r}")
    if target == base:
        exp = Expansion([1.0], [0.0], base, {"kind": "identity", "target": target.to_dict()},
                        {"n_harmonics": int(n_harmonics)})
        return exp, sup_error(exp, target, -eval_half_width, eval_half_width)

    parts = []
    used = []
    for k in range(int(n_harmonics)):
        w, ak, bk = _series_coefficients(target, window, k)
        if k == 0:
            e = constant_expansion(base, n_points, half_range)
            parts.append((ak * e.coefficients, e.shifts))
        else:
            e = cosine_expansion(w, base, n_points, w * half_range)
            parts.append((ak * e.coefficients, e.shifts))
            if bk != 0.0:
                e = cosine_expansion(w, base, n_points, w * half_range, phase=-math.pi / 2)
                parts.append((bk * e.coefficients, e.shifts))
        used.append({"omega": w, "cos": ak, "sin": bk})
    exp = Expansion(np.concatenate([c for c, _ in parts]), np.concatenate([d for _, d in parts]),
                    base, {"kind": "emulated", "target": target.to_dict()},
                    {"n_harmonics": int(n_harmonics), "n_points": int(n_points),
                     "half_range": half_range, "window": window, "harmonics": used})
    err = sup_error(exp, target, -eval_half_width, eval_half_width)
    exp.meta["sup_error"] = err
    return exp, err
