"""Sets of minimal uncertainty across speeds.

A sensor ``(T, S)`` measuring speed ``v`` is optimal when the gradient of the
uncertainty functional is orthogonal to the speed direction,

    dU/dS * v + dU/dT = 0.

With the sensor's own speed ``v = S/T`` this gives the *local* optimal set;
with every sensor pooled to the expected stimulus speed ``v_e`` it gives the
*integral* optimal set.  Both have closed forms.  A geometric blend of the two
speeds is solved by bisection.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError
from .uncertainty_core import UncertaintyWeights, _positive

RESIDUAL_EPS = 1e-30
_SNAP = 4 * np.finfo(float).eps


@dataclass(frozen=True)
class SpeedPrior:
    """Distribution of stimulus speed.

    Use the ``delta``, ``log_normal`` and ``histogram`` constructors rather than
    building one directly.
    """

    kind: str
    v0: float | None = None
    mu: float | None = None
    sigma_log: float | None = None
    bins: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        if self.kind == "delta":
            if self.v0 is None or not (math.isfinite(self.v0) and self.v0 > 0):
                raise ConfigError("prior", f"delta speed must be > 0, got {self.v0!r}")
        elif self.kind == "log_normal":
            if self.mu is None or not math.isfinite(self.mu):
                raise ConfigError("prior", f"log-normal mu must be finite, got {self.mu!r}")
            if self.sigma_log is None or not (math.isfinite(self.sigma_log) and self.sigma_log > 0):
                raise ConfigError("prior", f"sigma_log must be > 0, got {self.sigma_log!r}")
        elif self.kind == "histogram":
            if not self.bins:
                raise ConfigError("prior", "histogram needs at least one bin")
            total = 0.0
            for v, w in self.bins:
                if not (math.isfinite(v) and v > 0):
                    raise ConfigError("prior", f"bin centre must be > 0, got {v!r}")
                if not (math.isfinite(w) and w >= 0):
                    raise ConfigError("prior", f"bin weight must be >= 0, got {w!r}")
                total += w
            if total <= 0:
                raise ConfigError("prior", "histogram weights are all zero")
            # normalise so equal priors compare equal; skip when already normalised
            # so that a serialised prior reloads bit-for-bit
            if abs(total - 1.0) > 1e-12:
                object.__setattr__(self, "bins", tuple((float(v), float(w) / total) for v, w in self.bins))
        else:
            raise ConfigError("prior", f"unknown prior kind {self.kind!r}")

    @classmethod
    def delta(cls, v0: float) -> "SpeedPrior":
        return cls("delta", v0=float(v0))

    @classmethod
    def log_normal(cls, mu: float, sigma_log: float) -> "SpeedPrior":
        return cls("log_normal", mu=float(mu), sigma_log=float(sigma_log))

    @classmethod
    def histogram(cls, bins) -> "SpeedPrior":
        return cls("histogram", bins=tuple((float(v), float(w)) for v, w in bins))

    def to_dict(self) -> dict:
        if self.kind == "delta":
            return {"kind": "delta", "v0": self.v0}
        if self.kind == "log_normal":
            return {"kind": "log_normal", "mu": self.mu, "sigma_log": self.sigma_log}
        return {"kind": "histogram", "bins": [list(b) for b in self.bins]}

    @classmethod
    def from_dict(cls, d: dict) -> "SpeedPrior":
        kind = d.get("kind")
        if kind == "delta":
            return cls.delta(d["v0"])
        if kind == "log_normal":
            return cls.log_normal(d["mu"], d["sigma_log"])
        if kind == "histogram":
            return cls.histogram(d["bins"])
        raise ConfigError("prior", f"unknown prior kind {kind!r}")


@dataclass
class Curve:
    """Ordered ``(T, S)`` points plus metadata."""

    points: np.ndarray
    kind: str
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float).reshape(-1, 2)

    @property
    def t(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def s(self) -> np.ndarray:
        return self.points[:, 1]

    def __len__(self):
        return len(self.points)


def expected_speed(prior: SpeedPrior, n_points: int = 4096) -> float:
    """Mean stimulus speed under ``prior``.

    The log-normal case is integrated numerically (trapezoid rule in log-speed)
    over a window that covers +/-8 sigma of the density and of the
    speed-weighted density.
    """
    if prior.kind == "delta":
        return prior.v0
    if prior.kind == "histogram":
        return math.fsum(v * w for v, w in prior.bins)
    mu, sig = prior.mu, prior.sigma_log
    y = np.linspace(mu - 8 * sig, mu + sig * sig + 8 * sig, n_points)
    density = np.exp(-0.5 * ((y - mu) / sig) ** 2) / (sig * math.sqrt(2 * math.pi))
    return float(np.trapezoid(density * np.exp(y), y))


def _snapped(diff, scale):
    # zero out components that are pure cancellation noise
    return np.where(np.abs(diff) <= _SNAP * scale, 0.0, diff)


def orthogonality_residual(t, s, v, weights: UncertaintyWeights):
    """Normalised scalar product of the uncertainty gradient and the speed direction.

    Zero on the optimal set for speed ``v``; the sign tells which side of the
    set ``(t, s)`` lies on.
    """
    t = _positive("t", t)
    s = _positive("s", s)
    v = _positive("v", v)
    l1, l2, l3, l4 = weights.as_tuple()
    g_t = _snapped(l3 - l4 / t**2, l3 + l4 / t**2)
    g_s = _snapped(l1 - l2 / s**2, l1 + l2 / s**2)
    num = g_s * v + g_t
    res = num / (np.abs(g_s * v) + np.abs(g_t) + RESIDUAL_EPS)
    return float(res) if np.ndim(res) == 0 else res


def _check_samples(t_samples):
    t = _positive("t_samples", np.atleast_1d(np.asarray(t_samples, dtype=float)))
    if t.size > 1 and np.any(np.diff(t) <= 0):
        raise DomainError("t_samples must be strictly increasing")
    return t


def local_optimal_set(weights: UncertaintyWeights, t_samples) -> Curve:
    """Optimal set when each sensor measures its own speed ``S/T``.

    Solves ``l1*S - l2/S + (l3*T - l4/T) = 0`` for the positive root, using the
    cancellation-free branch of the quadratic formula.
    """
    t = _check_samples(t_samples)
    l1, l2, l3, l4 = weights.as_tuple()
    b = l3 * t - l4 / t
    root = np.sqrt(b * b + 4 * l1 * l2)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(b >= 0, 2 * l2 / (b + root), (root - b) / (2 * l1))
    res = orthogonality_residual(t, s, s / t, weights)
    return Curve(np.column_stack([t, s]), "local_optimal", {
        "weights": list(weights.as_tuple()),
        "omitted": 0,
        "residual_max": float(np.max(np.abs(res))) if t.size else 0.0,
    })


def asymptotes(weights: UncertaintyWeights, v_e: float) -> tuple[float, float]:
    """``(T_min, S_inf)``: vertical and horizontal asymptotes of the integral set."""
    if not v_e > 0:
        raise DomainError(f"v_e must be > 0, got {v_e!r}")
    l1, l2, l3, l4 = weights.as_tuple()
    return math.sqrt(l4 / (v_e * l1 + l3)), math.sqrt(v_e * l2 / (v_e * l1 + l3))


def conserved_quantity(t, s, weights: UncertaintyWeights, v_e: float):
    """``v_e*l2/S^2 + l4/T^2``, constant (``= v_e*l1 + l3``) along the integral set."""
    l1, l2, l3, l4 = weights.as_tuple()
    return v_e * l2 / np.asarray(s) ** 2 + l4 / np.asarray(t) ** 2


def integral_optimal_set(weights: UncertaintyWeights, v_e: float, t_samples) -> Curve:
    """Optimal set when every sensor is driven by the expected speed ``v_e``.

    Samples with ``T <= T_min`` have no solution; they are dropped and counted
    in ``meta["omitted"]``.
    """
    if not v_e > 0:
        raise DomainError(f"v_e must be > 0, got {v_e!r}")
    t = _check_samples(t_samples)
    l1, l2, l3, l4 = weights.as_tuple()
    t_min, s_inf = asymptotes(weights, v_e)
    denom = v_e * l1 + l3 - l4 / t**2
    keep = (t > t_min) & (denom > 0)
    tk = t[keep]
    s = np.sqrt(v_e * l2 / denom[keep])
    res = orthogonality_residual(tk, s, v_e, weights) if tk.size else np.zeros(0)
    return Curve(np.column_stack([tk, s]), "integral_optimal", {
        "weights": list(weights.as_tuple()),
        "v_e": v_e,
        "t_min": t_min,
        "s_inf": s_inf,
        "omitted": int(np.count_nonzero(~keep)),
        "residual_max": float(np.max(np.abs(res))) if tk.size else 0.0,
    })


def _bisect_log_s(t, v_e, gamma, weights, iters=200):
    """Root in ln S of the blended orthogonality condition at fixed ``t``.

    The condition is increasing in S, so a sign bracket plus bisection is
    enough.  Returns ``nan`` when no root exists.
    """
    l1, l2, l3, l4 = weights.as_tuple()
    g_t = l3 - l4 / (t * t)

    def f(y):
        s = math.exp(y)
        v = math.exp((1 - gamma) * (y - math.log(t)) + gamma * math.log(v_e))
        return v * (l1 - l2 / (s * s)) + g_t

    y0 = 0.5 * math.log(l2 / l1)
    lo, hi = y0 - 1.0, y0 + 1.0
    while f(lo) > 0:
        lo -= 2 * (hi - lo)
        if lo < -300:
            return math.nan
    while f(hi) < 0:
        hi += 2 * (hi - lo)
        if hi > 300:
            return math.nan
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def blend_optimal_set(weights: UncertaintyWeights, v_e: float, gamma: float, t_samples) -> Curve:
    """Optimal set under partial speed integration.

    The speed seen by sensor ``(T, S)`` is ``(S/T)**(1-gamma) * v_e**gamma``;
    ``gamma=0`` reproduces the local set and ``gamma=1`` the integral set.
    """
    if not v_e > 0:
        raise DomainError(f"v_e must be > 0, got {v_e!r}")
    if not 0.0 <= gamma <= 1.0:
        raise DomainError(f"gamma must lie in [0, 1], got {gamma!r}")
    t = _check_samples(t_samples)
    ys = np.array([_bisect_log_s(float(ti), v_e, gamma, weights) for ti in t])
    keep = np.isfinite(ys)
    tk, s = t[keep], np.exp(ys[keep])
    v = (s / tk) ** (1 - gamma) * v_e**gamma
    res = orthogonality_residual(tk, s, v, weights) if tk.size else np.zeros(0)
    return Curve(np.column_stack([tk, s]), "blend_optimal", {
        "weights": list(weights.as_tuple()),
        "v_e": v_e,
        "gamma": gamma,
        "omitted": int(np.count_nonzero(~keep)),
        "residual_max": float(np.max(np.abs(res))) if tk.size else 0.0,
    })
