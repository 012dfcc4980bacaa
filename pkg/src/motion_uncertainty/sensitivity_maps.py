"""From uncertainty to predicted sensitivity.

Preference is the reciprocal of uncertainty scaled to a maximum of 1.  Speed
priors enter through a Gaussian kernel in log-speed around the sensor's tuned
speed ``S/T``, on top of a prior-independent baseline allocation:

    w(T, S) = (baseline + sum_v p(v) exp(-(ln(S/T) - ln v)^2 / (2 beta^2))) / (1 + baseline)

and the sensitivity map is ``w / U`` normalised to unit sum over the grid
(the total amount of resources is fixed).  Without the baseline the ratio of
two such maps is a pure exponential in ``ln(S/T)`` and cannot form a focus.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .contours import index_to_ts, march
from .errors import DomainError, GridMismatchError
from .optimal_sets import Curve, SpeedPrior, _snapped
from .uncertainty_core import (
    GridSpec,
    ScalarField,
    UncertaintyWeights,
    _positive,
    spatiotemporal_uncertainty,
)

DEFAULT_BETA = 0.5
DEFAULT_BASELINE = 0.5


class RegimeLabel(str, enum.Enum):
    COUPLING = "coupling"
    TRADEOFF = "tradeoff"
    STATIONARY_T = "stationary_t"
    STATIONARY_S = "stationary_s"
    MINIMUM = "minimum"


@dataclass(frozen=True)
class AdaptationConfig:
    prior_a: SpeedPrior
    prior_b: SpeedPrior
    beta: float = DEFAULT_BETA
    grid: GridSpec = field(default_factory=GridSpec)
    weights: UncertaintyWeights = field(default_factory=UncertaintyWeights)
    baseline: float = DEFAULT_BASELINE

    def __post_init__(self):
        if not self.beta > 0:
            raise DomainError(f"beta must be > 0, got {self.beta!r}")
        if not self.baseline >= 0:
            raise DomainError(f"baseline must be >= 0, got {self.baseline!r}")


def preference_field(u_field: ScalarField) -> ScalarField:
    """``u_min / u``: order-reversing, equal to 1 at the field minimum."""
    u = u_field.values
    if np.any(u <= 0):
        raise DomainError("uncertainty values must be strictly positive")
    return ScalarField(u_field.grid, u.min() / u, label="preference", meta=dict(u_field.meta))


def speed_weight(t, s, prior: SpeedPrior, beta: float = DEFAULT_BETA,
                 baseline: float = DEFAULT_BASELINE, log_speed=None):
    """Prior-driven allocation weight in ``(0, 1]`` for sensors tuned to ``S/T``.

    ``log_speed`` overrides the tuned log-speed ``ln(S/T)`` (used for partial
    speed integration in the simulation).
    """
    r = np.log(np.asarray(s) / np.asarray(t)) if log_speed is None else np.asarray(log_speed)
    if prior.kind == "delta":
        mix = np.exp(-(r - math.log(prior.v0)) ** 2 / (2 * beta**2))
    elif prior.kind == "histogram":
        mix = sum(w * np.exp(-(r - math.log(v)) ** 2 / (2 * beta**2)) for v, w in prior.bins)
    else:
        # Gaussian in log-speed convolved with the Gaussian kernel
        var = beta**2 + prior.sigma_log**2
        mix = beta / math.sqrt(var) * np.exp(-(r - prior.mu) ** 2 / (2 * var))
    return (baseline + mix) / (1.0 + baseline)


def sensitivity_map(prior: SpeedPrior, grid: GridSpec, weights: UncertaintyWeights,
                    beta: float = DEFAULT_BETA, baseline: float = DEFAULT_BASELINE) -> ScalarField:
    if not beta > 0:
        raise DomainError(f"beta must be > 0, got {beta!r}")
    t, s = grid.mesh()
    raw = speed_weight(t, s, prior, beta, baseline) / spatiotemporal_uncertainty(t, s, weights)
    return ScalarField(grid, raw / raw.sum(), label="sensitivity", meta={
        "prior": prior.to_dict(), "beta": beta, "baseline": baseline,
        "weights": list(weights.as_tuple()),
    })


def adaptation_change_map(config: AdaptationConfig) -> ScalarField:
    """Percent change ``100 * a / b`` between sensitivity maps for two priors."""
    a = sensitivity_map(config.prior_a, config.grid, config.weights, config.beta, config.baseline)
    b = sensitivity_map(config.prior_b, config.grid, config.weights, config.beta, config.baseline)
    zero = np.argwhere(b.values <= 0)
    if zero.size:
        i, j = zero[0]
        t, s = b.point(i, j)
        raise DomainError(f"sensitivity map b is zero at cell ({i}, {j}) = (T={t:.6g}, S={s:.6g})")
    return ScalarField(config.grid, 100.0 * (a.values / b.values), label="percent", meta={
        "prior_a": config.prior_a.to_dict(), "prior_b": config.prior_b.to_dict(),
        "beta": config.beta, "baseline": config.baseline,
        "weights": list(config.weights.as_tuple()),
    })


def max_sensitivity_set(prior: SpeedPrior, grid: GridSpec, weights: UncertaintyWeights,
                        beta: float = DEFAULT_BETA, baseline: float = DEFAULT_BASELINE) -> Curve:
    """Per temporal column, the spatial interval of peak sensitivity (ties -> smaller S)."""
    sens = sensitivity_map(prior, grid, weights, beta, baseline)
    j = np.argmax(sens.values, axis=1)
    t = grid.t_axis
    s = grid.s_axis[j]
    return Curve(np.column_stack([t, s]), "max_sensitivity", {
        "prior": prior.to_dict(), "beta": beta, "baseline": baseline,
        "weights": list(weights.as_tuple()), "column_index": j.tolist(),
    })


def frequency_coordinates(t, s):
    """Half-period mapping of intervals to frequencies, ``f = 1 / (2 * interval)``."""
    return 0.5 / np.asarray(t, dtype=float), 0.5 / np.asarray(s, dtype=float)


def _gradient_signs(t, s, weights):
    l1, l2, l3, l4 = weights.as_tuple()
    g_t = _snapped(l3 - l4 / t**2, l3 + l4 / t**2)
    g_s = _snapped(l1 - l2 / s**2, l1 + l2 / s**2)
    return np.sign(g_t), np.sign(g_s)


def regime_classify(t, s, weights: UncertaintyWeights):
    """Regime of the equivalence contour through ``(t, s)``.

    The contour slope is ``dS/dT = -(dU/dT)/(dU/dS)``: positive slope is
    space-time coupling, negative slope is tradeoff.  Array input returns an
    array of label strings.
    """
    t = _positive("t", t)
    s = _positive("s", s)
    st, ss = _gradient_signs(t, s, weights)
    labels = np.where(
        (st == 0) & (ss == 0), RegimeLabel.MINIMUM.value,
        np.where(st == 0, RegimeLabel.STATIONARY_T.value,
                 np.where(ss == 0, RegimeLabel.STATIONARY_S.value,
                          np.where(st * ss < 0, RegimeLabel.COUPLING.value,
                                   RegimeLabel.TRADEOFF.value))))
    if labels.ndim == 0:
        return RegimeLabel(str(labels))
    return labels


def _resolvable_floor(values, i, j):
    """Largest rise from the argmin cell to its 8 neighbours."""
    nb = values[max(i - 1, 0):i + 2, max(j - 1, 0):j + 2]
    return float(nb.max() - values[i, j])


def equivalence_contours(u_field: ScalarField, levels) -> list[Curve]:
    """Level sets of an uncertainty field.

    Each returned curve carries ``meta["level"]``, ``meta["closed"]`` and
    ``meta["status"]``: ``"ok"``, ``"degenerate"`` (level at the resolved
    minimum: one point at the minimum cell) or ``"below_minimum"`` (no points).
    """
    grid, values = u_field.grid, u_field.values
    fmin = float(values.min())
    i0, j0 = u_field.argmin()
    curves = []
    for level in levels:
        level = float(level)
        if not math.isfinite(level):
            raise DomainError(f"contour level must be finite, got {level!r}")
        if level <= fmin:
            if fmin - level <= _resolvable_floor(values, i0, j0):
                pt = index_to_ts(grid, [(i0, j0)])
                curves.append(Curve(pt, "equivalence_contour",
                                    {"level": level, "closed": True, "status": "degenerate"}))
            else:
                curves.append(Curve(np.zeros((0, 2)), "equivalence_contour",
                                    {"level": level, "closed": False, "status": "below_minimum"}))
            continue
        for verts, closed in march(values, level):
            curves.append(Curve(index_to_ts(grid, verts), "equivalence_contour",
                                {"level": level, "closed": closed, "status": "ok"}))
    return curves


def check_same_grid(a: ScalarField, b: ScalarField):
    if a.grid != b.grid:
        raise GridMismatchError(f"grids differ: {a.grid} vs {b.grid}")
