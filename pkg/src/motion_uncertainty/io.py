"""File output: CSV tables, JSON manifests and static SVG renderings.

CSV numbers use 17 significant digits (enough to reload every double
exactly), ``.`` as decimal mark and LF line endings.  JSON is written with
sorted keys and carries no timestamps, so identical inputs give identical
bytes.

SVG colour ramp: 256 steps, obtained by linear interpolation in RGB between
five anchors (dark blue ``#1b0c41``, blue ``#3b528b``, teal ``#21918c``,
green ``#5ec962``, yellow ``#fde725``) and rounding each channel to an
integer.  Step 0 is the field minimum and step 255 the maximum.
"""
from __future__ import annotations

import json
import math
import os
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .optimal_sets import Curve
from .uncertainty_core import GridSpec, ScalarField

_ANCHORS = np.array([
    [0x1B, 0x0C, 0x41],
    [0x3B, 0x52, 0x8B],
    [0x21, 0x91, 0x8C],
    [0x5E, 0xC9, 0x62],
    [0xFD, 0xE7, 0x25],
], dtype=float)


def _build_ramp(n=256):
    pos = np.linspace(0.0, len(_ANCHORS) - 1, n)
    lo = np.minimum(np.floor(pos).astype(int), len(_ANCHORS) - 2)
    frac = (pos - lo)[:, None]
    rgb = _ANCHORS[lo] * (1 - frac) + _ANCHORS[lo + 1] * frac
    return [f"#{r:02x}{g:02x}{b:02x}" for r, g, b in np.rint(rgb).astype(int)]


RAMP = _build_ramp()


def fmt(x) -> str:
    return format(float(x), ".17g")


def ensure_dir(path) -> Path:
    """Create ``path`` (and parents); raises ``OSError`` if that is impossible."""
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    if not os.access(p, os.W_OK):
        raise PermissionError(f"output directory {p} is not writable")
    return p


def write_text(path, text: str) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


def write_csv(path, header, rows) -> Path:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else fmt(v) for v in row))
    return write_text(path, "\n".join(lines) + "\n")


def write_field_csv(path, fld: ScalarField) -> Path:
    """``T,S,value`` rows with T as the slow index."""
    t, s = fld.grid.mesh()
    return write_csv(path, ("T", "S", "value"), zip(t.ravel(), s.ravel(), fld.values.ravel()))


def read_field_csv(path, grid: GridSpec, label: str = "value") -> ScalarField:
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    return ScalarField(grid, data[:, 2].reshape(grid.n_t, grid.n_s), label=label)


def write_curve_csv(path, curve: Curve, extra: dict | None = None) -> Path:
    """``T,S`` rows, plus any extra named columns of the same length."""
    extra = extra or {}
    header = ("T", "S", *extra)
    cols = [curve.t, curve.s, *(np.asarray(v) for v in extra.values())]
    return write_csv(path, header, zip(*cols))


def write_expansion_csv(path, expansion) -> Path:
    return write_csv(path, ("c", "d"), zip(expansion.coefficients, expansion.shifts))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def write_json(path, obj) -> Path:
    return write_text(path, json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n")


def field_to_dict(fld: ScalarField) -> dict:
    g = fld.grid
    return {"label": fld.label, "grid": {"t_min": g.t_min, "t_max": g.t_max, "s_min": g.s_min,
                                         "s_max": g.s_max, "n_t": g.n_t, "n_s": g.n_s},
            "meta": fld.meta}


# -- SVG ----------------------------------------------------------------------

_W, _H, _M = 480, 480, 60


class _Axes:
    """Maps data to pixel coordinates; ``log`` selects log10 scaling per axis."""

    def __init__(self, xlim, ylim, logx=True, logy=True):
        self.logx, self.logy = logx, logy
        self.x0, self.x1 = (self._tx(v) for v in xlim)
        self.y0, self.y1 = (self._ty(v) for v in ylim)
        if self.x1 == self.x0:
            self.x1 = self.x0 + 1.0
        if self.y1 == self.y0:
            self.y1 = self.y0 + 1.0

    def _tx(self, v):
        return math.log10(v) if self.logx else float(v)

    def _ty(self, v):
        return math.log10(v) if self.logy else float(v)

    def px(self, x):
        return _M + (self._tx(x) - self.x0) / (self.x1 - self.x0) * (_W - 2 * _M)

    def py(self, y):
        return _H - _M - (self._ty(y) - self.y0) / (self.y1 - self.y0) * (_H - 2 * _M)


def _n(v):
    return format(v, ".6g")


def _frame(ax: _Axes, xlabel, ylabel, title):
    xlabel, ylabel, title = escape(str(xlabel)), escape(str(ylabel)), escape(str(title))
    out = [f'<rect x="{_M}" y="{_M}" width="{_W - 2 * _M}" height="{_H - 2 * _M}" '
           'fill="none" stroke="black"/>']

    def ticks(lo, hi, log):
        if log:
            return [10.0**k for k in range(math.ceil(lo - 1e-9), math.floor(hi + 1e-9) + 1)]
        return list(np.linspace(lo, hi, 5))

    for v in ticks(ax.x0, ax.x1, ax.logx):
        x = ax.px(v)
        out.append(f'<line x1="{_n(x)}" y1="{_H - _M}" x2="{_n(x)}" y2="{_H - _M + 5}" stroke="black"/>')
        out.append(f'<text x="{_n(x)}" y="{_H - _M + 18}" font-size="11" '
                   f'text-anchor="middle">{v:g}</text>')
    for v in ticks(ax.y0, ax.y1, ax.logy):
        y = ax.py(v)
        out.append(f'<line x1="{_M - 5}" y1="{_n(y)}" x2="{_M}" y2="{_n(y)}" stroke="black"/>')
        out.append(f'<text x="{_M - 8}" y="{_n(y + 4)}" font-size="11" '
                   f'text-anchor="end">{v:g}</text>')
    out.append(f'<text x="{_W / 2}" y="{_H - 15}" font-size="13" text-anchor="middle">{xlabel}</text>')
    out.append(f'<text x="15" y="{_H / 2}" font-size="13" text-anchor="middle" '
               f'transform="rotate(-90 15 {_H / 2})">{ylabel}</text>')
    if title:
        out.append(f'<text x="{_W / 2}" y="30" font-size="14" text-anchor="middle">{title}</text>')
    return out


def _wrap(body):
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
            f'viewBox="0 0 {_W} {_H}">')
    return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *body, "</svg>"]) + "\n"


def _polyline(ax, xs, ys, color, closed=False, width=1.5):
    if len(xs) == 0:
        return []
    if len(xs) == 1:
        return [f'<circle cx="{_n(ax.px(xs[0]))}" cy="{_n(ax.py(ys[0]))}" r="3" fill="{color}"/>']
    pts = " ".join(f"{_n(ax.px(x))},{_n(ax.py(y))}" for x, y in zip(xs, ys))
    tag = "polygon" if closed else "polyline"
    return [f'<{tag} points="{pts}" fill="none" stroke="{color}" stroke-width="{width}"/>']


_CURVE_COLORS = ("#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2")


def field_svg(fld: ScalarField | None, curves=(), points=(), title: str = "",
              grid: GridSpec | None = None) -> str:
    """Log-log (T, S) plot: optional heatmap, curve polylines and marked points."""
    grid = fld.grid if fld is not None else grid
    ax = _Axes((grid.t_min, grid.t_max), (grid.s_min, grid.s_max))
    body = []
    if fld is not None:
        v = fld.values
        lo, hi = float(v.min()), float(v.max())
        k = np.zeros(v.shape, dtype=int) if hi == lo else \
            np.clip(np.floor((v - lo) / (hi - lo) * 256), 0, 255).astype(int)
        lt, ls = np.log(grid.t_axis), np.log(grid.s_axis)
        ht, hs = 0.5 * grid.log_step_t, 0.5 * grid.log_step_s
        for i in range(grid.n_t):
            x0 = ax.px(math.exp(max(lt[i] - ht, lt[0])))
            x1 = ax.px(math.exp(min(lt[i] + ht, lt[-1])))
            for j in range(grid.n_s):
                y0 = ax.py(math.exp(min(ls[j] + hs, ls[-1])))
                y1 = ax.py(math.exp(max(ls[j] - hs, ls[0])))
                body.append(f'<rect x="{_n(x0)}" y="{_n(y0)}" width="{_n(x1 - x0)}" '
                            f'height="{_n(y1 - y0)}" fill="{RAMP[k[i, j]]}"/>')
    for n, c in enumerate(curves):
        color = _CURVE_COLORS[n % len(_CURVE_COLORS)]
        body += _polyline(ax, c.t, c.s, color, closed=bool(c.meta.get("closed", False)))
    for t, s in points:
        body.append(f'<circle cx="{_n(ax.px(t))}" cy="{_n(ax.py(s))}" r="4" fill="red" stroke="black"/>')
    body += _frame(ax, "T (temporal interval)", "S (spatial interval)", title)
    return _wrap(body)


def line_plot_svg(x, ys: dict, logx=False, logy=False, title="", xlabel="x", ylabel="y") -> str:
    """Simple multi-series line plot; ``ys`` maps series names to arrays."""
    x = np.asarray(x, dtype=float)
    allv = np.concatenate([np.asarray(v, dtype=float) for v in ys.values()])
    if logy:
        allv = allv[allv > 0]
    ax = _Axes((x.min(), x.max()), (allv.min(), allv.max()), logx, logy)
    body = []
    for n, (name, y) in enumerate(ys.items()):
        color = _CURVE_COLORS[n % len(_CURVE_COLORS)]
        y = np.asarray(y, dtype=float)
        keep = y > 0 if logy else np.ones(y.shape, bool)
        body += _polyline(ax, x[keep], y[keep], color)
        body.append(f'<text x="{_W - _M - 5}" y="{_M + 15 + 14 * n}" font-size="11" '
                    f'text-anchor="end" fill="{color}">{escape(str(name))}</text>')
    body += _frame(ax, xlabel, ylabel, title)
    return _wrap(body)
