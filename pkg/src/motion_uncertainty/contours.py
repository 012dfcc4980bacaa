"""Marching-squares level sets on a log-spaced grid.

Crossings are interpolated linearly in log coordinates along cell edges.
Segments are chained through shared edges; open chains start at the
boundary endpoint owned by the lowest cell, closed loops at their lowest cell.
"""
from __future__ import annotations

import math

import numpy as np

# corner bits: c0=(i,j) 1, c1=(i+1,j) 2, c2=(i+1,j+1) 4, c3=(i,j+1) 8
# edges: e0 c0-c1, e1 c1-c2, e2 c3-c2, e3 c0-c3
_TABLE = {
    1: [(3, 0)], 2: [(0, 1)], 3: [(3, 1)], 4: [(1, 2)], 6: [(0, 2)], 7: [(3, 2)],
    8: [(2, 3)], 9: [(0, 2)], 11: [(1, 2)], 12: [(1, 3)], 13: [(0, 1)], 14: [(3, 0)],
}
# saddles, keyed by (case, centre_above)
_SADDLE = {
    (5, True): [(0, 1), (2, 3)], (5, False): [(3, 0), (1, 2)],
    (10, True): [(3, 0), (1, 2)], (10, False): [(0, 1), (2, 3)],
}


def _edge_key(i, j, e):
    return (("i", i, j), ("j", i + 1, j), ("i", i, j + 1), ("j", i, j))[e]


def _crossing(values, key, level):
    axis, i, j = key
    a = values[i, j]
    b = values[i + 1, j] if axis == "i" else values[i, j + 1]
    frac = (level - a) / (b - a)
    return (i + frac, float(j)) if axis == "i" else (float(i), j + frac)


def march(values: np.ndarray, level: float) -> list[tuple[list[tuple[float, float]], bool]]:
    """Polylines of ``values == level`` in fractional index coordinates.

    Returns a list of ``(vertices, closed)``.
    """
    above = values > level
    n_i, n_j = values.shape
    code = (above[:-1, :-1] * 1 + above[1:, :-1] * 2 + above[1:, 1:] * 4 + above[:-1, 1:] * 8)
    segments = []
    for i, j in zip(*np.nonzero((code > 0) & (code < 15))):
        c = int(code[i, j])
        if c in (5, 10):
            centre = 0.25 * (values[i, j] + values[i + 1, j] + values[i + 1, j + 1] + values[i, j + 1])
            pairs = _SADDLE[(c, bool(centre > level))]
        else:
            pairs = _TABLE[c]
        for ea, eb in pairs:
            segments.append((_edge_key(i, j, ea), _edge_key(i, j, eb)))

    by_edge: dict = {}
    for k, (a, b) in enumerate(segments):
        by_edge.setdefault(a, []).append(k)
        by_edge.setdefault(b, []).append(k)

    used = [False] * len(segments)
    lines = []

    def walk(k, start):
        keys = [start]
        cur = start
        while True:
            used[k] = True
            a, b = segments[k]
            nxt = b if a == cur else a
            keys.append(nxt)
            cur = nxt
            others = [m for m in by_edge[cur] if not used[m]]
            if not others:
                return keys
            k = others[0]

    # open chains first, from boundary endpoints in cell order
    for k, (a, b) in enumerate(segments):
        if used[k]:
            continue
        for end in (a, b):
            if len(by_edge[end]) == 1:
                keys = walk(k, end)
                lines.append(([_crossing(values, key, level) for key in keys], False))
                break
    for k, (a, b) in enumerate(segments):
        if used[k]:
            continue
        keys = walk(k, a)
        closed = keys[0] == keys[-1]
        if closed:
            keys = keys[:-1]
        lines.append(([_crossing(values, key, level) for key in keys], closed))
    return lines


def index_to_ts(grid, points):
    """Map fractional indices to ``(T, S)`` on the log grid."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    lt = math.log(grid.t_min) + pts[:, 0] * grid.log_step_t
    ls = math.log(grid.s_min) + pts[:, 1] * grid.log_step_s
    return np.column_stack([np.exp(lt), np.exp(ls)])
