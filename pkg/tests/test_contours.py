import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from motion_uncertainty.contours import index_to_ts, march
from motion_uncertainty.uncertainty_core import GridSpec


def edge_value(values, p):
    """Linear interpolation of ``values`` at a vertex lying on a cell edge."""
    i, j = p
    if float(i).is_integer():
        j0 = int(math.floor(j))
        j0 = min(j0, values.shape[1] - 2)
        f = j - j0
        return values[int(i), j0] * (1 - f) + values[int(i), j0 + 1] * f
    assert float(j).is_integer(), "vertex is not on a cell edge"
    i0 = min(int(math.floor(i)), values.shape[0] - 2)
    f = i - i0
    return values[i0, int(j)] * (1 - f) + values[i0 + 1, int(j)] * f


def bowl(n=41):
    x = np.linspace(-1, 1, n)
    return x[:, None] ** 2 + x[None, :] ** 2


def test_single_closed_loop_around_bowl():
    v = bowl()
    lines = march(v, 0.5)
    assert len(lines) == 1
    verts, closed = lines[0]
    assert closed
    # radius in index units: sqrt(0.5) * 20
    pts = np.array(verts) - 20.0
    r = np.hypot(pts[:, 0], pts[:, 1])
    np.testing.assert_allclose(r, math.sqrt(0.5) * 20, rtol=0.01)


def test_open_line_from_plane():
    v = np.add.outer(np.arange(5.0), np.zeros(4))  # increases along i only
    lines = march(v, 2.5)
    assert len(lines) == 1
    verts, closed = lines[0]
    assert not closed
    assert all(p[0] == 2.5 for p in verts)
    assert sorted(p[1] for p in verts) == [0.0, 1.0, 2.0, 3.0]


def test_no_crossing():
    assert march(bowl(), 10.0) == []
    assert march(bowl(), -1.0) == []


def _cut_corner(segment):
    """Corner of the unit cell that a two-vertex segment separates from the rest."""
    on_i0 = [p for p in segment if p[0] == 0.0]
    on_i1 = [p for p in segment if p[0] == 1.0]
    on_j0 = [p for p in segment if p[1] == 0.0]
    on_j1 = [p for p in segment if p[1] == 1.0]
    i = 0 if on_i0 else 1 if on_i1 else None
    j = 0 if on_j0 else 1 if on_j1 else None
    return i, j


def test_saddle_centre_above_isolates_low_corners():
    # high corners (0,0) and (1,1), centre average 0.5 above the level
    lines = march(np.array([[2.0, -1.0], [-1.0, 2.0]]), 0.0)
    assert len(lines) == 2
    corners = sorted(_cut_corner(v) for v, _ in lines)
    assert corners == [(0, 1), (1, 0)]


def test_saddle_centre_below_isolates_high_corners():
    lines = march(np.array([[1.0, -2.0], [-2.0, 1.0]]), 0.0)
    assert len(lines) == 2
    corners = sorted(_cut_corner(v) for v, _ in lines)
    assert corners == [(0, 0), (1, 1)]


@given(st.integers(0, 2**31 - 1), st.floats(-0.8, 0.8))
def test_vertices_interpolate_to_level(seed, level):
    v = np.random.default_rng(seed).uniform(-1, 1, (12, 9))
    for verts, closed in march(v, level):
        for p in verts:
            assert abs(edge_value(v, p) - level) < 1e-12
        if closed:
            assert len(verts) >= 3


@given(st.integers(0, 2**31 - 1))
def test_every_crossing_edge_is_used_once(seed):
    v = np.random.default_rng(seed).uniform(-1, 1, (10, 10))
    level = 0.1
    above = v > level
    n_edges = int(np.sum(above[1:, :] != above[:-1, :]) + np.sum(above[:, 1:] != above[:, :-1]))
    seen = set()
    for verts, closed in march(v, level):
        for p in verts:
            seen.add((round(p[0], 12), round(p[1], 12)))
    assert len(seen) == n_edges


def test_deterministic():
    v = np.random.default_rng(3).uniform(size=(30, 30))
    assert march(v, 0.5) == march(v.copy(), 0.5)


def test_index_to_ts_on_samples():
    g = GridSpec(0.1, 10, 0.5, 50, 9, 5)
    pts = index_to_ts(g, [(0, 0), (8, 4), (4, 2)])
    np.testing.assert_allclose(pts[0], [0.1, 0.5], rtol=1e-14)
    np.testing.assert_allclose(pts[1], [10, 50], rtol=1e-14)
    np.testing.assert_allclose(pts[2], [g.t_axis[4], g.s_axis[2]], rtol=1e-14)
    # halfway between samples is the geometric mean
    mid = index_to_ts(g, [(0.5, 0.5)])[0]
    np.testing.assert_allclose(mid, [math.sqrt(g.t_axis[0] * g.t_axis[1]),
                                     math.sqrt(g.s_axis[0] * g.s_axis[1])], rtol=1e-14)
