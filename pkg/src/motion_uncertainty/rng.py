"""Vectorised Philox4x64-10 counter-based generator.

Every draw is a pure function of ``(key, counter)``, so each sensor owns an
independent stream addressed by ``(sensor_id, epoch, purpose)`` and results do
not depend on evaluation order or on how sensors are split across workers.
Output is bit-compatible with ``numpy.random.Philox`` (which increments its
counter before producing the first block).
"""
from __future__ import annotations

import numpy as np

_M0 = np.uint64(0xD2E7470EE14C6C93)
_M1 = np.uint64(0xCA5A826395121157)
_W0 = np.uint64(0x9E3779B97F4A7C15)
_W1 = np.uint64(0xBB67AE8584CAA73B)
_LO32 = np.uint64(0xFFFFFFFF)
_S32 = np.uint64(32)
_S11 = np.uint64(11)
_TWO_M53 = 2.0**-53

PURPOSE_INIT = 0
PURPOSE_STEP = 1


def _mulhilo(a, b):
    a_lo, a_hi = a & _LO32, a >> _S32
    b_lo, b_hi = b & _LO32, b >> _S32
    ll, lh, hl, hh = a_lo * b_lo, a_lo * b_hi, a_hi * b_lo, a_hi * b_hi
    mid = (ll >> _S32) + (lh & _LO32) + (hl & _LO32)
    hi = hh + (lh >> _S32) + (hl >> _S32) + (mid >> _S32)
    return hi, a * b


def philox4x64(counter, key, rounds: int = 10):
    """Philox4x64 block function; ``counter`` is 4 and ``key`` 2 uint64 arrays (broadcast)."""
    c0, c1, c2, c3 = (np.asarray(c, dtype=np.uint64) for c in counter)
    k0, k1 = (np.asarray(k, dtype=np.uint64) for k in key)
    c0, c1, c2, c3 = np.broadcast_arrays(c0, c1, c2, c3)
    with np.errstate(over="ignore"):
        for r in range(rounds):
            if r:
                k0 = k0 + _W0
                k1 = k1 + _W1
            hi0, lo0 = _mulhilo(_M0, c0)
            hi1, lo1 = _mulhilo(_M1, c2)
            c0, c1, c2, c3 = hi1 ^ c1 ^ k0, lo1, hi0 ^ c3 ^ k1, lo0
    return c0, c1, c2, c3


def _key(seed: int):
    seed = int(seed) & ((1 << 128) - 1)
    return np.uint64(seed & 0xFFFFFFFFFFFFFFFF), np.uint64(seed >> 64)


def _block(seed, ids, epoch, purpose):
    ids = np.asarray(ids, dtype=np.uint64)
    n = ids.shape
    return philox4x64(
        (ids, np.full(n, epoch, np.uint64), np.full(n, purpose, np.uint64), np.zeros(n, np.uint64)),
        _key(seed),
    )


def to_unit(x):
    """Top 53 bits of a uint64 as a double in ``[0, 1)``."""
    return (x >> _S11).astype(np.float64) * _TWO_M53


def stream_uniforms(seed: int, ids, epoch: int, purpose: int):
    """Four independent uniforms in ``[0, 1)`` per stream id."""
    return tuple(to_unit(x) for x in _block(seed, ids, epoch, purpose))


def stream_normals(seed: int, ids, epoch: int, purpose: int):
    """A pair of independent standard normals per stream id (Box-Muller)."""
    x0, x1, _, _ = _block(seed, ids, epoch, purpose)
    u1 = ((x0 >> _S11).astype(np.float64) + 1.0) * _TWO_M53  # (0, 1]
    u2 = to_unit(x1)
    r = np.sqrt(-2.0 * np.log(u1))
    theta = 2.0 * np.pi * u2
    return r * np.cos(theta), r * np.sin(theta)
