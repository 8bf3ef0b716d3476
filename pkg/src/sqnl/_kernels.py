"""Hot loops: the generator accumulator sweep and the dither clipped-mean.

Each kernel has a numba ``@njit`` body and a pure-numpy twin with identical
results. Set ``SQNL_DISABLE_NUMBA=1`` (or run without numba installed) to
route the public entry points through the numpy versions.
"""
from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("SQNL_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None


def generator_sums_numpy(n2, u2, add_lo2, add_hi2, sub_lo2, sub_hi2):
    """Per-input accumulator of clip(clip(n + U(k), adder) - U(k), sub) over k.

    Everything is in half-LSB units (values doubled) so midpoint-anchored
    offsets stay integral. Adder bounds are per input to allow a per-element
    gate scale.
    """
    s = np.clip(n2[:, None] + u2[None, :], add_lo2[:, None], add_hi2[:, None])
    d = np.clip(s - u2[None, :], sub_lo2, sub_hi2)
    return d.sum(axis=1, dtype=np.int64)


def dither_means_numpy(xs, us, adder_limit, sub_limit):
    s = np.clip(xs[:, None] + us, -adder_limit, adder_limit)
    return np.clip(s - us, -sub_limit, sub_limit).mean(axis=1)


if njit is not None:

    @njit(cache=True)
    def generator_sums_numba(n2, u2, add_lo2, add_hi2, sub_lo2, sub_hi2):
        out = np.empty(n2.shape[0], dtype=np.int64)
        for i in range(n2.shape[0]):
            lo = add_lo2[i]
            hi = add_hi2[i]
            acc = 0
            for k in range(u2.shape[0]):
                s = n2[i] + u2[k]
                if s <= lo:
                    s = lo
                elif s >= hi:
                    s = hi
                d = s - u2[k]
                if d <= sub_lo2:
                    d = sub_lo2
                elif d >= sub_hi2:
                    d = sub_hi2
                acc += d
            out[i] = acc
        return out

    @njit(cache=True)
    def dither_means_numba(xs, us, adder_limit, sub_limit):
        out = np.empty(xs.shape[0], dtype=np.float64)
        m = us.shape[1]
        for i in range(xs.shape[0]):
            acc = 0.0
            for k in range(m):
                u = us[i, k]
                s = xs[i] + u
                if s <= -adder_limit:
                    s = -adder_limit
                elif s >= adder_limit:
                    s = adder_limit
                d = s - u
                if d <= -sub_limit:
                    d = -sub_limit
                elif d >= sub_limit:
                    d = sub_limit
                acc += d
            out[i] = acc / m
        return out

else:  # pragma: no cover
    generator_sums_numba = None
    dither_means_numba = None


USE_NUMBA = njit is not None and not _DISABLED
BACKEND = "numba" if USE_NUMBA else "numpy"


def generator_sums(n2, u2, add_lo2, add_hi2, sub_lo2, sub_hi2):
    n2 = np.ascontiguousarray(n2, dtype=np.int64)
    u2 = np.ascontiguousarray(u2, dtype=np.int64)
    add_lo2 = np.broadcast_to(np.asarray(add_lo2, dtype=np.int64), n2.shape).copy()
    add_hi2 = np.broadcast_to(np.asarray(add_hi2, dtype=np.int64), n2.shape).copy()
    if USE_NUMBA:
        return generator_sums_numba(n2, u2, add_lo2, add_hi2, np.int64(sub_lo2), np.int64(sub_hi2))
    return generator_sums_numpy(n2, u2, add_lo2, add_hi2, sub_lo2, sub_hi2)


def dither_means(xs, us, adder_limit, sub_limit):
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    us = np.ascontiguousarray(us, dtype=np.float64)
    if USE_NUMBA:
        return dither_means_numba(xs, us, float(adder_limit), float(sub_limit))
    return dither_means_numpy(xs, us, adder_limit, sub_limit)
