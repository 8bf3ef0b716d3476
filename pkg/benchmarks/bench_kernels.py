"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import time

import numpy as np

from sqnl import _kernels
from sqnl.dither import DitherConfig, dither_draws
from sqnl.generator import GeneratorConfig, domain, make_sequence


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def sweep_case(R, N):
    cfg = GeneratorConfig(R, N)
    n2 = 2 * domain(R)
    u2 = np.asarray(make_sequence(cfg).twice, dtype=np.int64)
    lo = np.full(n2.shape, -2 * cfg.u_max, dtype=np.int64)
    return n2, u2, lo, -lo, np.int64(-2 * cfg.M), np.int64(2 * cfg.M)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels.generator_sums_numba is None:
        raise SystemExit("numba is not installed; nothing to compare")

    rows = []
    for R, N in [(8, 8), (8, 128), (12, 64), (12, 2048), (16, 512)]:
        a = sweep_case(R, N)
        _kernels.generator_sums_numba(*a)  # compile
        t_np, r_np = best_of(lambda: _kernels.generator_sums_numpy(*a), args.repeat)
        t_nb, r_nb = best_of(lambda: _kernels.generator_sums_numba(*a), args.repeat)
        assert np.array_equal(r_np, r_nb)
        rows.append((f"generator sweep R={R} N={N}", t_np, t_nb))

    for points, m in [(201, 1024), (201, 16384)]:
        xs = np.linspace(-1.5, 1.5, points)
        us = dither_draws(points, DitherConfig(oversample=m))
        _kernels.dither_means_numba(xs, us, 1.0, 2.0)
        t_np, r_np = best_of(lambda: _kernels.dither_means_numpy(xs, us, 1.0, 2.0), args.repeat)
        t_nb, r_nb = best_of(lambda: _kernels.dither_means_numba(xs, us, 1.0, 2.0), args.repeat)
        assert np.allclose(r_np, r_nb, rtol=0, atol=1e-12)
        rows.append((f"dither mean {points}x{m}", t_np, t_nb))

    print(f"{'kernel':<28}{'numpy ms':>10}{'numba ms':>10}{'speedup':>9}")
    for name, t_np, t_nb in rows:
        print(f"{name:<28}{t_np * 1e3:>10.2f}{t_nb * 1e3:>10.2f}{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
