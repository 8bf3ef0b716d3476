import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sqnl import _kernels

pytestmark = pytest.mark.skipif(_kernels.generator_sums_numba is None, reason="numba not installed")


@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 4, 8, 64]), st.integers(0, 64))
def test_sweep_backends_agree(seed, N, c):
    rng = np.random.default_rng(seed)
    n2 = 2 * rng.integers(-128, 128, 50).astype(np.int64)
    u2 = np.sort(rng.choice(np.arange(-127, 128, 2), N, replace=False)).astype(np.int64)
    lo = -2 * rng.integers(0, c + 1, 50).astype(np.int64)
    hi = -lo
    a = _kernels.generator_sums_numpy(n2, u2, lo, hi, -256, 256)
    b = _kernels.generator_sums_numba(n2, u2, lo, hi, np.int64(-256), np.int64(256))
    assert np.array_equal(a, b)


@given(st.integers(0, 2**32 - 1))
def test_dither_backends_agree(seed):
    rng = np.random.default_rng(seed)
    xs = rng.uniform(-1.5, 1.5, 20)
    us = rng.uniform(-1, 1, (20, 64))
    np.testing.assert_allclose(_kernels.dither_means_numpy(xs, us, 1.0, 2.0),
                               _kernels.dither_means_numba(xs, us, 1.0, 2.0), rtol=0, atol=1e-13)


@pytest.mark.parametrize("flag, backend", [("1", "numpy"), ("0", "numba"), ("", "numba")])
def test_env_flag_selects_backend(flag, backend):
    env = dict(os.environ, SQNL_DISABLE_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", "from sqnl import _kernels; print(_kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == backend


def test_numpy_fallback_gives_same_table():
    code = ("from sqnl.generator import GeneratorConfig, map_all; "
            "print(map_all(GeneratorConfig(8, 8)).outputs.tolist())")
    outs = []
    for flag in ("1", "0"):
        env = dict(os.environ, SQNL_DISABLE_NUMBA=flag)
        outs.append(subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout)
    assert outs[0] == outs[1]
