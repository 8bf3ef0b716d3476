import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from sqnl.closedform import tansig_model
from sqnl.dither import DitherConfig, fit_tansig, fit_simulated, logsig_variant, simulate
from sqnl.errors import SqnlError

# E_u[clip(clip(x+u, +-1) - u, +-2)], u ~ U(-1, 1), by adaptive quadrature; frozen
FROZEN = {0.0: 0.0, 0.5: 0.4375, 1.0: 0.75, 1.5: 0.9375, -1.0: -0.75}


def _clipped_mean(x):
    g = lambda u: np.clip(np.clip(x + u, -1, 1) - u, -2, 2)
    val, _ = integrate.quad(g, -1, 1, points=[-1 - x, 1 - x], limit=200)
    return val / 2


@pytest.mark.parametrize("x", sorted(FROZEN))
def test_quadrature_oracle_matches_frozen(x):
    assert _clipped_mean(x) == pytest.approx(FROZEN[x], abs=1e-10)


@pytest.mark.parametrize("x", sorted(FROZEN))
def test_simulate_converges_to_oracle(x):
    y = simulate([x], DitherConfig(oversample=1 << 16, seed=3))[0]
    assert y == pytest.approx(FROZEN[x], abs=0.01)


def test_simulate_origin_is_exact():
    assert abs(simulate([0.0])[0]) < 0.02


def test_simulate_deterministic_and_prefix_stable():
    xs = np.linspace(-1.5, 1.5, 31)
    a = simulate(xs, DitherConfig(seed=9))
    assert np.array_equal(a, simulate(xs, DitherConfig(seed=9)))
    assert np.array_equal(a[:10], simulate(xs[:10], DitherConfig(seed=9)))
    assert not np.array_equal(a, simulate(xs, DitherConfig(seed=10)))


def test_simulate_rejects_2d():
    with pytest.raises(SqnlError):
        simulate(np.zeros((2, 2)))


def test_config_validation():
    with pytest.raises(SqnlError):
        DitherConfig(oversample=1)
    with pytest.raises(SqnlError):
        DitherConfig(adder_limit=0)
    with pytest.raises(SqnlError):
        DitherConfig(seed=-1)


def test_odd_in_expectation():
    xs = np.linspace(0.05, 1.5, 30)
    cfg = DitherConfig(oversample=4096, seed=1)
    assert abs(np.mean(simulate(xs, cfg) + simulate(-xs, cfg))) < 0.01


@given(st.floats(-1, 1), st.integers(0, 2**32))
def test_bounded_by_adder_limit(x, seed):
    assert abs(simulate([x], DitherConfig(oversample=16, seed=seed))[0]) <= 1.0


def test_logsig_variant():
    assert logsig_variant([0.0, 1.0, -1.0]).tolist() == [0.5, 1.0, 0.0]


def test_self_fit():
    xs = np.linspace(-1.5, 1.5, 201)
    ys = np.array([tansig_model(x, -2.0, 0.0) for x in xs])
    r = fit_tansig(xs, ys)
    assert r.converged
    assert r.a == pytest.approx(-2.0, abs=1e-6) and r.b == pytest.approx(0.0, abs=1e-6)
    assert r.rmse < 1e-8


def test_fit_recovers_off_grid_parameters():
    xs = np.linspace(-1.5, 1.5, 101)
    ys = np.array([tansig_model(x, -1.73, 0.21) for x in xs])
    r = fit_tansig(xs, ys)
    assert (r.a, r.b) == pytest.approx((-1.73, 0.21), abs=1e-7)


def test_fit_degenerate_flagged():
    xs = np.linspace(-1.5, 1.5, 101)
    r = fit_tansig(xs, np.zeros_like(xs))
    assert not r.converged and r.rmse >= 0


def test_fit_needs_enough_points():
    with pytest.raises(SqnlError):
        fit_tansig(np.zeros(10), np.zeros(10))
    with pytest.raises(SqnlError):
        fit_tansig(np.zeros(60), np.zeros(61))


def test_fit_simulated_shape():
    r = fit_simulated(DitherConfig(seed=2))
    assert r.converged and -2.0 <= r.a <= -1.6 and r.rmse <= 0.05
