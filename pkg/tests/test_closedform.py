import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sqnl.closedform import GatedParams, asym_exact, gated_error_exact, gated_exact, logsqnl_exact, sqnl_exact, tansig_model
from sqnl.errors import SqnlError


def test_sqnl_exact_values():
    assert sqnl_exact(0, 8) == 0
    assert sqnl_exact(64, 8) == 48
    assert sqnl_exact(-128, 8) == -64
    assert sqnl_exact(127, 8) == Fraction(16383, 256)
    assert int(sqnl_exact(127, 8)) == 63
    assert sqnl_exact(500, 8) == 64 and sqnl_exact(-500, 8) == -64


def test_logsqnl_exact_range():
    assert logsqnl_exact(0, 8) == 32
    assert logsqnl_exact(-128, 8) == 0
    assert logsqnl_exact(128, 8) == 64


def test_asym_exact_values():
    assert asym_exact(0, 8, 0) == 16
    assert asym_exact(0, 8, 64) == 0
    assert asym_exact(-128, 8, 64) == -64
    assert asym_exact(100, 8, 0) == 100
    with pytest.raises(SqnlError):
        asym_exact(0, 8, 65)
    with pytest.raises(SqnlError):
        asym_exact(0, 8, -1)


def test_gated_exact_values():
    assert gated_exact(40, GatedParams(8, 64)) == Fraction(135, 4)
    assert gated_exact(40, GatedParams(8, 40)) == 24
    assert gated_exact(104, GatedParams(8, 40)) == 40
    for c in range(65):
        assert gated_exact(0, GatedParams(8, c)) == 0
    with pytest.raises(SqnlError):
        GatedParams(8, 65)


def test_gated_params_delta():
    p = GatedParams(8, 40)
    assert p.delta == 24 and p.delta + p.C == p.u_max


def test_gated_error_values():
    # exact value of (40/64)*33.75 - 24
    assert gated_error_exact(40, GatedParams(8, 40)) == Fraction(-93, 32)
    assert abs(float(gated_error_exact(40, GatedParams(8, 40))) + 2.91) <= 0.005
    for c in (0, 13, 64):
        assert gated_error_exact(0, GatedParams(8, c)) == 0
    for n in range(-140, 141):
        assert gated_error_exact(n, GatedParams(8, 64)) == 0


def test_tansig_model():
    assert tansig_model(0.0, -1.7, 0.3) == 0.0
    for x in (-1.3, -0.2, 0.4, 1.1):
        assert tansig_model(x, -2.0, 0.0) == pytest.approx(math.tanh(x), abs=1e-15)
    # direct evaluation of 2/(1+e^z) - 1 at z = -1.63
    assert tansig_model(1.0, -1.81, 0.18) == pytest.approx(2 / (1 + math.exp(-1.63)) - 1, abs=1e-15)
    assert tansig_model(1.0, -1.81, 0.18) == pytest.approx(0.672339, abs=1e-6)
    assert tansig_model(1e4, -2.0, 1.0) == -1.0


@pytest.mark.parametrize("R", [4, 6, 8, 10])
def test_sqnl_knee_continuity(R):
    m = 1 << (R - 1)
    left = lambda n: n + Fraction(n * n, 2 * m)
    right = lambda n: n - Fraction(n * n, 2 * m)
    assert left(-m) == sqnl_exact(-m - 1, R) == sqnl_exact(-m, R)
    assert left(0) == right(0) == sqnl_exact(0, R)
    assert right(m) == sqnl_exact(m + 1, R) == sqnl_exact(m, R)


@given(st.integers(0, 64))
def test_gated_continuity_at_knees(c):
    p = GatedParams(8, c)
    u, d = p.u_max, p.delta
    lower_quad = lambda n: n + Fraction((n - d) ** 2, 4 * u)
    upper_quad = lambda n: n - Fraction((d + n) ** 2, 4 * u)
    linear = lambda n: Fraction(n * c, u)
    assert lower_quad(-(u + c)) == -c
    assert lower_quad(-d) == linear(-d)
    assert upper_quad(d) == linear(d)
    assert upper_quad(u + c) == c


@given(st.integers(0, 64))
def test_asym_continuity(alpha):
    m, half = 128, 64
    quad = lambda n: Fraction((half + n + alpha) ** 2, 2 * m) - alpha
    assert quad(-half - alpha) == -alpha
    assert quad(half - alpha) == half - alpha


@given(st.integers(-128, 128))
def test_gated_full_scale_is_sqnl(n):
    assert gated_exact(n, GatedParams(8, 64)) == sqnl_exact(n, 8)


@given(st.integers(-128, 128))
def test_sqnl_odd(n):
    assert sqnl_exact(-n, 8) == -sqnl_exact(n, 8)


@given(st.integers(-200, 200), st.integers(0, 64))
def test_gated_error_is_scaling_gap(n, c):
    p = GatedParams(8, c)
    gap = gated_exact(n, p) - Fraction(c, 64) * gated_exact(n, GatedParams(8, 64))
    assert abs(gap) == abs(gated_error_exact(n, p))
