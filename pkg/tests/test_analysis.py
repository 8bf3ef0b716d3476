from fractions import Fraction

import numpy as np
import pytest

from sqnl.analysis import (DeviationProfile, count_segments, deviation_histogram, deviation_profile,
                           gated_error_surface, kink_positions)
from sqnl.closedform import GatedParams, gated_error_exact
from sqnl.errors import SqnlError
from sqnl.generator import GeneratorConfig, MappingTable, map_all


def test_profile_finest_stride_is_exact():
    p = deviation_profile(GeneratorConfig(8, 128))
    assert p.max_abs == 0 and p.exact_zero_fraction == 1.0
    assert p.max_abs_lsb <= 1


def test_profile_n8_within_quarter():
    p = deviation_profile(GeneratorConfig(8, 8))
    assert p.max_abs == Fraction(1, 4)
    assert len(p.deviation) == 256


def test_profile_n4():
    p = deviation_profile(GeneratorConfig(8, 4))
    assert p.max_abs <= 1
    assert p.zero_bit_fraction == pytest.approx(0.71875)
    assert p.zero_bit_fraction > 0.70


def test_profile_requires_symmetric():
    with pytest.raises(SqnlError):
        deviation_profile(GeneratorConfig(8, 8, "logsqnl"))


@pytest.mark.parametrize("N", [2, 4, 8, 16])
def test_profile_odd(N):
    p = deviation_profile(GeneratorConfig(8, N))
    d = dict(zip(p.inputs.tolist(), p.deviation))
    assert all(d[-n] == -d[n] for n in range(-127, 128))


def test_deviation_peaks_at_offsets_and_vanishes_midway():
    p = deviation_profile(GeneratorConfig(8, 8))
    d = dict(zip(p.inputs.tolist(), p.deviation))
    for u in range(-56, 57, 16):
        assert abs(d[u]) == Fraction(1, 4)
    for mid in range(-48, 49, 16):
        assert d[mid] == 0


def test_histograms():
    h8 = deviation_histogram(deviation_profile(GeneratorConfig(8, 8)), 16)
    assert sum(h8.counts) == 256
    inside = [c for i, c in enumerate(h8.counts) if h8.edges[i] >= Fraction(-1, 4) and h8.edges[i + 1] <= Fraction(1, 2)]
    assert sum(inside) == 256
    h4 = deviation_histogram(deviation_profile(GeneratorConfig(8, 4)), 8)
    assert sum(h4.counts) == 256
    with pytest.raises(SqnlError):
        deviation_histogram(deviation_profile(GeneratorConfig(8, 4)), 0)


def test_histogram_of_zero_profile():
    zeros = DeviationProfile(8, 128, np.arange(256), tuple(Fraction(0) for _ in range(256)), np.zeros(256, int))
    h = deviation_histogram(zeros, 4)
    assert h.counts == (0, 0, 256, 0)
    assert h.bin_of(Fraction(0)) == 2


def test_count_segments_simple_tables():
    ident = MappingTable.from_values(8, range(-10, 10), range(-10, 10))
    assert count_segments(ident) == 1
    flat = MappingTable.from_values(8, range(5), [3] * 5)
    assert count_segments(flat) == 0


@pytest.mark.parametrize("R", [6, 8])
@pytest.mark.parametrize("N", [2, 4, 8, 16])
def test_segment_count_is_2n_minus_1(R, N):
    # slope is (#unclipped offsets)/N; each offset toggles at two kinks, so 2N kinks bound 2N-1 sloped runs
    if N > 1 << (R - 2):
        return
    assert count_segments(map_all(GeneratorConfig(R, N))) == 2 * N - 1


def test_kinks_sit_at_offset_shifted_clip_points():
    t = map_all(GeneratorConfig(8, 8))
    kinks = kink_positions(t)
    assert len(kinks) == 16
    assert kinks[0] == -120 and kinks[-1] == 120


def test_gated_error_surface():
    s = gated_error_surface(8, [0, 40, 64])
    assert all(e == 0 for e in s.row(64).errors)
    assert all(e == 0 for e in s.row(0).errors)
    assert s.at(40, 40) == Fraction(-93, 32)
    with pytest.raises(KeyError):
        s.row(7)


@pytest.mark.parametrize("C", [1, 8, 20, 40, 63])
def test_gated_error_max_inside_upper_quadratic(C):
    s = gated_error_surface(8, [C])
    row = s.row(C)
    p = GatedParams(8, C)
    assert p.delta < row.argmax < p.u_max + C
    assert row.max_abs == max(abs(gated_error_exact(n, p)) for n in range(-128, 128))
