"""Deviation profiles, histograms, segment counting and the gated error surface."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import closedform
from .errors import SqnlError
from .generator import GeneratorConfig, GeneratorMode, MappingTable, domain, map_all

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class DeviationProfile:
    R: int
    N: int
    inputs: np.ndarray
    deviation: tuple[Fraction, ...]   # exact iterative average minus closed form
    lsb: np.ndarray                   # eval(n) - floor(closed form)

    @property
    def max_abs(self) -> Fraction:
        return max(abs(d) for d in self.deviation)

    @property
    def max_abs_lsb(self) -> int:
        return int(np.abs(self.lsb).max())

    @property
    def zero_bit_fraction(self) -> float:
        """Share of inputs whose deviation rounds to zero bits (|d| < 1/2 LSB)."""
        return sum(abs(d) < HALF for d in self.deviation) / len(self.deviation)

    @property
    def exact_zero_fraction(self) -> float:
        return sum(d == 0 for d in self.deviation) / len(self.deviation)


def deviation_profile(cfg: GeneratorConfig) -> DeviationProfile:
    if cfg.mode is not GeneratorMode.SYMMETRIC:
        raise SqnlError("deviation profiles are defined for the symmetric generator")
    table = map_all(cfg)
    devs, lsb = [], []
    for i, n in enumerate(table.inputs):
        ideal = closedform.sqnl_exact(int(n), cfg.R)
        devs.append(table.exact(i) - ideal)
        lsb.append(int(table.outputs[i]) - (ideal.numerator // ideal.denominator))
    return DeviationProfile(cfg.R, cfg.N, table.inputs, tuple(devs), np.array(lsb, dtype=np.int64))


@dataclass(frozen=True)
class Histogram:
    edges: tuple[Fraction, ...]
    counts: tuple[int, ...]

    def bin_of(self, value: Fraction) -> int:
        for i in range(len(self.counts)):
            if value < self.edges[i + 1]:
                return i
        return len(self.counts) - 1


def deviation_histogram(profile: DeviationProfile, bins: int,
                        lo: Fraction = Fraction(-1), hi: Fraction = Fraction(1)) -> Histogram:
    """Equal-width bins over [lo, hi]; out-of-range values land in the end bins."""
    if bins < 1:
        raise SqnlError("bins must be >= 1")
    lo, hi = Fraction(lo), Fraction(hi)
    if hi <= lo:
        raise SqnlError("histogram range must have hi > lo")
    width = (hi - lo) / bins
    edges = tuple(lo + i * width for i in range(bins + 1))
    counts = [0] * bins
    for d in profile.deviation:
        i = (d - lo) // width
        counts[min(max(int(i), 0), bins - 1)] += 1
    return Histogram(edges, tuple(counts))


def count_segments(table: MappingTable) -> int:
    """Maximal runs of constant slope in the exact map, outer flat plateaus excluded."""
    diffs = np.diff(np.asarray(table.numer, dtype=np.int64))
    if diffs.size == 0:
        return 1 if len(table) else 0
    start, stop = 0, diffs.size
    while start < stop and diffs[start] == 0:
        start += 1
    while stop > start and diffs[stop - 1] == 0:
        stop -= 1
    core = diffs[start:stop]
    if core.size == 0:
        return 0
    return 1 + int(np.count_nonzero(core[1:] != core[:-1]))


def kink_positions(table: MappingTable) -> list[int]:
    """Inputs at which the slope of the exact map changes."""
    d = np.diff(np.asarray(table.numer, dtype=np.int64))
    idx = np.nonzero(d[1:] != d[:-1])[0] + 1
    return [int(table.inputs[i]) for i in idx]


@dataclass(frozen=True)
class ErrorRow:
    C: int
    errors: tuple[Fraction, ...]
    max_abs: Fraction
    argmax: int


@dataclass(frozen=True)
class GatedErrorSurface:
    R: int
    inputs: np.ndarray
    rows: tuple[ErrorRow, ...]

    def row(self, C: int) -> ErrorRow:
        for r in self.rows:
            if r.C == C:
                return r
        raise KeyError(C)

    def at(self, C: int, n: int) -> Fraction:
        return self.row(C).errors[n - int(self.inputs[0])]


def gated_error_surface(R: int, C_values) -> GatedErrorSurface:
    ns = domain(R)
    rows = []
    for C in C_values:
        p = closedform.GatedParams(R, int(C))
        errs = tuple(closedform.gated_error_exact(int(n), p) for n in ns)
        # ties (the surface is odd in n) resolve to the positive input
        best = max(range(len(errs)), key=lambda i: (abs(errs[i]), ns[i]))
        rows.append(ErrorRow(int(C), errs, abs(errs[best]), int(ns[best])))
    return GatedErrorSurface(R, ns, tuple(rows))
