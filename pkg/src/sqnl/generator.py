"""Counter-based iterative activation generator.

f(n) = floor( (1/N) * sum_k sat( sat(n + U(k), adder) - U(k), sub ) )

Offsets U(k) are midpoint-anchored on a stride of 2*U_MAX/N. At the finest
stride (N = 2^(R-1)) the midpoints sit on half-LSB positions, so all internal
arithmetic is carried out in half-LSB units (values doubled). In hardware
this is one extra fractional bit on the counter/adder path.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import InvariantViolation, SqnlError, WidthMismatch
from .fixedpoint import MAX_WIDTH, MIN_WIDTH, SatBound, Word, avg_floor, is_power_of_two, sat, word_max, word_min


class GeneratorMode(str, enum.Enum):
    SYMMETRIC = "symmetric"
    LOGSQNL = "logsqnl"
    ASYMMETRIC = "asymmetric"
    GATED = "gated"


class Anchor(str, enum.Enum):
    MIDPOINT = "midpoint"
    ENDPOINT = "endpoint"


@dataclass(frozen=True)
class GeneratorConfig:
    R: int
    N: int
    mode: GeneratorMode = GeneratorMode.SYMMETRIC
    alpha: int = 0
    anchor: Anchor = Anchor.MIDPOINT

    def __post_init__(self):
        object.__setattr__(self, "mode", GeneratorMode(self.mode))
        object.__setattr__(self, "anchor", Anchor(self.anchor))
        if not MIN_WIDTH <= self.R <= MAX_WIDTH:
            raise SqnlError(f"R must be in [{MIN_WIDTH}, {MAX_WIDTH}], got {self.R}")
        if not is_power_of_two(self.N) or not 2 <= self.N <= self.M:
            raise SqnlError(f"N must be a power of two in [2, {self.M}], got {self.N}")
        if self.mode is GeneratorMode.ASYMMETRIC:
            if not 0 <= self.alpha <= self.M // 2:
                raise SqnlError(f"alpha must be in [0, {self.M // 2}], got {self.alpha}")
        elif self.alpha != 0:
            raise SqnlError("alpha only applies to the asymmetric generator")

    @property
    def u_max(self) -> int:
        return 1 << (self.R - 2)

    @property
    def M(self) -> int:
        return 1 << (self.R - 1)

    @property
    def cycles(self) -> int:
        """Clock cycles per activation (one counter step per offset)."""
        return self.N


@dataclass(frozen=True)
class Sequence:
    twice: tuple[int, ...]

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, 2) for v in self.twice)

    def __len__(self):
        return len(self.twice)


def make_sequence(cfg: GeneratorConfig) -> Sequence:
    u = cfg.u_max
    stride2 = 4 * u // cfg.N  # stride in half-LSB units
    start2 = -2 * u if cfg.mode is not GeneratorMode.ASYMMETRIC else -4 * u + 2 * cfg.alpha
    if cfg.anchor is Anchor.MIDPOINT:
        start2 += stride2 // 2
    return Sequence(tuple(start2 + k * stride2 for k in range(cfg.N)))


def adder_bound(cfg: GeneratorConfig, c_scale: int | None = None) -> SatBound:
    if cfg.mode is GeneratorMode.GATED:
        return SatBound.symmetric(c_scale)
    if cfg.mode is GeneratorMode.ASYMMETRIC:
        # only the lower limit bites; the upper sits at M
        return SatBound(-cfg.u_max, cfg.M)
    return SatBound.symmetric(cfg.u_max)


def sub_bound(cfg: GeneratorConfig) -> SatBound:
    return SatBound.symmetric(cfg.M)


def _check_scale(cfg: GeneratorConfig, c_scale):
    if cfg.mode is GeneratorMode.GATED:
        if c_scale is None:
            raise SqnlError("gated mode requires c_scale")
        c = np.asarray(c_scale)
        if np.any(c < 0) or np.any(c > cfg.u_max):
            raise SqnlError(f"c_scale must be in [0, {cfg.u_max}]")
    elif c_scale is not None:
        raise SqnlError(f"c_scale is only valid in gated mode, not {cfg.mode.value}")


def _finish(cfg: GeneratorConfig, acc2):
    """Turn a half-LSB accumulator into the output word value (floor average, LogSQNL post-map)."""
    f = acc2 >> (cfg.N.bit_length())  # divide by 2N
    if cfg.mode is GeneratorMode.LOGSQNL:
        f = (f >> 1) + (1 << (cfg.R - 3))
    return f


def evaluate(n: Word, cfg: GeneratorConfig, c_scale: int | None = None) -> Word:
    """One activation, computed literally with the saturating-arithmetic primitives."""
    if n.width != cfg.R:
        raise WidthMismatch(f"input is {n.width} bits, generator expects {cfg.R}")
    _check_scale(cfg, c_scale)
    add = adder_bound(cfg, c_scale).scaled(2)
    sub = sub_bound(cfg).scaled(2)
    acc = 0
    for u2 in make_sequence(cfg).twice:
        acc += sat(sat(2 * n.value + u2, add) - u2, sub)
    f = avg_floor(acc, 2 * cfg.N)
    if cfg.mode is GeneratorMode.LOGSQNL:
        f = (f >> 1) + (1 << (cfg.R - 3))
    return Word(f, cfg.R)


def accumulate(ns, cfg: GeneratorConfig, c_scale=None) -> np.ndarray:
    """Half-LSB accumulators for an array of inputs (vectorised kernel path).

    ``c_scale`` may be a scalar or an array matching ``ns`` (gated mode only).
    """
    ns = np.asarray(ns, dtype=np.int64)
    if ns.size and (ns.min() < word_min(cfg.R) or ns.max() > word_max(cfg.R)):
        raise SqnlError(f"inputs exceed the {cfg.R}-bit range")
    _check_scale(cfg, c_scale)
    u2 = np.asarray(make_sequence(cfg).twice, dtype=np.int64)
    if cfg.mode is GeneratorMode.GATED:
        c = np.asarray(c_scale, dtype=np.int64)
        lo2, hi2 = -2 * c, 2 * c
    else:
        b = adder_bound(cfg)
        lo2, hi2 = 2 * b.lower, 2 * b.upper
    sb = sub_bound(cfg)
    return _kernels.generator_sums(2 * ns, u2, lo2, hi2, 2 * sb.lower, 2 * sb.upper)


def evaluate_array(ns, cfg: GeneratorConfig, c_scale=None) -> np.ndarray:
    out = _finish(cfg, accumulate(ns, cfg, c_scale))
    if out.size and (out.min() < word_min(cfg.R) or out.max() > word_max(cfg.R)):
        raise InvariantViolation("generator output escaped the R-bit range")
    return out


@dataclass(frozen=True)
class MappingTable:
    """Input -> output map over a contiguous integer domain.

    ``numer / denom`` is the exact (pre-rounding) value; ``outputs`` the word.
    """
    R: int
    inputs: np.ndarray
    outputs: np.ndarray
    numer: np.ndarray
    denom: int
    cycles: int = 1

    def exact(self, i: int) -> Fraction:
        return Fraction(int(self.numer[i]), self.denom)

    @classmethod
    def from_values(cls, R: int, inputs, values) -> "MappingTable":
        """Build a table from integer values (exact == rounded)."""
        values = np.asarray(values, dtype=np.int64)
        return cls(R, np.asarray(inputs, dtype=np.int64), values, values.copy(), 1)

    def __len__(self):
        return len(self.inputs)


def domain(R: int) -> np.ndarray:
    return np.arange(word_min(R), word_max(R) + 1, dtype=np.int64)


def map_all(cfg: GeneratorConfig, c_scale: int | None = None) -> MappingTable:
    ns = domain(cfg.R)
    acc2 = accumulate(ns, cfg, c_scale)
    outputs = _finish(cfg, acc2)
    denom = 2 * cfg.N
    numer = acc2
    if cfg.mode is GeneratorMode.LOGSQNL:
        # exact value A/2 + 2^(R-3); floor(floor(A)/2) == floor(A/2) so outputs agree
        numer = acc2 + (1 << (cfg.R - 3)) * 2 * denom
        denom *= 2
    return MappingTable(cfg.R, ns, outputs, numer, denom, cfg.cycles)
