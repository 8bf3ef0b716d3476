"""Exact piecewise-quadratic forms of the generator, in rational arithmetic.

Results are ``Fraction``; rounding to a word (floor) is the caller's job.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import SqnlError

Rational = Fraction


def sqnl_exact(n: int, R: int) -> Fraction:
    m = 1 << (R - 1)
    if n < -m:
        return Fraction(-m, 2)
    if n < 0:
        return n + Fraction(n * n, 2 * m)
    if n <= m:
        return n - Fraction(n * n, 2 * m)
    return Fraction(m, 2)


def logsqnl_exact(n: int, R: int) -> Fraction:
    return sqnl_exact(n, R) / 2 + (1 << (R - 3))


def asym_exact(n: int, R: int, alpha: int) -> Fraction:
    m = 1 << (R - 1)
    if not 0 <= alpha <= m // 2:
        raise SqnlError(f"alpha must be in [0, {m // 2}], got {alpha}")
    half = m // 2
    if n < -half - alpha:
        return Fraction(-alpha)
    if n <= half - alpha:
        return Fraction((half + n + alpha) ** 2, 2 * m) - alpha
    return Fraction(n)


@dataclass(frozen=True)
class GatedParams:
    R: int
    C: int

    def __post_init__(self):
        if not 0 <= self.C <= self.u_max:
            raise SqnlError(f"C must be in [0, {self.u_max}], got {self.C}")

    @property
    def u_max(self) -> int:
        return 1 << (self.R - 2)

    @property
    def delta(self) -> int:
        """Half-width of the linear mid-region; continuity at the knee forces U_MAX - C."""
        return self.u_max - self.C


def gated_exact(n: int, params: GatedParams) -> Fraction:
    u, c, d = params.u_max, params.C, params.delta
    if n < -(u + c):
        return Fraction(-c)
    if n < -d:
        return n + Fraction((n - d) ** 2, 4 * u)
    if n <= d:
        return Fraction(n * c, u)
    if n <= u + c:
        return n - Fraction((d + n) ** 2, 4 * u)
    return Fraction(c)


def gated_error_exact(n: int, params: GatedParams) -> Fraction:
    """Ideal scaled output (C/U_MAX)*G(n) minus the gated output f(n, C)."""
    full = GatedParams(params.R, params.u_max)
    return Fraction(params.C, params.u_max) * gated_exact(n, full) - gated_exact(n, params)


def tansig_model(x: float, a: float, b: float) -> float:
    z = a * x + b * x ** 3
    # 2/(1+e^z) - 1 == -tanh(z/2); the tanh form does not overflow
    return -math.tanh(z / 2)
