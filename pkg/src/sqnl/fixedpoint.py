"""Two's-complement words with saturating add/subtract and width resizing."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import SqnlError, WidthMismatch

MIN_WIDTH = 4
MAX_WIDTH = 24


def word_min(width: int) -> int:
    return -(1 << (width - 1))


def word_max(width: int) -> int:
    return (1 << (width - 1)) - 1


@dataclass(frozen=True, slots=True)
class Word:
    value: int
    width: int

    def __post_init__(self):
        if not MIN_WIDTH <= self.width <= MAX_WIDTH:
            raise SqnlError(f"word width must be in [{MIN_WIDTH}, {MAX_WIDTH}], got {self.width}")
        if not word_min(self.width) <= self.value <= word_max(self.width):
            raise SqnlError(f"{self.value} is not representable in {self.width} bits")

    def __int__(self):
        return self.value

    def same_width(self, other: "Word") -> None:
        if self.width != other.width:
            raise WidthMismatch(f"cannot combine {self.width}-bit and {other.width}-bit words")


@dataclass(frozen=True, slots=True)
class SatBound:
    lower: int
    upper: int

    def __post_init__(self):
        if not self.lower <= 0 <= self.upper:
            raise SqnlError(f"saturation bound must satisfy lower <= 0 <= upper, got {self}")

    @classmethod
    def symmetric(cls, limit: int) -> "SatBound":
        return cls(-limit, limit)

    def scaled(self, factor: int) -> "SatBound":
        return SatBound(self.lower * factor, self.upper * factor)


def sat(x: int, bound: SatBound) -> int:
    if x <= bound.lower:
        return bound.lower
    if x >= bound.upper:
        return bound.upper
    return x


def _headroom_ok(bound: SatBound, width: int) -> None:
    # operands get 2 bits above the word width before saturation
    lim = 1 << (width + 1)
    if bound.lower < -lim or bound.upper > lim:
        raise SqnlError(f"bound {bound} does not fit a {width}+2 bit intermediate")


def sat_add(a: Word, b: int | Word, bound: SatBound) -> int:
    if isinstance(b, Word):
        a.same_width(b)
        b = b.value
    _headroom_ok(bound, a.width)
    return sat(a.value + b, bound)


def sat_sub(a: int | Word, b: int | Word, bound: SatBound) -> int:
    if isinstance(a, Word) and isinstance(b, Word):
        a.same_width(b)
    return sat(int(a) - int(b), bound)


def resize(x: Word, new_width: int) -> Word:
    """Widen (value preserved) or narrow (floor shift by the width difference, then saturate)."""
    if new_width < MIN_WIDTH:
        raise SqnlError(f"new width must be >= {MIN_WIDTH}")
    if new_width >= x.width:
        return Word(x.value, new_width)
    return requantize(x.value, x.width - new_width, new_width)


def requantize(value: int, shift: int, width: int) -> Word:
    """Arithmetic right shift by ``shift`` bits, then saturate into ``width`` bits."""
    if shift < 0:
        raise SqnlError("shift must be non-negative")
    v = value >> shift
    return Word(min(max(v, word_min(width)), word_max(width)), width)


def is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def avg_floor(total: int, n: int) -> int:
    """floor(total / n) for a power-of-two ``n``, i.e. an arithmetic right shift."""
    if not is_power_of_two(n) or n < 2:
        raise SqnlError(f"averaging length must be a power of two >= 2, got {n}")
    return total >> (n.bit_length() - 1)
