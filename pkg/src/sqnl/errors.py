class SqnlError(ValueError):
    """Base class for precondition / domain violations raised by this package."""


class WidthMismatch(SqnlError):
    pass


class UnsupportedWidth(SqnlError):
    pass


class DimensionMismatch(SqnlError):
    pass


class GoldenSchemaError(SqnlError):
    pass


class InvariantViolation(AssertionError):
    """An internal invariant failed; indicates a bug rather than bad input."""
