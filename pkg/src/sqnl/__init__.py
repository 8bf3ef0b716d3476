"""Bit-exact simulation and analysis of counter-based square-law activation functions."""
from .errors import DimensionMismatch, GoldenSchemaError, InvariantViolation, SqnlError, UnsupportedWidth, WidthMismatch
from .fixedpoint import SatBound, Word
from .generator import GeneratorConfig, GeneratorMode, evaluate, evaluate_array, map_all

__version__ = "0.1.0"

__all__ = [
    "DimensionMismatch", "GoldenSchemaError", "InvariantViolation", "SqnlError", "UnsupportedWidth",
    "WidthMismatch", "SatBound", "Word", "GeneratorConfig", "GeneratorMode", "evaluate",
    "evaluate_array", "map_all",
]
