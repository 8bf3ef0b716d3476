"""Real-valued SQNL family for software ANN use, with first derivatives.

Scalar ``activate``/``derivative`` accept ``float`` or ``Fraction`` (the
latter stays exact, which the continuity checks rely on). At a knee the
derivative is the right-hand one.

``SQ_SOFTMAX`` is a scalar map, not a normalised vector softmax.
"""
from __future__ import annotations

import enum
import math
from fractions import Fraction

import numpy as np

from .errors import SqnlError


class ActivationKind(str, enum.Enum):
    SQNL = "sqnl"
    SQ_LOGSIG = "sq_logsig"
    SQLU = "sqlu"
    SQ_SOFTMAX = "sq_softmax"
    SQ_SQISH = "sq_sqish"
    SQ_REU = "sq_reu"


# breakpoints per kind, for tests and for the batch path
KNEES = {
    ActivationKind.SQNL: (-2, 0, 2),
    ActivationKind.SQ_LOGSIG: (-2, 0, 2),
    ActivationKind.SQLU: (-2, 0),
    ActivationKind.SQ_SOFTMAX: (Fraction(-1, 2), Fraction(1, 2)),
    ActivationKind.SQ_SQISH: (-2, 0),
    ActivationKind.SQ_REU: (-2, 0),
}


def _finite(x):
    if not math.isfinite(x):
        raise SqnlError(f"activation input must be finite, got {x!r}")


def _sqnl(x):
    if x > 2:
        return 1
    if x >= 0:
        return x - x * x / 4
    if x >= -2:
        return x + x * x / 4
    return -1


def activate(kind: ActivationKind | str, x):
    kind = ActivationKind(kind)
    _finite(x)
    match kind:
        case ActivationKind.SQNL:
            return _sqnl(x)
        case ActivationKind.SQ_LOGSIG:
            return (_sqnl(x) + 1) / 2
        case ActivationKind.SQLU:
            if x > 0:
                return x
            return x + x * x / 4 if x >= -2 else -1
        case ActivationKind.SQ_SOFTMAX:
            if 2 * x > 1:
                return x
            return (2 * x + 1) ** 2 / 8 if 2 * x >= -1 else 0
        case ActivationKind.SQ_SQISH:
            if x > 0:
                return x + x * x / 32
            return x + x * x / 2 if x >= -2 else 0
        case ActivationKind.SQ_REU:
            if x > 0:
                return x
            return x + x * x / 2 if x >= -2 else 0


def derivative(kind: ActivationKind | str, x):
    kind = ActivationKind(kind)
    _finite(x)
    match kind:
        case ActivationKind.SQNL | ActivationKind.SQ_LOGSIG:
            if x >= 2 or x < -2:
                d = 0
            elif x >= 0:
                d = 1 - x / 2
            else:
                d = 1 + x / 2
            return d / 2 if kind is ActivationKind.SQ_LOGSIG else d
        case ActivationKind.SQLU:
            if x >= 0:
                return 1
            return 1 + x / 2 if x >= -2 else 0
        case ActivationKind.SQ_SOFTMAX:
            if 2 * x >= 1:
                return 1
            return x + Fraction(1, 2) if 2 * x >= -1 else 0
        case ActivationKind.SQ_SQISH:
            if x >= 0:
                return 1 + x / 16
            return 1 + x if x >= -2 else 0
        case ActivationKind.SQ_REU:
            if x >= 0:
                return 1
            return 1 + x if x >= -2 else 0


def activate_batch(kind: ActivationKind | str, xs) -> np.ndarray:
    kind = ActivationKind(kind)
    x = np.asarray(xs, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise SqnlError("activation inputs must be finite")
    match kind:
        case ActivationKind.SQNL | ActivationKind.SQ_LOGSIG:
            c = np.clip(x, -2.0, 2.0)
            y = c - c * np.abs(c) / 4
            return (y + 1) / 2 if kind is ActivationKind.SQ_LOGSIG else y
        case ActivationKind.SQLU:
            return np.where(x > 0, x, np.where(x >= -2, x + x * x / 4, -1.0))
        case ActivationKind.SQ_SOFTMAX:
            return np.where(x > 0.5, x, np.where(x >= -0.5, (x + 0.5) ** 2 / 2, 0.0))
        case ActivationKind.SQ_SQISH:
            return np.where(x > 0, x + x * x / 32, np.where(x >= -2, x + x * x / 2, 0.0))
        case ActivationKind.SQ_REU:
            return np.where(x > 0, x, np.where(x >= -2, x + x * x / 2, 0.0))


def derivative_batch(kind: ActivationKind | str, xs) -> np.ndarray:
    return np.array([float(derivative(kind, float(v))) for v in np.asarray(xs, dtype=np.float64).ravel()]).reshape(np.shape(xs))
