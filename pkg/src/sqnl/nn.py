"""Fixed-point GEMM netsum and an LSTM cell built on the SQNL generators.

Scaling convention: an R-bit word holds real value ``q / 2^(R-2)``, so the
integer SQNL (saturating at |n| = 2^(R-1), output +-2^(R-2)) is the real SQNL
(saturating at |x| = 2, output +-1) on that grid. Weights use the same
scale; a netsum therefore carries ``2^(2(R-2))`` and is shifted back by
``R-2`` bits before activation.

Reference wiring: LogSQNL on the input/forget/output gates. The input gate
drives the C port of the gated candidate activation, the output gate drives
the C port of the gated cell-output activation. The forget-gate product with
the previous cell state is the one remaining multiplication; it goes through
``cell.multiplier`` (exact multiply then requantize by default).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from . import floatfamily
from .errors import DimensionMismatch, InvariantViolation, SqnlError
from .fixedpoint import word_max, word_min
from .generator import GeneratorConfig, evaluate_array

GATES = ("input", "forget", "output", "candidate")


def frac_bits(R: int) -> int:
    return R - 2


def requantize_array(values, shift: int, R: int) -> np.ndarray:
    """Floor shift then saturate into R bits, elementwise."""
    v = np.asarray(values, dtype=np.int64) >> shift
    return np.clip(v, word_min(R), word_max(R))


@dataclass
class DenseLayer:
    weights: np.ndarray      # (out, in) integers of width w_width
    bias: np.ndarray         # (out,) at product scale
    w_width: int
    in_width: int

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.int64)
        self.bias = np.asarray(self.bias, dtype=np.int64)
        if self.weights.ndim != 2 or self.bias.shape != (self.weights.shape[0],):
            raise DimensionMismatch(f"weights {self.weights.shape} and bias {self.bias.shape} disagree")
        if self.weights.size and (self.weights.min() < word_min(self.w_width) or self.weights.max() > word_max(self.w_width)):
            raise SqnlError(f"weights exceed {self.w_width} bits")
        if self.acc_width > 62:
            raise SqnlError("accumulator would not fit a 64-bit integer")

    @property
    def fan_in(self) -> int:
        return self.weights.shape[1]

    @property
    def acc_width(self) -> int:
        return self.w_width + self.in_width + math.ceil(math.log2(max(self.fan_in, 1))) + 1


def gemm_netsum(layer: DenseLayer, inputs) -> np.ndarray:
    p = np.asarray(inputs, dtype=np.int64)
    if p.shape != (layer.fan_in,):
        raise DimensionMismatch(f"layer expects {layer.fan_in} inputs, got shape {p.shape}")
    return layer.weights @ p + layer.bias


def exact_multiply(a: np.ndarray, b: np.ndarray, R: int) -> np.ndarray:
    return requantize_array(np.asarray(a, dtype=np.int64) * np.asarray(b, dtype=np.int64), frac_bits(R), R)


@dataclass
class LstmCellFixed:
    R: int
    input_size: int
    hidden_size: int
    layers: dict[str, DenseLayer]
    N: int | None = None
    multiplier: Callable[[np.ndarray, np.ndarray, int], np.ndarray] = exact_multiply
    hidden: np.ndarray = field(default=None)
    cell: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.N is None:
            self.N = 1 << (self.R - 1)
        if set(self.layers) != set(GATES):
            raise DimensionMismatch(f"cell needs layers {GATES}")
        for name, layer in self.layers.items():
            if layer.weights.shape != (self.hidden_size, self.input_size + self.hidden_size):
                raise DimensionMismatch(
                    f"{name} weights are {layer.weights.shape}, expected "
                    f"{(self.hidden_size, self.input_size + self.hidden_size)}")
        self.reset()
        self._log = GeneratorConfig(self.R, self.N, "logsqnl")
        self._gated = GeneratorConfig(self.R, self.N, "gated")

    def reset(self):
        self.hidden = np.zeros(self.hidden_size, dtype=np.int64)
        self.cell = np.zeros(self.hidden_size, dtype=np.int64)


def lstm_step_fixed(cell: LstmCellFixed, x) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=np.int64)
    if x.shape != (cell.input_size,):
        raise DimensionMismatch(f"cell expects {cell.input_size} inputs, got shape {x.shape}")
    R = cell.R
    if x.min(initial=0) < word_min(R) or x.max(initial=0) > word_max(R):
        raise SqnlError(f"inputs exceed {R} bits")
    p = np.concatenate([x, cell.hidden])
    net = {g: requantize_array(gemm_netsum(cell.layers[g], p), frac_bits(R), R) for g in GATES}

    i = evaluate_array(net["input"], cell._log)
    f = evaluate_array(net["forget"], cell._log)
    o = evaluate_array(net["output"], cell._log)
    cand = evaluate_array(net["candidate"], cell._gated, c_scale=i)
    c = np.clip(cell.multiplier(f, cell.cell, R) + cand, word_min(R), word_max(R))
    h = evaluate_array(c, cell._gated, c_scale=o)

    if np.any(np.abs(h) > 1 << (R - 2)):
        raise InvariantViolation("hidden state left the gated output range")
    cell.cell, cell.hidden = c, h
    return h.copy(), c.copy()


@dataclass
class LstmCellFloat:
    weights: dict[str, np.ndarray]
    biases: dict[str, np.ndarray]
    input_size: int
    hidden_size: int
    activations: str = "sqnl"      # or "classic" (logistic / tanh)
    hidden: np.ndarray = field(default=None)
    cell: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.activations not in ("sqnl", "classic"):
            raise SqnlError("activations must be 'sqnl' or 'classic'")
        for g in GATES:
            if np.shape(self.weights[g]) != (self.hidden_size, self.input_size + self.hidden_size):
                raise DimensionMismatch(f"{g} weights have shape {np.shape(self.weights[g])}")
        self.reset()

    def reset(self):
        self.hidden = np.zeros(self.hidden_size)
        self.cell = np.zeros(self.hidden_size)

    def squash(self, v):
        if self.activations == "sqnl":
            return floatfamily.activate_batch("sqnl", v)
        return np.tanh(v)

    def gate(self, v):
        if self.activations == "sqnl":
            return floatfamily.activate_batch("sq_logsig", v)
        return 1 / (1 + np.exp(-v))


def lstm_step_float(cell: LstmCellFloat, x) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (cell.input_size,):
        raise DimensionMismatch(f"cell expects {cell.input_size} inputs, got shape {x.shape}")
    p = np.concatenate([x, cell.hidden])
    net = {g: cell.weights[g] @ p + cell.biases[g] for g in GATES}
    i, f, o = (cell.gate(net[g]) for g in ("input", "forget", "output"))
    c = f * cell.cell + i * cell.squash(net["candidate"])
    h = o * cell.squash(c)
    if not (np.all(np.isfinite(h)) and np.all(np.isfinite(c))):
        raise InvariantViolation("float LSTM state became non-finite")
    cell.cell, cell.hidden = c, h
    return h.copy(), c.copy()


def to_lsb(trace, R: int) -> np.ndarray:
    return np.asarray(trace, dtype=np.float64) * (1 << frac_bits(R))


def divergence(trace_a, trace_b) -> float:
    """Max |a - b| over time and element; both traces in LSB units."""
    a = np.asarray(trace_a, dtype=np.float64)
    b = np.asarray(trace_b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatch(f"trace shapes differ: {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.abs(a - b).max())


def run_fixed(cell: LstmCellFixed, xs) -> np.ndarray:
    return np.array([lstm_step_fixed(cell, x)[0] for x in xs], dtype=np.int64).reshape(len(xs), cell.hidden_size)


def run_float(cell: LstmCellFloat, xs) -> np.ndarray:
    return np.array([lstm_step_float(cell, x)[0] for x in xs]).reshape(len(xs), cell.hidden_size)


# --- fixtures ---------------------------------------------------------------

@dataclass
class LstmFixture:
    R: int
    N: int
    input_size: int
    hidden_size: int
    weights: dict[str, np.ndarray]
    biases: dict[str, np.ndarray]
    inputs: np.ndarray | None = None

    def fixed_cell(self) -> LstmCellFixed:
        layers = {g: DenseLayer(self.weights[g], self.biases[g], self.R, self.R) for g in GATES}
        return LstmCellFixed(self.R, self.input_size, self.hidden_size, layers, N=self.N)

    def float_cell(self, activations: str = "sqnl") -> LstmCellFloat:
        s = float(1 << frac_bits(self.R))
        return LstmCellFloat({g: self.weights[g] / s for g in GATES},
                             {g: self.biases[g] / (s * s) for g in GATES},
                             self.input_size, self.hidden_size, activations)

    def to_dict(self) -> dict:
        d = {
            "R": self.R,
            "N": self.N,
            "input_size": self.input_size,
            "hidden_size": self.hidden_size,
            "gates": {g: {"weights": self.weights[g].tolist(), "bias": self.biases[g].tolist()} for g in GATES},
        }
        if self.inputs is not None:
            d["inputs"] = self.inputs.tolist()
        return d


def fixture_from_dict(d: dict) -> LstmFixture:
    try:
        R = int(d["R"])
        n_in, n_h = int(d["input_size"]), int(d["hidden_size"])
        weights = {g: np.asarray(d["gates"][g]["weights"], dtype=np.int64) for g in GATES}
        biases = {g: np.asarray(d["gates"][g]["bias"], dtype=np.int64) for g in GATES}
    except (KeyError, TypeError, ValueError) as exc:
        raise SqnlError(f"malformed LSTM fixture: {exc!r}") from None
    for g in GATES:
        if weights[g].shape != (n_h, n_in + n_h) or biases[g].shape != (n_h,):
            raise DimensionMismatch(
                f"gate {g!r}: weights {weights[g].shape} / bias {biases[g].shape} do not match "
                f"input_size={n_in}, hidden_size={n_h}")
    inputs = d.get("inputs")
    if inputs is not None:
        inputs = np.asarray(inputs, dtype=np.int64).reshape(-1, n_in) if len(inputs) else np.zeros((0, n_in), np.int64)
    return LstmFixture(R, int(d.get("N", 1 << (R - 1))), n_in, n_h, weights, biases, inputs)


def load_fixture(path: str | Path) -> LstmFixture:
    return fixture_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def quantize(values, R: int) -> np.ndarray:
    """Round-to-nearest onto the 2^(R-2) grid, saturated to R bits."""
    q = np.rint(np.asarray(values, dtype=np.float64) * (1 << frac_bits(R))).astype(np.int64)
    return np.clip(q, word_min(R), word_max(R))


def random_fixture(seed: int, *, R: int = 8, input_size: int = 4, hidden_size: int = 4,
                   steps: int = 100, N: int | None = None) -> LstmFixture:
    """Weights ~ U(+-1/sqrt(hidden)) (the usual LSTM initialisation), inputs ~ U(-1, 1)."""
    rng = np.random.default_rng(seed)
    k = 1 / math.sqrt(hidden_size)
    s = 1 << frac_bits(R)
    weights = {g: quantize(rng.uniform(-k, k, (hidden_size, input_size + hidden_size)), R) for g in GATES}
    biases = {g: quantize(rng.uniform(-k, k, hidden_size), R) * s for g in GATES}
    inputs = quantize(rng.uniform(-1, 1, (steps, input_size)), R)
    return LstmFixture(R, N or (1 << (R - 1)), input_size, hidden_size, weights, biases, inputs)


def zero_fixture(*, R: int = 8, input_size: int = 4, hidden_size: int = 4, steps: int = 1) -> LstmFixture:
    z = {g: np.zeros((hidden_size, input_size + hidden_size), dtype=np.int64) for g in GATES}
    b = {g: np.zeros(hidden_size, dtype=np.int64) for g in GATES}
    return LstmFixture(R, 1 << (R - 1), input_size, hidden_size, z, b, np.zeros((steps, input_size), dtype=np.int64))


def compare(fixture: LstmFixture, steps: int | None = None, activations: str = "sqnl"):
    """Run fixed and float cells on the fixture inputs; return (fixed_trace, float_trace_lsb, divergence)."""
    xs = fixture.inputs if steps is None else fixture.inputs[:steps]
    fixed = run_fixed(fixture.fixed_cell(), xs)
    flt = to_lsb(run_float(fixture.float_cell(activations), xs / float(1 << frac_bits(fixture.R))), fixture.R)
    return fixed, flt, divergence(fixed, flt)
