"""Golden-case store and the literal rational-arithmetic oracle for the generator."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources as _res
from pathlib import Path
from typing import Any

from .errors import GoldenSchemaError, SqnlError
from .generator import GeneratorConfig, GeneratorMode

TAGS = ("PUBLISHED", "TRIVIAL", "DERIVED")
FIELDS = ("id", "module", "config", "input", "expected", "tag", "oracle")


def _clip(x, y_lo, y_hi):
    if x <= y_lo:
        return y_lo
    if x >= y_hi:
        return y_hi
    return x


def brute_force_average(n: int, cfg: GeneratorConfig, c_scale: int | None = None) -> Fraction:
    """Literal generator average in exact rationals; shares no code with the generator.

    Returns the pre-rounding average of the summand (for LogSQNL, of the
    underlying symmetric generator).
    """
    if cfg.R > 12:
        raise SqnlError("brute force oracle is limited to R <= 12")
    u_max = Fraction(2 ** (cfg.R - 2))
    m = 2 * u_max
    stride = 2 * u_max / cfg.N
    offset = stride / 2 if cfg.anchor.value == "midpoint" else Fraction(0)
    if cfg.mode is GeneratorMode.ASYMMETRIC:
        offsets = [-2 * u_max + offset + k * stride + cfg.alpha for k in range(cfg.N)]
        lo, hi = -u_max, m
    else:
        offsets = [-u_max + offset + k * stride for k in range(cfg.N)]
        if cfg.mode is GeneratorMode.GATED:
            if c_scale is None:
                raise SqnlError("gated mode requires c_scale")
            lo, hi = Fraction(-c_scale), Fraction(c_scale)
        else:
            lo, hi = -u_max, u_max
    total = Fraction(0)
    for u in offsets:
        total += _clip(_clip(n + u, lo, hi) - u, -m, m)
    return total / cfg.N


def brute_force_output(n: int, cfg: GeneratorConfig, c_scale: int | None = None) -> int:
    """Floor-rounded oracle output, including the LogSQNL post-map."""
    a = brute_force_average(n, cfg, c_scale)
    f = a.numerator // a.denominator
    if cfg.mode is GeneratorMode.LOGSQNL:
        f = f // 2 + 2 ** (cfg.R - 3)
    return f


@dataclass(frozen=True)
class GoldenCase:
    id: str
    module: str
    config: dict[str, Any]
    input: Any
    expected: Any
    tag: str
    oracle: str | None = None
    extra: dict[str, Any] = field(default_factory=dict)


def parse_value(v):
    """Expected values may be ints, floats or exact rationals written ``"p/q"``."""
    if isinstance(v, str) and "/" in v:
        return Fraction(v)
    if isinstance(v, list):
        return [parse_value(x) for x in v]
    return v


def _validate(raw: Any, index: int) -> GoldenCase:
    if not isinstance(raw, dict):
        raise GoldenSchemaError(f"case #{index} is not an object")
    cid = raw.get("id", f"#{index}")
    missing = [k for k in FIELDS if k not in raw and k != "oracle"]
    if missing:
        raise GoldenSchemaError(f"case {cid}: missing fields {missing}")
    if raw["tag"] not in TAGS:
        raise GoldenSchemaError(f"case {cid}: unknown tag {raw['tag']!r}")
    if raw["tag"] == "DERIVED" and not raw.get("oracle"):
        raise GoldenSchemaError(f"case {cid}: DERIVED cases must name their oracle")
    if not isinstance(raw["config"], dict):
        raise GoldenSchemaError(f"case {cid}: config must be an object")
    extra = {k: v for k, v in raw.items() if k not in FIELDS}
    return GoldenCase(str(raw["id"]), raw["module"], raw["config"], raw["input"],
                      parse_value(raw["expected"]), raw["tag"], raw.get("oracle"), extra)


def load_goldens(path: str | Path) -> list[GoldenCase]:
    text = Path(path).read_text(encoding="utf-8")
    if not text.strip():
        return []
    data = json.loads(text)
    if not isinstance(data, list):
        raise GoldenSchemaError("golden file must hold a JSON list")
    return [_validate(raw, i) for i, raw in enumerate(data)]


def bundled(name: str) -> Path:
    """Path of a golden/fixture file shipped in ``sqnl/data``."""
    return Path(str(_res.files("sqnl") / "data" / name))


def run_case(case: GoldenCase):
    """Compute the actual value for a golden case with the library under test."""
    from . import closedform, generator, resources
    from .fixedpoint import Word

    cfg = case.config
    if case.module == "resources":
        return resources.gate_cost(resources.Block(cfg["kind"], cfg.get("width", 1))) * cfg.get("count", 1)
    if case.module == "closedform":
        op = cfg["op"]
        if op == "sqnl_exact":
            return closedform.sqnl_exact(case.input, cfg["R"])
        if op == "asym_exact":
            return closedform.asym_exact(case.input, cfg["R"], cfg["alpha"])
        if op == "gated_exact":
            return closedform.gated_exact(case.input, closedform.GatedParams(cfg["R"], cfg["C"]))
        if op == "gated_error_exact":
            return closedform.gated_error_exact(case.input, closedform.GatedParams(cfg["R"], cfg["C"]))
        raise GoldenSchemaError(f"case {case.id}: unknown closedform op {op!r}")
    if case.module == "generator":
        gcfg = GeneratorConfig(cfg["R"], cfg["N"], cfg.get("mode", "symmetric"), cfg.get("alpha", 0))
        if "op" in cfg and cfg["op"] == "make_sequence":
            return [v if v.denominator != 1 else int(v) for v in generator.make_sequence(gcfg).values]
        return generator.evaluate(Word(case.input, gcfg.R), gcfg, cfg.get("c_scale")).value
    raise GoldenSchemaError(f"case {case.id}: unknown module {case.module!r}")
