"""Regenerate the JSON fixtures under src/sqnl/data.

Gate-usage rows are transcribed constants. Derived values come from the
rational-arithmetic oracles in sqnl.goldens / sqnl.closedform, not from the
generator under test, and are frozen here once.
"""
import json
from fractions import Fraction
from pathlib import Path

from sqnl import closedform, nn
from sqnl.generator import GeneratorConfig
from sqnl.goldens import brute_force_output

DATA = Path(__file__).resolve().parents[1] / "src" / "sqnl" / "data"

GATE_USAGE = [
    ("register", 1, 4), ("full_adder", 1, 9),
    ("adder", 8, 72), ("adder", 9, 81),
    ("twos_complement", 8, 80), ("twos_complement", 9, 90),
    ("mux2", 1, 3),
    ("lut_one_sided", 8, 2667), ("lut_one_sided", 12, 67551),
    ("lut_two_sided", 8, 6120), ("lut_two_sided", 12, 147420),
    ("booth", 8, 754), ("booth", 12, 1124),
]


def rat(q: Fraction):
    return int(q) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def case(cid, module, config, inp, expected, tag, oracle=None):
    return {"id": cid, "module": module, "config": config, "input": inp,
            "expected": expected, "tag": tag, "oracle": oracle}


def gate_usage():
    return [case(f"gates-{k}-{w}", "resources", {"kind": k, "width": w}, None, g, "PUBLISHED")
            for k, w, g in GATE_USAGE]


def generator_cases():
    bf = "goldens.brute_force_output (literal rational summation)"
    out = [
        case("seq-r8-n8", "generator", {"op": "make_sequence", "R": 8, "N": 8}, None,
             list(range(-56, 57, 16)), "DERIVED", "stride 2*U_MAX/N = 16, midpoint anchor"),
        case("sym-r8-n8-zero", "generator", {"R": 8, "N": 8}, 0, 0, "TRIVIAL"),
        case("gated-r8-n128-40-40", "generator", {"R": 8, "N": 128, "mode": "gated", "c_scale": 40}, 40, 24, "PUBLISHED"),
    ]
    for R, N, mode, n, extra in [(8, 128, "symmetric", 64, {}), (8, 8, "symmetric", 37, {}),
                                 (8, 4, "symmetric", -90, {}), (8, 8, "logsqnl", 17, {}),
                                 (8, 128, "asymmetric", 20, {"alpha": 32}), (6, 32, "gated", -9, {"c_scale": 5})]:
        cfg = GeneratorConfig(R, N, mode, extra.get("alpha", 0))
        f = brute_force_output(n, cfg, extra.get("c_scale"))
        out.append(case(f"{mode}-r{R}-n{N}-{n}", "generator", {"R": R, "N": N, "mode": mode, **extra}, n, f, "DERIVED", bf))
    return out


def closedform_cases():
    g64 = closedform.GatedParams(8, 64)
    g40 = closedform.GatedParams(8, 40)
    exact = "exact rational evaluation of the closed form"
    return [
        case("sqnl-64", "closedform", {"op": "sqnl_exact", "R": 8}, 64, 48, "DERIVED", "64 - 64^2/256"),
        case("sqnl-0", "closedform", {"op": "sqnl_exact", "R": 8}, 0, 0, "TRIVIAL"),
        case("gated-40-64", "closedform", {"op": "gated_exact", "R": 8, "C": 64}, 40,
             rat(closedform.gated_exact(40, g64)), "PUBLISHED"),
        case("gated-40-40", "closedform", {"op": "gated_exact", "R": 8, "C": 40}, 40,
             rat(closedform.gated_exact(40, g40)), "PUBLISHED"),
        case("gated-error-40-40", "closedform", {"op": "gated_error_exact", "R": 8, "C": 40}, 40,
             rat(closedform.gated_error_exact(40, g40)), "DERIVED", exact),
        case("asym-sqlu-10", "closedform", {"op": "asym_exact", "R": 8, "alpha": 32}, -10,
             rat(closedform.asym_exact(-10, 8, 32)), "DERIVED", exact),
    ]


def dump(name, obj):
    (DATA / name).write_text(json.dumps(obj, indent=1) + "\n", encoding="utf-8")


if __name__ == "__main__":
    DATA.mkdir(exist_ok=True)
    dump("gate_usage.json", gate_usage())
    dump("generator.json", generator_cases())
    dump("closedform.json", closedform_cases())
    dump("lstm_zero.json", nn.zero_fixture().to_dict())
    dump("lstm_rand.json", nn.random_fixture(0).to_dict())
