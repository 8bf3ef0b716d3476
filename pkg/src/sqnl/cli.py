"""Command-line front end: ``sqnl {map,deviate,estimate,fit,lstm}``.

Every subcommand writes one record file (CSV with a header row, or JSON
holding the same records) and prints a one-line summary. Relative ``--out``
paths resolve against ``$SQNL_OUTPUT_DIR`` when it is set. ``--out -`` writes
the records to stdout instead.

Exit codes: 0 ok, 2 bad arguments, 3 domain/precondition error, 4 internal
invariant violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import analysis, dither, nn, resources
from .errors import InvariantViolation, SqnlError
from .generator import GeneratorConfig, map_all

OUTPUT_DIR_ENV = "SQNL_OUTPUT_DIR"
EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_INTERNAL = 0, 2, 3, 4


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    out: str
    format: str = "csv"
    R: int | None = None
    N: int | None = None
    mode: str | None = None
    alpha: int = 0
    c_scale: int | None = None
    seed: int = 0
    oversample: int | None = None

    def generator(self) -> GeneratorConfig:
        return GeneratorConfig(self.R, self.N, self.mode or "symmetric", self.alpha)

    def output_path(self) -> Path | None:
        if self.out == "-":
            return None
        p = Path(self.out)
        base = os.environ.get(OUTPUT_DIR_ENV)
        if base and not p.is_absolute():
            p = Path(base) / p
        return p


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def render(records: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(records, indent=1, default=_fmt) + "\n"
    buf = io.StringIO()
    if records:
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(records[0].keys())
        for r in records:
            w.writerow(_fmt(v) for v in r.values())
    return buf.getvalue()


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def emit(rc: RunConfig, records: list[dict], suffix: str = "") -> None:
    text = render(records, rc.format)
    path = rc.output_path()
    if path is None:
        sys.stdout.write(text)
        return
    if suffix:
        path = path.with_name(f"{path.stem}{suffix}{path.suffix}")
    write_atomic(path, text)


def _ratio(q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# --- subcommands ------------------------------------------------------------

def cmd_map(args) -> str:
    rc = RunConfig("map", args.out, args.format, args.r, args.n, args.mode, args.alpha, args.c)
    cfg = GeneratorConfig(rc.R, rc.N, rc.mode, rc.alpha, args.anchor)
    table = map_all(cfg, rc.c_scale)
    emit(rc, [{"n": int(n), "f": int(f)} for n, f in zip(table.inputs, table.outputs)])
    return f"map R={cfg.R} N={cfg.N} mode={cfg.mode.value}: {len(table)} rows, f in [{table.outputs.min()}, {table.outputs.max()}]"


def cmd_deviate(args) -> str:
    rc = RunConfig("deviate", args.out, args.format, args.r, args.n)
    prof = analysis.deviation_profile(rc.generator())
    emit(rc, [{"n": int(n), "deviation": _ratio(d), "lsb": int(e)}
              for n, d, e in zip(prof.inputs, prof.deviation, prof.lsb)])
    hist = analysis.deviation_histogram(prof, args.bins)
    emit(rc, [{"lo": _ratio(hist.edges[i]), "hi": _ratio(hist.edges[i + 1]), "count": c}
              for i, c in enumerate(hist.counts)], suffix="_hist")
    return (f"deviate R={prof.R} N={prof.N}: max|deviation|={float(prof.max_abs):g} LSB "
            f"zero_fraction={prof.zero_bit_fraction:.6f} max_lsb_error={prof.max_abs_lsb}")


def cmd_estimate(args) -> str:
    rc = RunConfig("estimate", args.out, args.format, args.r, args.n)
    if args.block:
        if rc.R is None:
            raise SqnlError("--block needs --r")
        b = resources.Block(args.block, rc.R)
        records = [{"label": f"{b.kind}{b.width}", "gates": resources.gate_cost(b)}]
    elif args.bom:
        bom = resources.load_bom(args.bom)
        records = [{"label": bom.label, "gates": resources.estimate(bom)}]
    else:
        if rc.R is None:
            raise SqnlError("--methods needs --r")
        records = [{"label": b.label, "gates": resources.estimate(b)}
                   for b in resources.method_boms(rc.R, rc.N or 8)]
    emit(rc, records)
    return "estimate: " + " ".join(f"{r['label']}={r['gates']}" for r in records)


def cmd_fit(args) -> str:
    rc = RunConfig("fit", args.out, args.format, seed=args.seed, oversample=args.oversample)
    if args.selftest:
        xs = np.linspace(-args.span, args.span, args.points)
        res = dither.fit_tansig(xs, np.tanh(xs))
    else:
        cfg = dither.DitherConfig(oversample=rc.oversample, seed=rc.seed)
        res = dither.fit_simulated(cfg, points=args.points, span=args.span)
    emit(rc, [{"a": res.a, "b": res.b, "rmse": res.rmse, "iterations": res.iterations,
               "converged": res.converged, "seed": rc.seed, "oversample": rc.oversample}])
    return f"fit: a={res.a:.4f} b={res.b:.4f} rmse={res.rmse:.4f} converged={res.converged}"


def cmd_lstm(args) -> str:
    rc = RunConfig("lstm", args.out, args.format, seed=args.seed)
    if args.fixture:
        fx = nn.load_fixture(args.fixture)
    else:
        fx = nn.random_fixture(rc.seed, steps=args.steps or 100)
    if fx.inputs is None:
        fx.inputs = nn.quantize(np.random.default_rng(rc.seed).uniform(-1, 1, (args.steps or 1, fx.input_size)), fx.R)
    steps = len(fx.inputs) if args.steps is None else args.steps
    if steps > len(fx.inputs):
        raise SqnlError(f"fixture holds {len(fx.inputs)} input steps, {steps} requested")
    xs = fx.inputs[:steps]
    fixed = nn.run_fixed(fx.fixed_cell(), xs)
    records = [{"step": t, **{f"h{j}": int(v) for j, v in enumerate(row)}} for t, row in enumerate(fixed)]
    summary = f"lstm R={fx.R} H={fx.hidden_size} steps={steps}"
    if args.compare_float:
        flt = nn.to_lsb(nn.run_float(fx.float_cell(), xs / float(1 << nn.frac_bits(fx.R))), fx.R)
        for rec, row in zip(records, flt):
            rec.update({f"float_h{j}": float(v) for j, v in enumerate(row)})
        summary += f" divergence={nn.divergence(fixed, flt):.4f} LSB"
    emit(rc, records)
    return summary


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sqnl", description="Counter-based SQNL activation toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, default_out):
        sp.add_argument("--out", default=default_out, help="output file ('-' for stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")

    m = sub.add_parser("map", help="write the full input->output mapping")
    m.add_argument("--r", type=int, required=True, help="word width R")
    m.add_argument("--n", type=int, required=True, help="offsets per activation N")
    m.add_argument("--mode", choices=("symmetric", "logsqnl", "asymmetric", "gated"), default="symmetric")
    m.add_argument("--alpha", type=int, default=0, help="asymmetric offset alpha")
    m.add_argument("--c", type=int, default=None, help="gated saturation level C")
    m.add_argument("--anchor", choices=("midpoint", "endpoint"), default="midpoint")
    common(m, "map.csv")
    m.set_defaults(func=cmd_map)

    d = sub.add_parser("deviate", help="deviation profile and histogram against the closed form")
    d.add_argument("--r", type=int, required=True)
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--bins", type=int, default=16)
    common(d, "deviate.csv")
    d.set_defaults(func=cmd_deviate)

    e = sub.add_parser("estimate", help="NAND-equivalent gate estimates")
    g = e.add_mutually_exclusive_group(required=True)
    g.add_argument("--block", choices=resources.KINDS)
    g.add_argument("--bom", help="BOM JSON file")
    g.add_argument("--methods", action="store_true", help="counter vs multiplier vs LUT")
    e.add_argument("--r", type=int)
    e.add_argument("--n", type=int, default=8)
    common(e, "estimate.csv")
    e.set_defaults(func=cmd_estimate)

    f = sub.add_parser("fit", help="simulate the dithered limiter and fit the tanh-like model")
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--oversample", type=int, default=1024)
    f.add_argument("--points", type=int, default=201)
    f.add_argument("--span", type=float, default=1.5)
    f.add_argument("--selftest", action="store_true", help="fit exact tanh data instead")
    common(f, "fit.csv")
    f.set_defaults(func=cmd_fit)

    lst = sub.add_parser("lstm", help="run the fixed-point SQNL LSTM cell")
    lst.add_argument("--fixture", help="weight fixture JSON (default: seeded random cell)")
    lst.add_argument("--steps", type=int, default=None)
    lst.add_argument("--compare-float", action="store_true")
    lst.add_argument("--seed", type=int, default=0)
    common(lst, "lstm.csv")
    lst.set_defaults(func=cmd_lstm)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)  # exits 2 on bad arguments
    try:
        summary = args.func(args)
    except InvariantViolation as exc:
        print(f"sqnl {args.command}: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (SqnlError, OSError, json.JSONDecodeError) as exc:
        print(f"sqnl {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    print(summary, file=sys.stderr if args.out == "-" else sys.stdout)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
