"""Command-line front end: ``stoprule {values,asymptotics,stats,simulate,reproduce}``.

Tables go to stdout as CSV (default) or JSON; diagnostics go to stderr.
Exit status is 2 for bad parameters and 3 when the quadrature fails.
"""

import argparse
import csv
import dataclasses
import json
import math
import os
import sys

from .asymptotics import asymptotic_stats, asymptotic_value
from .distributions import parse_spec
from .simulator import SimulationConfig, simulate
from .stopping_stats import exact_stats
from .tables import DEFAULT_N, TABLE_IDS, reproduce
from .value_recurrence import NumericError, value_sequence, values_at

EXIT_PARAMETER = 2
EXIT_NUMERIC = 3
SEED_ENV = "STOPRULE_SEED"


def _fmt(x):
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def _jsonable(x):
    # JSON has no NaN/inf
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _emit(rows, fmt, out, columns=None):
    if fmt == "json":
        json.dump(_jsonable(rows), out, indent=2)
        out.write("\n")
        return
    if isinstance(rows, dict):
        rows = [rows]
    columns = columns or list(rows[0])
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in columns])


def _ratio(a, b):
    return a / b if b and math.isfinite(b) else math.nan


def cmd_values(args, out):
    spec = parse_spec(args.dist)
    if args.checkpoints:
        vals = values_at(spec, args.checkpoints)
    else:
        vs = value_sequence(spec, args.N)
        vals = {n: vs[n] for n in range(1, vs.N + 1)}
    rows = []
    for n, v in vals.items():
        asym = asymptotic_value(spec, n) if n >= 2 else math.nan
        rows.append({"n": n, "v_n": v, "v_asymptotic": asym, "ratio": _ratio(v, asym)})
    _emit(rows, args.format, out, ["n", "v_n", "v_asymptotic", "ratio"])


def cmd_asymptotics(args, out):
    spec = parse_spec(args.dist)
    a = asymptotic_stats(spec, args.N)
    doc = {"family": spec.family, "params": spec.params, "N": args.N, "lambda": a.lam,
           "E_formula_value": a.expectation, "Var_formula_value": a.variance}
    _emit(doc, "json", out)


def cmd_stats(args, out):
    spec = parse_spec(args.dist)
    ex = exact_stats(spec, args.N)
    asym = asymptotic_stats(spec, args.N)
    row = {"N": args.N, "E_exact": ex.expectation, "E_asym": asym.expectation,
           "Var_exact": ex.variance, "Var_asym": asym.variance,
           "relerr_E": ex.expectation / asym.expectation - 1.0,
           "relerr_Var": ex.variance / asym.variance - 1.0}
    _emit(row if args.format == "json" else [row], args.format, out)


def cmd_simulate(args, out):
    spec = parse_spec(args.dist)
    config = SimulationConfig(spec, args.N, args.replicas, seed=args.seed, workers=args.workers)
    est = simulate(config)
    doc = {"dist": str(spec), "N": args.N, **dataclasses.asdict(est)}
    _emit(doc if args.format == "json" else [doc], args.format, out)


def cmd_reproduce(args, out):
    _emit(reproduce(args.table, args.N), args.format, out)


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _int_list(text):
    try:
        values = [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError("checkpoints must be positive integers")
    return values


def _seed(text):
    value = int(text, 0)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits, got {text}")
    return value


def _default_seed():
    text = os.environ.get(SEED_ENV)
    if not text:
        return 0
    try:
        return _seed(text)
    except (ValueError, argparse.ArgumentTypeError):
        print(f"stoprule: error: {SEED_ENV}={text!r} is not a valid seed", file=sys.stderr)
        raise SystemExit(EXIT_PARAMETER)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stoprule", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help_text, fmt=True):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        if fmt:
            p.add_argument("--format", choices=("csv", "json"), default="csv")
        return p

    p = command("values", cmd_values, "threshold sequence v_n against its asymptote")
    p.add_argument("--dist", required=True, help="distribution, e.g. exponential:beta=1")
    p.add_argument("--N", type=_positive_int, default=DEFAULT_N)
    p.add_argument("--checkpoints", type=_int_list, help="only report these n, e.g. 1024,65536")

    p = command("asymptotics", cmd_asymptotics, "lambda and the limiting E/Var (JSON)", fmt=False)
    p.add_argument("--dist", required=True)
    p.add_argument("--N", type=_positive_int, default=DEFAULT_N)

    p = command("stats", cmd_stats, "exact E/Var of tau_N against the asymptotic formulas")
    p.add_argument("--dist", required=True)
    p.add_argument("--N", type=_positive_int, default=DEFAULT_N)

    p = command("simulate", cmd_simulate, "Monte Carlo estimate of E/Var of tau_N")
    p.set_defaults(format="json")
    p.add_argument("--dist", required=True)
    p.add_argument("--N", type=_positive_int, required=True)
    p.add_argument("--replicas", type=_positive_int, default=10 ** 5)
    p.add_argument("--seed", type=_seed, default=None, help=f"default 0, or ${SEED_ENV}")
    p.add_argument("--workers", type=_positive_int, default=1)

    p = command("reproduce", cmd_reproduce, "rows of a summary table next to exact values")
    p.add_argument("--table", type=int, choices=TABLE_IDS, required=True)
    p.add_argument("--N", type=_positive_int, default=DEFAULT_N)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    if getattr(args, "seed", 0) is None:
        args.seed = _default_seed()
    try:
        args.func(args, out)
    except NumericError as exc:
        print(f"stoprule: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"stoprule: error: {exc}", file=sys.stderr)
        return EXIT_PARAMETER
    return 0


if __name__ == "__main__":
    sys.exit(main())
