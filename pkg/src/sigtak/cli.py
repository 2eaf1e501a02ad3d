"""Command-line front end: exact rational I/O, JSON/CSV output, fixed seeds.

Exit codes: 0 success, 2 usage or domain error, 3 budget error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import humps, levelsets, localsets, stats
from ._kernel import backend, grid_values
from .dyadics import DyadicRational
from .errors import BudgetError, SigtakError
from .evaluate import eval_dyadic, eval_enclosure
from .signs import classify_height, extrema, parse_spec


def _spec(text: str):
    try:
        return parse_spec(text)
    except SigtakError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _rational(text: str) -> Fraction:
    try:
        if "/2^" in text:
            d = DyadicRational.parse(text)
            return d.as_fraction
        return Fraction(text)
    except (ValueError, ZeroDivisionError, SigtakError):
        raise argparse.ArgumentTypeError(f"not a rational ('p/q' or 'k/2^n'): {text!r}")


def _dyadic(text: str) -> DyadicRational:
    try:
        return DyadicRational.parse(text)
    except SigtakError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _emit_json(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _emit_csv(header, rows) -> None:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _cmd_extrema(args) -> int:
    report = extrema(args.seq)
    _emit_json(
        {
            "max": str(report.max_value),
            "min": str(report.min_value),
            "height": str(report.height),
            "class": classify_height(args.seq).value,
        }
    )
    return 0


def _cmd_eval(args) -> int:
    den = args.x.denominator
    if den & (den - 1) == 0:
        print(eval_dyadic(args.seq, args.x))
    else:
        _emit_json(eval_enclosure(args.seq, args.x, args.depth).to_json())
    return 0


def _cmd_plot(args) -> int:
    values = grid_values(args.seq.signs(args.depth), args.depth)
    rows = []
    for j, v in enumerate(values.tolist()):
        rows.append([str(DyadicRational(j, args.depth)), str(DyadicRational(v, args.depth))])
    _emit_csv(["x", "f"], rows)
    return 0


def _cmd_humps(args) -> int:
    result = humps.enumerate_humps(
        args.seq, args.max_order,
        only_principal=args.principal, generation=args.generation,
    )
    if args.format == "csv":
        _emit_csv(
            ["base", "order", "generation", "principal", "y_base", "proj_lo", "proj_hi"],
            [h.csv_row() for h in result],
        )
    else:
        _emit_json(
            [
                {
                    "base": str(h.base),
                    "order": h.order,
                    "generation": h.generation,
                    "principal": h.principal,
                    "y_base": str(h.y_base),
                    "projection": humps.hump_projection(h).to_json(),
                }
                for h in result
            ]
        )
    return 0


def _cmd_levelset(args) -> int:
    cover = levelsets.level_cover(args.seq, args.y, args.depth)
    if args.format == "csv":
        _emit_csv(
            ["lo", "hi"],
            [[str(lo), str(hi)] for lo, hi in cover.intervals()],
        )
    else:
        _emit_json(cover.to_json())
    return 0


def _cmd_solve_x(args) -> int:
    _emit_json(levelsets.solve_on_X(args.seq, args.y, args.tol_bits).to_json())
    return 0


def _cmd_witness(args) -> int:
    _emit_json(levelsets.non_monotonicity_witness(args.seq, args.lo, args.hi).to_json())
    return 0


def _cmd_local_count(args) -> int:
    report = localsets.count_local_level_sets(args.seq, args.y, args.max_order)
    if args.format == "csv":
        _emit_csv(["y", "max_order", "count", "boundary", "balanced"], [report.csv_row()])
    else:
        _emit_json(report.to_json())
    return 0


def _cmd_local_avg(args) -> int:
    report = stats.average_local_count(args.seq, args.samples, args.max_order, args.seed)
    _emit_json(report.to_json())
    return 0


def _cmd_cardinality(args) -> int:
    report = stats.cardinality_histogram(args.seq, args.samples, args.depth, args.seed)
    if args.format == "csv":
        _emit_csv(
            ["component_count", "frequency"],
            [[str(k), str(v)] for k, v in sorted(report.histogram.items())],
        )
    else:
        _emit_json(report.to_json())
    return 0


def _cmd_banach(args) -> int:
    value = stats.banach_lower_bound(args.seq, args.depth, args.grid)
    _emit_json(
        {
            "depth": args.depth,
            "grid": args.grid,
            "value": str(value),
        }
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sigtak",
        description="Exact computation with signed Takagi functions "
        "(sign specs like '(+)', '-(+)', '(+--)'; rationals as 'p/q' or 'k/2^n').",
    )
    parser.add_argument("--version", action="version", version=f"sigtak 0.1.0 [{backend()}]")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        p.add_argument("seq", type=_spec, help="sign-spec string")
        return p

    add("extrema", _cmd_extrema, "exact max/min/height and height class")

    p = add("eval", _cmd_eval, "evaluate f at an exact rational")
    p.add_argument("x", type=_rational)
    p.add_argument("--depth", type=int, default=30, help="enclosure depth for non-dyadic x")

    p = add("plot", _cmd_plot, "CSV of (x, f(x)) over the dyadic grid 2^-depth")
    p.add_argument("--depth", type=int, default=10)

    p = add("humps", _cmd_humps, "enumerate humps with exact projections")
    p.add_argument("--max-order", type=int, default=4)
    p.add_argument("--principal", action="store_true")
    p.add_argument("--generation", type=int, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = add("levelset", _cmd_levelset, "sound interval cover of a level set")
    p.add_argument("y", type=_rational)
    p.add_argument("--depth", type=int, default=16)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = add("solve-x", _cmd_solve_x, "skeleton-set solution of f(x) = y")
    p.add_argument("y", type=_rational)
    p.add_argument("--tol-bits", type=int, default=20)

    p = add("witness", _cmd_witness, "non-monotonicity witness triple inside [lo, hi]")
    p.add_argument("lo", type=_dyadic)
    p.add_argument("hi", type=_dyadic)

    p = add("local-count", _cmd_local_count, "local level sets inside L_f(y), up to a cutoff")
    p.add_argument("y", type=_rational)
    p.add_argument("--max-order", type=int, default=12)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = add("local-avg", _cmd_local_avg, "Monte Carlo average local-level-set count")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--max-order", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)

    p = add("cardinality", _cmd_cardinality, "stabilization histogram of component counts")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--depth", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = add("banach", _cmd_banach, "grid lower bound for the indicatrix integral")
    p.add_argument("--depth", type=int, default=16)
    p.add_argument("--grid", type=int, default=1024)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return args.fn(args)
    except BudgetError as exc:
        print(f"sigtak: budget error: {exc}", file=sys.stderr)
        return 3
    except SigtakError as exc:
        print(f"sigtak: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
