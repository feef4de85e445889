"""Command-line interface.

Subcommands: rot, trace, scan, obstruct, estimate, family.  Each command
prints a single JSON document (CSV for scan) to stdout or --out.  Exit
codes: 0 success, 2 input validation error, 3 budget exhaustion (rot and
trace, when the result is undetermined).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .arith import parse_rational
from .fixtures import CIRCLE_FIXTURES
from .obstruction import (
    builtin_pair,
    gamma_map,
    is_f_obstruction,
    obstruction_input,
)
from .plmap import (
    MapValidationError,
    PLCircleMap,
    family_boshernitzan,
    family_fq,
    family_fqr,
    map_from_json,
    rotation,
)
from .renorm import DEFAULT_BIT_BUDGET, rotation_number_estimate, rotation_number_exact
from .scan import csv_text, records_json, scan, write_csv

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BUDGET = 3


class CliError(Exception):
    pass


def _load_map_file(path: str):
    try:
        with open(path) as fp:
            doc = json.load(fp)
    except OSError as exc:
        raise CliError(f"cannot read map file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"map file {path!r} is not valid JSON: {exc}") from exc
    return map_from_json(doc)


def _rational_flag(args, name: str) -> Fraction:
    raw = getattr(args, name)
    if raw is None:
        raise CliError(f"missing required flag --{name}")
    try:
        return parse_rational(raw)
    except ValueError as exc:
        raise CliError(f"flag --{name}: {exc}") from exc


def _select_circle_map(args) -> PLCircleMap:
    chosen = [
        bool(args.map),
        bool(args.family),
        bool(args.fixture),
    ]
    if sum(chosen) != 1:
        raise CliError("choose exactly one of --map, --family, --fixture")
    if args.map:
        m = _load_map_file(args.map)
        if not isinstance(m, PLCircleMap):
            raise CliError(f"map file {args.map!r} holds an interval map, need a circle map")
        return m
    if args.fixture:
        if args.fixture == "paper-gh":
            return gamma_map(builtin_pair()).circle
        try:
            return CIRCLE_FIXTURES[args.fixture]()
        except KeyError:
            raise CliError(f"unknown fixture {args.fixture!r}") from None
    if args.family == "fqr":
        return family_fqr(_rational_flag(args, "q"), _rational_flag(args, "r"))
    if args.family == "bosh":
        return family_boshernitzan(_rational_flag(args, "a"), _rational_flag(args, "b")).map
    if args.family == "fq":
        return family_fq(_rational_flag(args, "q"))
    if args.family == "rotation":
        return rotation(_rational_flag(args, "r"))
    raise CliError(f"unknown family {args.family!r}")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fp:
            fp.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _add_map_selection(p: argparse.ArgumentParser) -> None:
    p.add_argument("--map", help="map file (JSON interchange format)")
    p.add_argument("--family", choices=["fqr", "bosh", "fq", "rotation"])
    p.add_argument("--fixture", choices=sorted(CIRCLE_FIXTURES) + ["paper-gh"])
    p.add_argument("--q", help="family parameter q (p/q)")
    p.add_argument("--r", help="family parameter r (p/q)")
    p.add_argument("--a", help="family parameter a (p/q)")
    p.add_argument("--b", help="family parameter b (p/q)")


def _add_budgets(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-stages", type=int, default=1000)
    p.add_argument("--orbit-budget", type=int, default=10**7)
    p.add_argument("--bit-budget", type=int, default=DEFAULT_BIT_BUDGET)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rotlab",
        description="Exact rotation numbers of piecewise-linear circle maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_rot = sub.add_parser("rot", help="exact rotation number")
    _add_map_selection(p_rot)
    _add_budgets(p_rot)
    p_rot.add_argument("--out")

    p_trace = sub.add_parser("trace", help="renormalization trace")
    _add_map_selection(p_trace)
    _add_budgets(p_trace)
    p_trace.add_argument("--out")

    p_est = sub.add_parser("estimate", help="orbit estimate F^n(0)/n")
    _add_map_selection(p_est)
    p_est.add_argument("--iters", type=int, default=10**4)
    p_est.add_argument("--out")

    p_fam = sub.add_parser("family", help="emit a family map as JSON")
    _add_map_selection(p_fam)
    p_fam.add_argument("--out")

    p_obs = sub.add_parser("obstruct", help="classify an interval-map pair")
    p_obs.add_argument("--g", help="interval map file")
    p_obs.add_argument("--h", help="interval map file")
    p_obs.add_argument("--s", help="seed point (p/q)")
    p_obs.add_argument("--fixture", choices=["paper-gh"])
    _add_budgets(p_obs)
    p_obs.add_argument("--out")

    p_scan = sub.add_parser("scan", help="parameter sweep over the f_{q,r} grid")
    p_scan.add_argument("--q-max-den", type=int, required=True)
    p_scan.add_argument("--r-max-den", type=int, required=True)
    _add_budgets(p_scan)
    p_scan.add_argument(
        "--jobs",
        type=int,
        default=int(os.environ.get("ROTLAB_JOBS", "1")),
    )
    p_scan.add_argument("--format", choices=["csv", "json"], default="csv")
    p_scan.add_argument("--out")
    p_scan.add_argument("--summary-out", help="write per-q summary JSON here")
    p_scan.add_argument("--plot", help="render the grid figure to this file")
    p_scan.add_argument(
        "--no-timing",
        action="store_true",
        help="write 0 in elapsed_ms for bitwise-reproducible output",
    )
    return parser


def _cmd_rot(args) -> int:
    f = _select_circle_map(args)
    rot, cf, _trace = rotation_number_exact(
        f,
        max_stages=args.max_stages,
        orbit_budget=args.orbit_budget,
        bit_budget=args.bit_budget,
    )
    doc = rot.to_json()
    if cf is not None:
        doc["cf"] = cf.to_json()
        if cf.kind == "finite":
            doc["cf_length"] = cf.terms_after_zero  # partial quotients after the 0
    _emit(json.dumps(doc), args.out)
    return EXIT_BUDGET if rot.kind == "undetermined" else EXIT_OK


def _cmd_trace(args) -> int:
    f = _select_circle_map(args)
    rot, cf, trace = rotation_number_exact(
        f,
        max_stages=args.max_stages,
        orbit_budget=args.orbit_budget,
        bit_budget=args.bit_budget,
    )
    doc = trace.to_json()
    doc["rotation_number"] = rot.to_json()
    if cf is not None:
        doc["cf"] = cf.to_json()
    _emit(json.dumps(doc), args.out)
    return EXIT_BUDGET if rot.kind == "undetermined" else EXIT_OK


def _cmd_estimate(args) -> int:
    from .arith import format_rational

    f = _select_circle_map(args)
    if args.iters < 1:
        raise CliError("flag --iters must be >= 1")
    est, err = rotation_number_estimate(f, args.iters)
    _emit(
        json.dumps(
            {
                "iters": args.iters,
                "estimate": format_rational(est),
                "error_bound": format_rational(err),
                "estimate_float": float(est),
            }
        ),
        args.out,
    )
    return EXIT_OK


def _cmd_family(args) -> int:
    doc = _select_circle_map(args).to_json()
    if args.family == "bosh":
        from .arith import format_rational

        fam = family_boshernitzan(_rational_flag(args, "a"), _rational_flag(args, "b"))
        doc["meta"] = {"k1": format_rational(fam.k1), "k2": format_rational(fam.k2)}
    _emit(json.dumps(doc), args.out)
    return EXIT_OK


def _cmd_obstruct(args) -> int:
    if args.fixture:
        inp = builtin_pair()
    else:
        if not (args.g and args.h and args.s):
            raise CliError("need --g, --h and --s (or --fixture paper-gh)")
        g = _load_map_file(args.g)
        h = _load_map_file(args.h)
        if isinstance(g, PLCircleMap) or isinstance(h, PLCircleMap):
            raise CliError("obstruct needs interval maps (kind \"interval\")")
        try:
            s = parse_rational(args.s)
        except ValueError as exc:
            raise CliError(f"flag --s: {exc}") from exc
        inp = obstruction_input(g, h, s)
    verdict = is_f_obstruction(
        inp,
        max_stages=args.max_stages,
        orbit_budget=args.orbit_budget,
        bit_budget=args.bit_budget,
    )
    _emit(json.dumps(verdict.to_json()), args.out)
    return EXIT_BUDGET if verdict.kind == "undetermined" else EXIT_OK


def _cmd_scan(args) -> int:
    records, summaries = scan(
        args.q_max_den,
        args.r_max_den,
        max_stages=args.max_stages,
        orbit_budget=args.orbit_budget,
        bit_budget=args.bit_budget,
        jobs=args.jobs,
        timing=not args.no_timing,
    )
    if args.format == "csv":
        _emit(csv_text(records), args.out)
    else:
        _emit(json.dumps(records_json(records)), args.out)
    if args.summary_out:
        with open(args.summary_out, "w") as fp:
            json.dump([s.to_json() for s in summaries], fp)
    if args.plot:
        from .plotting import render_scan_figure

        render_scan_figure(records, args.plot)
    return EXIT_OK


_COMMANDS = {
    "rot": _cmd_rot,
    "trace": _cmd_trace,
    "estimate": _cmd_estimate,
    "family": _cmd_family,
    "obstruct": _cmd_obstruct,
    "scan": _cmd_scan,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else 0
    try:
        return _COMMANDS[args.command](args)
    except (CliError, MapValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
