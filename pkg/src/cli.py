# src/cli.py - Command-line front end: check, gamma2, ne2, surface, verify-examples, catalog

import argparse
import logging
import sys
from typing import Dict, List, Optional

import pandas as pd

from catalog import get_entry, list_entries
from config import __version__, setup_logging, setup_warnings
from fan import Cone, require_valid
from gamma2 import gamma2_dot_quad, ne2_generators
from lattice import InternalConsistencyError, ToricError
from reports import build_report, has_violations, rational, render_json, render_text
from surfaces import gamma2_surface, surface_self_intersections
from utils import dump_fan, load_fan, save_fan
from verification import run_example_checks

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INVARIANT = 3

ALPHA_CAVEAT = "(value is γ₂·S up to an unknown positive factor; only its sign is intrinsic)"


def _parse_tau(text: str) -> Cone:
    if not text.strip():
        return Cone(())
    try:
        return Cone(tuple(int(x) for x in text.split(",")))
    except ValueError:
        raise ToricError(f"--tau expects comma-separated ray indices, got '{text}'")


def _parse_params(items: List[str]) -> Dict[str, int]:
    params = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise ToricError(f"--param expects key=value, got '{item}'")
        try:
            params[key] = int(value)
        except ValueError:
            raise ToricError(f"--param {key} must be an integer, got '{value}'")
    return params


def cmd_check(args) -> int:
    if args.samples is not None and args.samples < 0:
        raise ToricError(f"--samples must be nonnegative, got {args.samples}")
    fan = load_fan(args.fan_file)
    report = build_report(fan, deep=args.deep, samples=args.samples, seed=args.seed)
    sys.stdout.write(render_json(report) if args.json else render_text(report))
    if not report["structural"]["valid"]:
        return EXIT_INPUT
    return EXIT_INVARIANT if has_violations(report) else EXIT_OK


def cmd_gamma2(args) -> int:
    fan = load_fan(args.fan_file)
    require_valid(fan)
    value = gamma2_dot_quad(fan, _parse_tau(args.tau))
    sign = "positive" if value > 0 else ("zero" if value == 0 else "negative")
    print(f"γ₂·S = {rational(value)} ({sign})")
    print(ALPHA_CAVEAT)
    return EXIT_OK


def cmd_ne2(args) -> int:
    fan = load_fan(args.fan_file)
    require_valid(fan)
    gens = ne2_generators(fan)
    print(f"x-side (m={gens.m}): {list(gens.x_order)}   ratios d/a: {[rational(r) for r in gens.x_ratios]}")
    print(f"y-side (n={gens.n}): {list(gens.y_order)}   ratios c/b: {[rational(r) for r in gens.y_ratios]}")
    for name, cone in (("S1", gens.s1), ("S2", gens.s2), ("S3", gens.s3)):
        print(f"{name}: {'absent' if cone is None else list(cone.ray_indices)}")
    return EXIT_OK


def cmd_surface(args) -> int:
    fan = load_fan(args.fan_file)
    require_valid(fan)
    squares = surface_self_intersections(fan)
    table = pd.DataFrame([{"ray": v, "generator": list(fan.rays[v]), "D^2": rational(x)}
                          for v, x in squares.items()])
    print(table.to_string(index=False))
    print(f"γ₂ = {rational(gamma2_surface(fan))}")
    return EXIT_OK


def cmd_verify_examples(args) -> int:
    results = run_example_checks()
    print(results.to_string(index=False))
    failed = int((~results["passed"]).sum())
    if failed:
        print(f"❌ {failed} of {len(results)} checks failed")
        return EXIT_INVARIANT
    print(f"✅ All {len(results)} checks passed")
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.catalog_command == "list":
        table = pd.DataFrame([{"name": name, "parameters": ", ".join(f"{k}={v}" for k, v in params.items())}
                              for name, params in list_entries()])
        print(table.to_string(index=False))
        return EXIT_OK

    entry = get_entry(args.name, **_parse_params(args.param))
    if args.output:
        path = save_fan(entry.fan, args.output)
        print(f"💾 Saved {entry.name} to {path}")
    else:
        sys.stdout.write(dump_fan(entry.fan))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gamma2_check",
        description="γ₂-positivity checks for complete simplicial toric varieties",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python3 gamma2_check.py catalog emit terminal-fano-4fold --output data/fano4.json
  python3 gamma2_check.py check data/fano4.json --json
  python3 gamma2_check.py gamma2 data/fano4.json --tau 4,5
  python3 gamma2_check.py verify-examples
        """,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="Full report for a fan file")
    p.add_argument("fan_file")
    p.add_argument("--json", action="store_true", help="Machine-readable output")
    deep = p.add_mutually_exclusive_group()
    deep.add_argument("--deep", dest="deep", action="store_true", default=None,
                      help="Force the pairwise cone-overlap check")
    deep.add_argument("--no-deep", dest="deep", action="store_false", help="Skip the pairwise check")
    p.add_argument("--samples", type=int, help="Random directions for the point-location check (default 24)")
    p.add_argument("--seed", type=int, help="Seed for those directions (default 20201)")
    p.set_defaults(func=cmd_check, deep=None)

    p = sub.add_parser("gamma2", help="Formula value on a quadrilateral-star surface")
    p.add_argument("fan_file")
    p.add_argument("--tau", required=True, help="Comma-separated ray indices of a (d-2)-cone")
    p.set_defaults(func=cmd_gamma2)

    p = sub.add_parser("ne2", help="Generators of the cone of effective 2-cycles (Picard number 2)")
    p.add_argument("fan_file")
    p.set_defaults(func=cmd_ne2)

    p = sub.add_parser("surface", help="Self-intersection table and γ₂ of a toric surface")
    p.add_argument("fan_file")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("verify-examples", aliases=["verify-paper"], help="Run every worked-example fixture")
    p.set_defaults(func=cmd_verify_examples)

    p = sub.add_parser("catalog", help="List or emit reference fans")
    catalog_sub = p.add_subparsers(dest="catalog_command", required=True)
    catalog_sub.add_parser("list", help="List catalog entries")
    emit = catalog_sub.add_parser("emit", help="Write a catalog fan file")
    emit.add_argument("name")
    emit.add_argument("--param", action="append", help="Parameter as key=value, e.g. d=5")
    emit.add_argument("--output", help="Destination file (stdout when omitted)")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose)
    setup_warnings()
    try:
        return args.func(args)
    except InternalConsistencyError as e:
        print(f"❌ Internal invariant violated: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except ToricError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_INPUT
