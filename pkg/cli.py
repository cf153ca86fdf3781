#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Command line: OPEs of free-field expressions, verification campaigns and
serialized objects

    python cli.py ope "c" "d" --stack pi
    python cli.py verify appendix-sl4 --format json
    python cli.py emit grading --n 5 --m 3
"""

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from errors import ConfigError, WalgError
from fieldtext import pretty, pretty_poles
from freefields import parse_stack
from invred import emit_object, run_campaign
from opecore import coerce_field, ope, set_budget, vop_product
from presentation import AlgebraPresentation
from reports import progress
from settings import CAMPAIGNS, DEFAULT_BUDGET, DEFAULT_SEED, DEFAULT_TRUNCATION, EMITTABLE, FORMATS, REPORTS_DIR
from settings import VARIANTS, RunConfig
from sl4data import embedding_presentation, minimal_sl4_presentation

# named presentations accepted by --stack besides free-field specs
NAMED_STACKS = {
    "wmin-sl4": minimal_sl4_presentation,
    "embedding-sl4": embedding_presentation,
}

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


def resolve_stack(spec: str, max_rank: Optional[int] = None) -> AlgebraPresentation:
    if spec in NAMED_STACKS:
        return NAMED_STACKS[spec]()
    return parse_stack(spec, max_rank).presentation


def datum_name(algebra: Optional[str], nilpotent: Optional[str]) -> Optional[str]:
    """--algebra sl2 --f prin -> sl2-prin"""
    if algebra is None:
        return None
    return f"{algebra}-{nilpotent}" if nilpotent else algebra


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="walg", description="Inverse reduction for hook-type W-algebras")
    commands = parser.add_subparsers(dest="command", required=True)

    def common(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--n", type=int, default=3)
        sub.add_argument("--m", type=int, default=4)
        sub.add_argument("--variant", choices=VARIANTS, default="standard")
        sub.add_argument("--truncation", type=int, default=DEFAULT_TRUNCATION)
        sub.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        sub.add_argument("--format", choices=FORMATS, default="text")
        sub.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sub.add_argument("--out", type=Path)
        sub.add_argument("--quiet", action="store_true", help="no progress lines on stderr")

    sub = commands.add_parser("ope", help="OPE of two expressions")
    sub.add_argument("a")
    sub.add_argument("b")
    sub.add_argument("--stack", required=True, help="e.g. heis:n=3+ghosts:n=3:m=3+pi, or wmin-sl4")
    common(sub)

    sub = commands.add_parser("verify", help="run a verification campaign")
    sub.add_argument("campaign")
    sub.add_argument("--algebra", help="reduction datum for the brst campaign, e.g. sl2 or sl3-min")
    sub.add_argument("--f", dest="nilpotent", help="nilpotent class paired with --algebra, e.g. prin")
    sub.add_argument("--timing", action="store_true")
    sub.add_argument("--samples", type=int)
    sub.add_argument("--csv", action="store_true", help="also save the report as CSV")
    common(sub)

    sub = commands.add_parser("emit", help="write a serialized object")
    sub.add_argument("object", choices=EMITTABLE)
    common(sub)
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        n=args.n,
        m=args.m,
        variant=args.variant,
        truncation=args.truncation,
        budget=args.budget,
        format=args.format,
        seed=args.seed,
        algebra=datum_name(getattr(args, "algebra", None), getattr(args, "nilpotent", None)),
        timing=getattr(args, "timing", False),
        samples=getattr(args, "samples", None),
    )


def cmd_ope(args: argparse.Namespace, config: RunConfig) -> int:
    P = resolve_stack(args.stack)
    a, b = coerce_field(P, args.a), coerce_field(P, args.b)
    if any(e is not None for e in a.exponents() | b.exponents()):
        result = vop_product(P, a, b)
    else:
        result = ope(P, a, b)
    if config.format == "json":
        payload = {"poles": result.to_text()}
        if result.shift is not None:
            payload["shift"] = str(result.shift)
        print(json.dumps(payload, sort_keys=True, ensure_ascii=False))
    else:
        print(pretty_poles(result.poles))
        if result.shift is not None:
            print(f"shift: {result.shift}; regular: {pretty(result.regular)}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    verbose = not args.quiet
    report = run_campaign(args.campaign, config, verbose=verbose)
    print(report.to_json() if config.format == "json" else report.to_text())
    target = report.save(args.out or REPORTS_DIR, csv=args.csv)
    progress(f"💾 Report saved: {target}", verbose)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_emit(args: argparse.Namespace, config: RunConfig) -> int:
    data = emit_object(args.object, config.n, config.m, config.variant)
    text = json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)
    target = args.out or REPORTS_DIR / f"{args.object}-n{config.n}-m{config.m}.json"
    target = Path(target)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text + "\n", encoding="utf-8")
    if config.format == "json":
        print(text)
    progress(f"💾 {args.object} written to {target}", not args.quiet)
    return EXIT_OK


COMMANDS = {"ope": cmd_ope, "verify": cmd_verify, "emit": cmd_emit}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = make_config(args)
        if args.command == "verify" and args.campaign not in CAMPAIGNS:
            raise ConfigError(f"unknown campaign {args.campaign!r}; choose from {', '.join(CAMPAIGNS)}")
        set_budget(config.budget)
        return COMMANDS[args.command](args, config)
    except WalgError as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
