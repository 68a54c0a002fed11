"""Command-line interface.

    vgd verify <file> [--json] [--witness-cap N] [--max-carrier N]
    vgd catalog list
    vgd sg-card <n>
    vgd --version

Exit codes: 0 all checks pass, 1 some check fails, 2 parse or elaboration
error.  The VGD_WITNESS_CAP environment variable overrides the default
witness cap (the --witness-cap flag wins over the environment).
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .catalog import CATALOG_KINDS, DEFAULT_MAX_CARRIER, sg_cardinality
from .dsl import emit_report, evaluate, parse, run_checks
from .report import DEFAULT_WITNESS_CAP

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="vgd", description="Verify finite groupoid and vector groupoid definitions."
    )
    ap.add_argument("--version", action="version", version=f"vgd {__version__}")
    sub = ap.add_subparsers(dest="command")

    pv = sub.add_parser("verify", help="parse, build, and check a .gd definition file")
    pv.add_argument("file")
    pv.add_argument("--json", action="store_true", help="emit the machine-readable report")
    pv.add_argument("--witness-cap", type=int, default=None, metavar="N")
    pv.add_argument(
        "--max-carrier", type=int, default=DEFAULT_MAX_CARRIER, metavar="N"
    )

    pc = sub.add_parser("catalog", help="catalog utilities")
    pc.add_argument("action", choices=["list"])

    ps = sub.add_parser("sg-card", help="symmetry groupoid cardinalities")
    ps.add_argument("n", type=int)
    return ap


def _witness_cap(flag_value) -> int:
    if flag_value is not None:
        return flag_value
    env = os.environ.get("VGD_WITNESS_CAP")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            print(f"warning: ignoring non-integer VGD_WITNESS_CAP={env!r}", file=sys.stderr)
    return DEFAULT_WITNESS_CAP


def _cmd_verify(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    ast, diags = parse(text)
    if not any(d.severity == "error" for d in diags):
        ws, ediags = evaluate(ast, max_carrier=args.max_carrier)
        diags = diags + ediags
    for d in diags:
        print(d.render(), file=sys.stderr)
    if any(d.severity == "error" for d in diags):
        return EXIT_INPUT_ERROR

    report = run_checks(ws, ast, text, witness_cap=_witness_cap(args.witness_cap))
    sys.stdout.write(emit_report(report, "json" if args.json else "text"))
    return EXIT_PASS if report.overall == "pass" else EXIT_CHECK_FAILED


def _cmd_catalog(args) -> int:
    width = max(len(k) for k, _ in CATALOG_KINDS)
    for kind, blurb in CATALOG_KINDS:
        print(f"{kind:<{width}}  {blurb}")
    return EXIT_PASS


def _cmd_sg_card(args) -> int:
    if args.n < 1:
        print("error: n must be >= 1", file=sys.stderr)
        return EXIT_INPUT_ERROR
    total, units = sg_cardinality(args.n)
    print(f"|SG_{args.n}| = {total}")
    print(f"units = {units}")
    return EXIT_PASS


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    if args.command == "verify":
        return _cmd_verify(args)
    if args.command == "catalog":
        return _cmd_catalog(args)
    if args.command == "sg-card":
        return _cmd_sg_card(args)
    ap.print_help()
    return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
