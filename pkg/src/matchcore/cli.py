"""Command-line analysis driver.

Usage shape: ``matchcore <command> --game <path> [--imputation v1,v2,...]
[--cap N] [--budget N] [--seed N] [--split half] [--out <path>]``.

Exit codes: 0 success, 1 analysis finding (a membership check answered
no, or a bundled example drifted), 2 input error, 3 enumeration cap
exceeded.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import bundled
from .analysis import Imputation, is_core_imputation
from .bmatching import (
    B_VARIANTS,
    coalition_system,
    core_membership_via_system,
    in_dual_image,
)
from .games import (
    DEFAULT_BUDGET_CAP,
    DEFAULT_COALITION_CAP,
    CapExceeded,
    GameInstance,
)
from .gamefile import GameFileError, parse_game
from .matchings import InfeasibleGameError
from .rationals import parse_rational
from .reports import (
    Report,
    antipodal_section,
    classify_section,
    concurrency_section,
    degeneracy_section,
    dual_section,
    imputation_section,
    payments_section,
    report_header,
    system_section,
    worth_section,
)

COMMANDS = (
    "worth",
    "dual",
    "imputation",
    "classify",
    "payments",
    "concurrency",
    "antipodal",
    "degeneracy",
    "system",
    "check",
    "dual-image",
    "examples",
)


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matchcore",
        description="Exact core analysis of assignment, matching and "
        "b-matching games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name != "examples":
            p.add_argument("--game", required=True, help="game file to analyze")
        p.add_argument(
            "--cap",
            type=int,
            default=DEFAULT_COALITION_CAP,
            help="coalition enumeration vertex cap",
        )
        p.add_argument(
            "--budget",
            type=int,
            default=DEFAULT_BUDGET_CAP,
            help="matching enumeration multiplicity budget",
        )
        p.add_argument("--seed", type=int, default=0, help="sampling seed")
        p.add_argument("--out", help="also write the report as JSON here")
        if name in ("check", "dual-image"):
            p.add_argument(
                "--imputation",
                required=True,
                help="profits, comma separated, in declared vertex order",
            )
        if name == "imputation":
            p.add_argument(
                "--split",
                choices=("left", "right", "half"),
                default="half",
                help="how edge prices are divided between endpoints",
            )
    return parser


def _parse_imputation(g: GameInstance, text: str) -> Imputation:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != len(g.vertices):
        raise GameFileError(
            f"imputation has {len(parts)} entries, game has {len(g.vertices)} vertices"
        )
    try:
        values = [parse_rational(p) for p in parts]
    except ValueError as exc:
        raise GameFileError(str(exc)) from exc
    return dict(zip(g.vertices, values))


def _emit(report: Report, out: str | None) -> None:
    sys.stdout.write(report.to_text())
    if out:
        with open(out, "w") as fh:
            fh.write(report.to_json())


def _run(args: argparse.Namespace) -> int:
    if args.command == "examples":
        lines, ok = bundled.run_examples()
        for line in lines:
            print(line)
        return 0 if ok else 1

    with open(args.game) as fh:
        g = parse_game(fh.read())
    rep = report_header(g, args.cap, args.budget)

    finding = False
    if args.command == "worth":
        rep.add("worth", worth_section(g, args.budget))
    elif args.command == "concurrency":
        rep.add("concurrency", concurrency_section(g, args.budget))
    elif args.command == "dual":
        rep.add("dual", dual_section(g))
    elif args.command == "imputation":
        rep.add("imputation", imputation_section(g, args.split))
    elif args.command == "classify":
        rep.add("classification", classify_section(g, args.budget))
    elif args.command == "payments":
        rep.add("payments", payments_section(g, args.budget))
    elif args.command == "antipodal":
        rep.add("antipodal", antipodal_section(g))
    elif args.command == "degeneracy":
        rep.add("degeneracy", degeneracy_section(g, args.budget))
    elif args.command == "system":
        rep.add("system", system_section(g, args.cap, args.budget))
    elif args.command == "check":
        imp = _parse_imputation(g, args.imputation)
        if g.variant in B_VARIANTS:
            verdict = core_membership_via_system(
                coalition_system(g, args.cap, args.budget), imp
            )
            in_core, witness = verdict.in_core, verdict.witness
        else:
            got = is_core_imputation(g, imp, args.cap, args.budget)
            in_core, witness = got.in_core, got.witness
        lines = [f"in-core = {'yes' if in_core else 'no'}"]
        if witness is not None:
            lines.append("witness = {" + ",".join(sorted(witness)) + "}")
        rep.add("check", lines)
        finding = not in_core
    elif args.command == "dual-image":
        imp = _parse_imputation(g, args.imputation)
        flag = in_dual_image(g, imp)
        rep.add("dual-image", [f"in-dual-image = {'yes' if flag else 'no'}"])
        finding = not flag
    _emit(rep, args.out)
    return 1 if finding else 0


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _run(args)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3
    except (GameFileError, InfeasibleGameError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
