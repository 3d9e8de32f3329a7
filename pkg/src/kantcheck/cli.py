"""Command-line front end.

Exit codes: 0 for a positive answer (permissible, true, valid), 1 for a
negative one, 2 for usage, input or model errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from kantcheck.document import load_model, model_from_document, read_document
from kantcheck.engine import satisfies
from kantcheck.model import (
    Intervention,
    ModelError,
    UnknownPatient,
    make_situation,
    validate_model,
)
from kantcheck.principles import meritorious
from kantcheck.report import (
    SCHEMA_VERSION,
    check_report,
    check_text,
    diagnostics_obj,
    meritorious_scores,
)
from kantcheck.syntax import ParseError, parse_literal, parse_query, render

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _assignment(text: str) -> tuple[str, bool]:
    name, sep, value = text.partition("=")
    value = value.strip().lower()
    if not sep or not name.strip() or value not in ("true", "false"):
        raise argparse.ArgumentTypeError(f"expected var=true|false, got {text!r}")
    return name.strip(), value == "true"


def _reading(text: str) -> int:
    if text not in ("1", "2"):
        raise argparse.ArgumentTypeError("reading must be 1 or 2")
    return int(text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="kantcheck",
        description="Check actions in a causal agency model against the categorical imperative.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, action=False, reading=False):
        p.add_argument("model", help="model document (JSON)")
        if action:
            p.add_argument("--action", required=True, help="the chosen action")
        p.add_argument(
            "--set",
            dest="assignments",
            action="append",
            default=[],
            type=_assignment,
            metavar="VAR=true|false",
            help="background variable value (repeatable)",
        )
        if reading:
            p.add_argument("--reading", type=_reading, default=1, help="1 or 2 (default 1)")
        p.add_argument("--format", choices=("text", "machine"), default="text")

    common(sub.add_parser("check", help="verdict for one action"), action=True, reading=True)
    common(sub.add_parser("permissible", help="verdict for every action"), reading=True)
    p = sub.add_parser("meritorious", help="best permitted actions")
    common(p, reading=True)
    p.add_argument(
        "--tiebreak-negative",
        action="store_true",
        help="prefer actions leaving fewer patients negatively affected",
    )
    p.add_argument("--choose", action="store_true", help="print one action sampled from the ties")
    p.add_argument("--seed", type=int, default=None, help="seed for --choose")
    p = sub.add_parser("query", help="evaluate a formula")
    common(p, action=True)
    p.add_argument(
        "--intervene",
        action="append",
        default=[],
        metavar="LITERAL",
        help="force a literal such as '!press' (repeatable)",
    )
    p.add_argument("formula")
    p = sub.add_parser("validate", help="report model diagnostics")
    p.add_argument("model")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    return parser


def _emit(obj, fmt: str, text: str) -> None:
    if fmt == "machine":
        print(json.dumps(obj, indent=2, ensure_ascii=False))
    else:
        print(text)


def _background(args) -> dict[str, bool]:
    out = {}
    for name, value in args.assignments:
        if name in out and out[name] != value:
            raise UsageError(f"conflicting values for {name!r}")
        out[name] = value
    return out


def _cmd_check(args) -> int:
    model = load_model(args.model)
    w = make_situation(model, args.action, _background(args))
    report = check_report(model, w, args.reading)
    _emit(report, args.format, check_text(report))
    return EXIT_YES if report["permissible"] else EXIT_NO


def _cmd_permissible(args) -> int:
    model = load_model(args.model)
    bg = _background(args)
    reports = [
        check_report(model, make_situation(model, a, bg), args.reading)
        for a in sorted(model.actions)
    ]
    obj = {
        "schema_version": SCHEMA_VERSION,
        "command": "permissible",
        "model": model.name,
        "reading": args.reading,
        "actions": reports,
    }
    text = "\n".join(
        f"{r['action']}: {'permissible' if r['permissible'] else 'impermissible'}"
        for r in reports
    )
    _emit(obj, args.format, text)
    return EXIT_YES if any(r["permissible"] for r in reports) else EXIT_NO


def _cmd_meritorious(args) -> int:
    model = load_model(args.model)
    bg = _background(args)
    best = meritorious(model, bg, args.reading, tiebreak_negative=args.tiebreak_negative)
    choices = sorted(best)
    if args.choose and choices:
        choices = [random.Random(args.seed).choice(choices)]
    situations = {a: make_situation(model, a, bg) for a in sorted(model.actions)}
    obj = {
        "schema_version": SCHEMA_VERSION,
        "command": "meritorious",
        "model": model.name,
        "reading": args.reading,
        "tiebreak_negative": args.tiebreak_negative,
        "choices": choices,
        "scores": meritorious_scores(model, situations, args.reading),
    }
    text = "\n".join(choices) if choices else "no permissible action"
    _emit(obj, args.format, text)
    return EXIT_YES if choices else EXIT_NO


def _cmd_query(args) -> int:
    model = load_model(args.model)
    w = make_situation(model, args.action, _background(args))
    formula = parse_query(args.formula)
    try:
        intervention = Intervention(frozenset(parse_literal(t) for t in args.intervene))
    except ParseError as exc:
        raise UsageError(f"bad --intervene literal: {exc}") from None
    unknown = sorted(lit.name for lit in intervention if lit.name not in model.variables)
    if unknown:
        raise UsageError(f"unknown variable in --intervene: {unknown[0]}")
    value = satisfies(model, w, intervention, formula)
    obj = {
        "schema_version": SCHEMA_VERSION,
        "command": "query",
        "model": model.name,
        "action": args.action,
        "background": {b: w.values[b] for b in model.background},
        "intervention": [str(lit) for lit in intervention],
        "formula": render(formula),
        "value": value,
    }
    _emit(obj, args.format, "true" if value else "false")
    return EXIT_YES if value else EXIT_NO


def _cmd_validate(args) -> int:
    try:
        diags = validate_model(model_from_document(read_document(args.model)))
    except ModelError as exc:
        diags = exc.diagnostics
    errors = [d for d in diags if d.severity == "error"]
    obj = {
        "schema_version": SCHEMA_VERSION,
        "command": "validate",
        "valid": not errors,
        "diagnostics": diagnostics_obj(diags),
    }
    text = "\n".join(str(d) for d in diags) or "ok"
    _emit(obj, args.format, text)
    return EXIT_NO if errors else EXIT_YES


COMMANDS = {
    "check": _cmd_check,
    "permissible": _cmd_permissible,
    "meritorious": _cmd_meritorious,
    "query": _cmd_query,
    "validate": _cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except (
        UsageError,
        OSError,
        ValueError,
        UnknownPatient,
    ) as exc:
        # model, parse, situation and JSON errors are all ValueErrors
        print(f"kantcheck: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
