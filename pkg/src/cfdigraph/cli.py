"""Command-line front end.

Exit codes: 0 on success (and a positive ``member`` verdict), 1 for a
negative verdict, a failed ``verify`` or a diagram with violations, 2 for
input and usage errors.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from .diagram import (
    build_diagram,
    diagram_to_grammar,
    export_dot,
    read_diagram,
    validate_diagram,
    write_diagram,
)
from .engine import enumerate_words, find_walk
from .errors import CfdigraphError, EpsilonWarning
from .grammar import format_grammar, parse_grammar, to_cnf
from .verify import verify_grammar

EXIT_OK, EXIT_NO, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _kind(args) -> str:
    if args.kind:
        return args.kind
    suffix = Path(args.input).suffix.lower()
    if suffix == ".json":
        return "diagram"
    if suffix == ".cfg":
        return "grammar"
    raise UsageError(f"cannot infer input kind from {args.input!r}; pass --kind grammar|diagram")


def _load_cnf(path: str, start: str | None = None):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", EpsilonWarning)
        g = to_cnf(parse_grammar(_read(path), start=start))
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return g


def _load_diagram_and_start(args):
    """Return (diagram, start vertex) for the member/enumerate commands."""
    if _kind(args) == "diagram":
        if not args.start:
            raise UsageError("--start is required for diagram input")
        return read_diagram(_read(args.input)), args.start
    g = _load_cnf(args.input, start=args.start)
    d = build_diagram(g)
    return d, d.renaming.get(g.start, g.start)


def cmd_normalize(args) -> int:
    sys.stdout.write(format_grammar(_load_cnf(args.input, start=args.start)))
    return EXIT_OK


def cmd_diagram(args) -> int:
    d = build_diagram(_load_cnf(args.input))
    sys.stdout.write(export_dot(d) if args.format == "dot" else write_diagram(d))
    return EXIT_OK


def cmd_grammar(args) -> int:
    d = read_diagram(_read(args.input))
    sys.stdout.write(format_grammar(diagram_to_grammar(d, start=args.start)))
    return EXIT_OK


def cmd_member(args) -> int:
    if not args.word:
        raise UsageError("the word must be non-empty")
    d, start = _load_diagram_and_start(args)
    walk = find_walk(d, start, args.word)
    print("true" if walk is not None else "false")
    if args.witness and walk is not None:
        for arc in walk:
            print(arc)
    return EXIT_OK if walk is not None else EXIT_NO


def cmd_enumerate(args) -> int:
    d, start = _load_diagram_and_start(args)
    for w in enumerate_words(d, start, args.max_len):
        print(w)
    return EXIT_OK


def cmd_validate(args) -> int:
    report = validate_diagram(read_diagram(_read(args.input), validate=False))
    print(report)
    return EXIT_OK if report.ok else EXIT_NO


def cmd_verify(args) -> int:
    g = _load_cnf(args.input)
    if args.starts == "all":
        starts = None
    elif args.starts in g.nonterminals:
        starts = [args.starts]
    else:
        raise UsageError(f"unknown start symbol {args.starts!r}")
    result = verify_grammar(g, args.max_len, starts)
    if result.passed:
        print(f"PASS ({result.queries} membership queries)")
        return EXIT_OK
    print("FAIL")
    for line in result.failures:
        print(f"  {line}")
    return EXIT_NO


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cfdigraph",
        description="Context-free grammars as labelled transition diagrams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="print the Chomsky normal form of a grammar")
    p.add_argument("input")
    p.add_argument("--start")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("diagram", help="build the transition diagram of a grammar")
    p.add_argument("input")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("grammar", help="extract the grammar of a diagram")
    p.add_argument("input")
    p.add_argument("--start")
    p.set_defaults(func=cmd_grammar)

    for name, func, help_ in (
        ("member", cmd_member, "decide membership of a word"),
        ("enumerate", cmd_enumerate, "list the words up to a length"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("input")
        p.add_argument("--kind", choices=("grammar", "diagram"))
        p.add_argument("--start")
        if name == "member":
            p.add_argument("--word", required=True)
            p.add_argument("--witness", action="store_true", help="print the accepting walk")
        else:
            p.add_argument("--max-len", type=_positive, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("validate", help="check a diagram document")
    p.add_argument("input")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("verify", help="cross-check the diagram engine against CYK")
    p.add_argument("input")
    p.add_argument("--max-len", type=_positive, required=True)
    p.add_argument("--starts", default="all", help="'all' or one start symbol")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, CfdigraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
