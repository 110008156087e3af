"""Command-line front end: check, synth, verify, search.

Exit codes: 0 = success/affirmative verdict, 1 = negative verdict (not MNF,
not equivalent, nothing found), 2 = usage or parse error, 3 = enumeration
budget exceeded.  ``--json`` switches every subcommand to the documented
JSON documents; the MNFLAB_ENUM_CAP environment variable overrides the
enumeration work cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .grammar import (
    GrammarError,
    body_text,
    check_mnf,
    parse_grammar,
    prune_useless,
    render_grammar,
)
from .oracle import ENUM_CAP, BudgetExceeded, NonterminalLiteral, bounded_equiv
from .regex import RegexSyntaxError, parse_regex, render_regex
from .synthesis import NotMnf, synthesize_regex
from .unfolding import SearchConfig, search_mnf

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

DEFAULT_VERIFY_BOUND = 10


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mnf-lab",
        description="Check grammars for MNF, synthesize regexes, verify, search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="decide whether the grammar is in MNF")
    check.add_argument("file")
    check.add_argument("--json", action="store_true")
    check.add_argument("--prune", action="store_true",
                       help="drop unreachable/unproductive nonterminals first")

    synth = sub.add_parser("synth", help="synthesize a regex for an MNF grammar")
    synth.add_argument("file")
    synth.add_argument("--json", action="store_true")

    verify = sub.add_parser("verify", help="bounded equivalence of grammar and regex")
    verify.add_argument("file")
    group = verify.add_mutually_exclusive_group(required=True)
    group.add_argument("--regex", help="regex text to compare against")
    group.add_argument("--synth", action="store_true",
                       help="compare against the synthesized regex")
    verify.add_argument("--max-len", type=int, default=DEFAULT_VERIFY_BOUND)
    verify.add_argument("--json", action="store_true")

    search = sub.add_parser("search", help="search for an MNF-equivalent grammar")
    search.add_argument("file")
    search.add_argument("--depth", type=int, default=SearchConfig.max_depth)
    search.add_argument("--max-candidates", type=int, default=SearchConfig.max_candidates)
    search.add_argument("--from-cnf", action="store_true")
    search.add_argument("--json", action="store_true")
    return parser


def _load_grammar(path: str):
    with open(path, encoding="utf-8") as handle:
        return parse_grammar(handle.read())


def _print_report(report, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report.as_json(), indent=2))
        return
    print("MNF:", "yes" if report.is_mnf else "no")
    if report.looking_forward:
        print("looking-forward: yes")
    else:
        walk = " -> ".join(s.name for s in report.cycle)
        print(f"looking-forward: no (cycle: {walk})")
    for nt, part in report.partitions.items():
        left = ", ".join(body_text(f) for f in part.left_factors)
        right = ", ".join(body_text(f) for f in part.right_factors)
        const = ", ".join(body_text(f) for f in part.constants)
        print(f"{nt.name}: left=[{left}] right=[{right}] const=[{const}]")
    for offender in report.offenders:
        print(f"offender: {offender}")


def _cmd_check(args) -> int:
    grammar = _load_grammar(args.file)
    if args.prune:
        grammar = prune_useless(grammar)
    report = check_mnf(grammar)
    _print_report(report, args.json)
    return EXIT_OK if report.is_mnf else EXIT_NEGATIVE


def _cmd_synth(args) -> int:
    grammar = _load_grammar(args.file)
    try:
        regex = synthesize_regex(grammar)
    except NotMnf as failure:
        _print_report(failure.report, args.json)
        return EXIT_NEGATIVE
    if args.json:
        print(json.dumps({"regex": render_regex(regex)}, indent=2))
    else:
        print(render_regex(regex))
    return EXIT_OK


def _cmd_verify(args, cap: int) -> int:
    grammar = _load_grammar(args.file)
    if args.synth:
        try:
            regex = synthesize_regex(grammar)
        except NotMnf as failure:
            _print_report(failure.report, args.json)
            return EXIT_NEGATIVE
    else:
        regex = parse_regex(args.regex)
    verdict = bounded_equiv(grammar, regex, args.max_len, cap=cap)
    if args.json:
        print(json.dumps(verdict.as_json(), indent=2))
    else:
        if verdict.equivalent:
            print(f"equivalent: yes (all strings up to length {verdict.bound})")
        else:
            word = " ".join(verdict.counterexample) or "eps"
            print(f"equivalent: no (up to length {verdict.bound})")
            print(f"counterexample: {word} ({verdict.side})")
    return EXIT_OK if verdict.equivalent else EXIT_NEGATIVE


def _cmd_search(args, cap: int) -> int:
    grammar = _load_grammar(args.file)
    config = SearchConfig(
        max_depth=args.depth,
        max_candidates=args.max_candidates,
        start_from_cnf=args.from_cnf,
    )
    outcome = search_mnf(grammar, config, cap=cap)
    if args.json:
        print(json.dumps(outcome.as_json(), indent=2))
    else:
        stats = outcome.stats
        if outcome.found:
            print("found: yes")
            print(render_grammar(outcome.grammar), end="")
            print("regex:", render_regex(outcome.regex))
        else:
            print("found: no")
        print(f"stats: explored={stats.explored} depth={stats.depth} deduped={stats.deduped}")
    return EXIT_OK if outcome.found else EXIT_NEGATIVE


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:  # argparse prints its own message
        return int(stop.code or 0)

    try:
        cap = int(os.environ.get("MNFLAB_ENUM_CAP", ENUM_CAP))
    except ValueError:
        print("error: MNFLAB_ENUM_CAP must be an integer", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "synth":
            return _cmd_synth(args)
        if args.command == "verify":
            return _cmd_verify(args, cap)
        return _cmd_search(args, cap)
    except BudgetExceeded as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_BUDGET
    except (GrammarError, RegexSyntaxError, NonterminalLiteral) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
