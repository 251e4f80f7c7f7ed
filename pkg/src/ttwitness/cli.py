"""Command-line front end.

Exit codes: 0 success or satisfied, 1 violation or refuted, 2 usage or parse
error, 3 unknown (guard exhausted).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import tree
from .alphabeta import Window, alphabeta_failhard, alphabeta_failsoft
from .harness import GeneratorConfig, Violation, fuzz, parse_algorithm, shrink
from .reference import ContractError, minimax_alg, minimax_depth, negamax_alg, negamax_depth
from .table import TranspositionTable, dump_snapshot, load_snapshot
from .tree import BoundError, ParseError, parse, serialize, truncate
from .ttsearch import negamax_ttm, negamax_ttw, negamax_ttw_hybrid
from .witness import (
    DEFAULT_GUARD,
    GUARD_EXCEEDED,
    check_negamax_tt_result,
    check_valid_table,
    enumerate_aon_expansions,
)
from .dot import to_dot

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3
VERDICT_EXIT = {"satisfied": EXIT_OK, "refuted": EXIT_VIOLATION, "unknown": EXIT_UNKNOWN}

PLAIN_ALGORITHMS = ("minimax", "minimax_alg", "negamax", "negamax_alg")


class UsageError(Exception):
    pass


def _read_tree(path: str) -> tree.Node:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse(text)


def _window(args) -> Window:
    alpha = -tree.INFINITY + 1 if args.alpha is None else args.alpha
    beta = tree.INFINITY if args.beta is None else args.beta
    return Window(alpha, beta)


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_eval(args) -> int:
    u = _read_tree(args.tree)
    depth = u.height if args.depth is None else args.depth
    alg = args.alg
    if alg in PLAIN_ALGORITHMS:
        if alg.startswith("minimax"):
            value = minimax_alg(truncate(u, depth)) if alg == "minimax_alg" else minimax_depth(u, depth)
        else:
            value = negamax_alg(truncate(u, depth)) if alg == "negamax_alg" else negamax_depth(u, depth)
        print(value)
        return EXIT_OK
    base, opts = parse_algorithm(alg)
    w = _window(args)
    if base == "failsoft":
        print(alphabeta_failsoft(u, w, depth))
        return EXIT_OK
    if base == "failhard":
        print(alphabeta_failhard(u, w, depth))
        return EXIT_OK
    table = TranspositionTable()
    if args.table:
        table = load_snapshot(Path(args.table).read_text(encoding="utf-8"))
    if base == "ttw":
        value, table = negamax_ttw(u, w, depth, table)
    elif base == "ttm":
        value, table = negamax_ttm(u, w, depth, table)
    else:
        value, table = negamax_ttw_hybrid(u, w, depth, table, opts)
    print(value)
    if args.out:
        Path(args.out).write_text(dump_snapshot(table), encoding="utf-8")
    return EXIT_OK


def cmd_check(args) -> int:
    u = _read_tree(args.tree)
    depth = u.height if args.depth is None else args.depth
    report = check_negamax_tt_result(
        args.value, u, _window(args), depth, args.guard, args.strategy
    )
    print(report.verdict)
    if report.witness is not None:
        print(serialize(report.witness))
    return VERDICT_EXIT[report.verdict]


def cmd_check_table(args) -> int:
    try:
        table = load_snapshot(Path(args.table).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {args.table}: {exc.strerror}") from None
    reports = check_valid_table(table, args.guard, args.strategy)
    verdicts = []
    for key, report in reports.items():
        entry = table[key]
        verdicts.append(report.verdict)
        print(f"{key.fingerprint()[:16]} {entry} {report.verdict}")
    if "refuted" in verdicts:
        return EXIT_VIOLATION
    if "unknown" in verdicts:
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_fuzz(args) -> int:
    cfg = GeneratorConfig(
        max_depth=args.max_depth,
        branching=tuple(args.branching),
        eval_range=tuple(args.eval_range),
        turn_based=True,
        duplicate_probability=args.dup_prob,
        max_nodes=args.max_nodes,
        seed=args.seed,
    )
    report = fuzz(args.alg, cfg, args.trials, args.guard, corpus_dir=args.out)
    summary = json.dumps(report.summary(cfg), indent=1, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        (Path(args.out) / "summary.json").write_text(summary, encoding="utf-8")
    sys.stdout.write(summary)
    return EXIT_VIOLATION if report.violations or report.replayed else EXIT_OK


def _read_violation(path: str) -> Violation:
    try:
        return Violation.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except (KeyError, TypeError) as exc:
        raise UsageError(f"{path}: not a violation record ({exc})") from None


def cmd_shrink(args) -> int:
    v = _read_violation(args.violation)
    try:
        small = shrink(v, args.guard)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(small.dumps(), args.out)
    return EXIT_OK


def cmd_expansions(args) -> int:
    u = _read_tree(args.tree)
    from .reference import _negamax, require_turn_based

    require_turn_based(u)
    values = set()
    for expansion in enumerate_aon_expansions(u, args.depth, args.guard):
        if expansion is GUARD_EXCEEDED:
            print(f"unknown: more than {args.guard} expansions", file=sys.stderr)
            return EXIT_UNKNOWN
        values.add(_negamax(expansion))
    print("{" + ", ".join(str(x) for x in sorted(values)) + "}")
    return EXIT_OK


def cmd_dot(args) -> int:
    text = Path(args.input).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    if isinstance(data, dict) and "algorithm" in data:
        v = Violation.from_record(data)
        horizon = v.probed_depth if args.depth is None else args.depth
        title = f"{v.algorithm}: observed {v.observed} ({v.kind}, call {v.call_index})"
        _write(to_dot(v.tree, horizon, title), args.out)
    else:
        _write(to_dot(tree.from_record(data), args.depth), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ttwitness",
        description="Game-tree search with transposition tables and witness-based checking.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def window_flags(sp):
        sp.add_argument("--alpha", type=int, help="window lower bound (default -INFINITY+1)")
        sp.add_argument("--beta", type=int, help="window upper bound (default INFINITY)")
        sp.add_argument("--depth", type=int, help="search depth (default: tree height)")

    def check_flags(sp):
        sp.add_argument("--guard", type=int, default=DEFAULT_GUARD)
        sp.add_argument(
            "--strategy", choices=("enumerate", "values", "auto"), default="enumerate",
            help="brute-force enumeration under the guard, exact value sets, or auto",
        )

    sp = sub.add_parser("eval", help="evaluate a tree with one algorithm")
    sp.add_argument("tree")
    sp.add_argument("--alg", required=True)
    window_flags(sp)
    sp.add_argument("--table", help="initial table snapshot")
    sp.add_argument("--out", help="write the resulting table snapshot here")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("check", help="decide whether a value has a witness")
    sp.add_argument("tree")
    sp.add_argument("--value", type=int, required=True)
    window_flags(sp)
    check_flags(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("check-table", help="check every entry of a table snapshot")
    sp.add_argument("table")
    check_flags(sp)
    sp.set_defaults(func=cmd_check_table)

    sp = sub.add_parser("fuzz", help="differential fuzzing against the witness checker")
    sp.add_argument("--alg", required=True)
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--dup-prob", type=float, default=0.4)
    sp.add_argument("--max-depth", type=int, default=4)
    sp.add_argument("--branching", type=int, nargs=2, default=(1, 3), metavar=("MIN", "MAX"))
    sp.add_argument("--eval-range", type=int, nargs=2, default=(-5, 5), metavar=("LO", "HI"))
    sp.add_argument("--max-nodes", type=int, default=200)
    sp.add_argument("--guard", type=int, default=DEFAULT_GUARD)
    sp.add_argument("--out", help="corpus directory for violations and summary.json")
    sp.set_defaults(func=cmd_fuzz)

    sp = sub.add_parser("shrink", help="minimise a stored violation")
    sp.add_argument("violation")
    sp.add_argument("--guard", type=int, default=DEFAULT_GUARD)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_shrink)

    sp = sub.add_parser("expansions", help="values of all all-or-none expansions")
    sp.add_argument("tree")
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("--guard", type=int, default=DEFAULT_GUARD)
    sp.set_defaults(func=cmd_expansions)

    sp = sub.add_parser("dot", help="render a tree or violation as Graphviz DOT")
    sp.add_argument("input", help="tree file or violation record")
    sp.add_argument("--depth", type=int, help="horizon to mark")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_dot)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, BoundError, ContractError, ValueError, RecursionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
