"""Command-line entry point.

Exit codes: 0 success, 1 verification counterexample, 2 parse/usage error,
3 exhaustion budget exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence, TextIO

from .bijection import max_tree, min_tree, parse_orders, staircase_orders, tree_to_perm
from .core import format_perm, parse_perm
from .enumeration import DEFAULT_BUDGET, BudgetExceeded, count_table, verify_bijection, verify_equivalence
from .patterns import P1, P231, contains, project
from .trees import format_tree, parse_tree, to_dot

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

NAMED_PATTERNS = {"P1": P1, "231": P231}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str | None, stdin: TextIO) -> str:
    if path is None or path == "-":
        return stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("HYPERPERM_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"HYPERPERM_BUDGET is not an integer: {env!r}") from None
    return DEFAULT_BUDGET


def _orders(spec: str, d: int):
    if spec == "staircase":
        return staircase_orders(d)
    with open(spec, encoding="utf-8") as fh:
        orders = parse_orders(fh.read())
    if orders.d != d:
        raise UsageError(f"order file has dimension {orders.d}, expected {d}")
    return orders


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyperperm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="pattern avoidance verdicts with witnesses")
    p.add_argument("input", nargs="?", help="permutation file (default: stdin)")
    p.add_argument("--pattern", action="append",
                   help="P1, 231, or a permutation in text form (repeatable; default: P1 and 231)")

    p = sub.add_parser("to-tree", help="serialize the max-tree (or min-tree)")
    p.add_argument("input", nargs="?")
    p.add_argument("--axis", type=int, default=None, help="default: last axis")
    p.add_argument("--min", action="store_true", help="build the min-tree instead")

    p = sub.add_parser("from-tree", help="admissible permutation of a tree")
    p.add_argument("input", nargs="?")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--orders", default="staircase", help="'staircase' or an order-set file")

    p = sub.add_parser("project", help="direct projection")
    p.add_argument("input", nargs="?")
    p.add_argument("--indices", required=True, help="comma-separated ascending coordinates")

    for name in ("count", "verify"):
        p = sub.add_parser(name)
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--n-min", type=int, default=1)
        p.add_argument("--n-max", type=int, required=True)
        p.add_argument("--budget", type=int, default=None)
        p.add_argument("--jobs", type=int, default=1)
        if name == "count":
            p.add_argument("--bfile", action="store_true", help="print 'n a(n)' lines instead of CSV")
            p.add_argument("--experimental-312", action="store_true",
                           help="count the (P1, 312) class instead")

    p = sub.add_parser("export-dot", help="Graphviz DOT of a max-tree or serialized tree")
    p.add_argument("input", nargs="?")
    p.add_argument("--tree", action="store_true", help="input is a serialized tree, not a permutation")
    p.add_argument("--d", type=int, help="dimension (required with --tree)")
    p.add_argument("--axis", type=int, default=None)
    p.add_argument("--min", action="store_true")
    p.add_argument("-o", "--output", help="write to a file instead of stdout")
    return parser


def _pattern(spec: str):
    if spec in NAMED_PATTERNS:
        return spec, NAMED_PATTERNS[spec]
    return spec, parse_perm(spec)


def _cmd_check(args, stdin, out):
    perm = parse_perm(_read(args.input, stdin))
    for spec in args.pattern or ["P1", "231"]:
        name, pattern = _pattern(spec)
        w = contains(perm, pattern)
        if w is None:
            out.write(f"{name}: avoids\n")
        else:
            out.write(f"{name}: contains\n")
            out.write(f"  projection: {' '.join(map(str, w.indices))}\n")
            out.write(f"  points: {' '.join(map(str, w.points))}\n")
            out.write(f"  occurrence: {format_perm(w.occurrence)}\n")
    return EXIT_OK


def _tree_of(args, perm):
    axis = -1 if args.axis is None else args.axis
    return (min_tree if args.min else max_tree)(perm, axis)


def _cmd_to_tree(args, stdin, out):
    perm = parse_perm(_read(args.input, stdin))
    out.write(format_tree(_tree_of(args, perm)) + "\n")
    return EXIT_OK


def _cmd_from_tree(args, stdin, out):
    tree = parse_tree(_read(args.input, stdin).strip(), args.d)
    out.write(format_perm(tree_to_perm(tree, _orders(args.orders, args.d))) + "\n")
    return EXIT_OK


def _cmd_project(args, stdin, out):
    perm = parse_perm(_read(args.input, stdin))
    try:
        indices = [int(t) for t in args.indices.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"bad --indices {args.indices!r}") from None
    out.write(format_perm(project(perm, indices)) + "\n")
    return EXIT_OK


def _cmd_count(args, stdin, out):
    table = count_table(
        args.d, args.n_min, args.n_max, budget=_budget(args), jobs=args.jobs,
        variant="312" if args.experimental_312 else "231",
    )
    out.write(table.to_bfile() if args.bfile else table.to_csv())
    return EXIT_OK


def _cmd_verify(args, stdin, out):
    budget = _budget(args)
    failed = False
    for n in range(args.n_min, args.n_max + 1):
        for check in (verify_equivalence, verify_bijection):
            report = check(args.d, n, budget=budget, jobs=args.jobs)
            out.write(report.summary() + "\n")
            for ce in report.counterexamples:
                out.write(f"  {ce}\n")
            failed |= not report.ok
    return EXIT_COUNTEREXAMPLE if failed else EXIT_OK


def _cmd_export_dot(args, stdin, out):
    text = _read(args.input, stdin)
    if args.tree:
        if args.d is None:
            raise UsageError("--tree needs --d")
        tree = parse_tree(text.strip(), args.d)
    else:
        tree = _tree_of(args, parse_perm(text))
    dot = to_dot(tree)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(dot)
    else:
        out.write(dot)
    return EXIT_OK


COMMANDS = {
    "check": _cmd_check,
    "to-tree": _cmd_to_tree,
    "from-tree": _cmd_from_tree,
    "project": _cmd_project,
    "count": _cmd_count,
    "verify": _cmd_verify,
    "export-dot": _cmd_export_dot,
}


def run(argv: Sequence[str] | None = None, stdin: TextIO | None = None,
        stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, stdin, out)
    except BudgetExceeded as exc:
        err.write(f"hyperperm: {exc}\n")
        return EXIT_BUDGET
    except (UsageError, ValueError, OSError) as exc:
        err.write(f"hyperperm: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
