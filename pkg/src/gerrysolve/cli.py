"""Command-line interface: ``gerrysolve {solve,generate,verify,robustness}``.

Exit codes: 0 decided yes (or success), 1 decided no (or a verification
mismatch), 2 usage or parse error, 3 guard exceeded or undecided.
"""

from __future__ import annotations

import argparse
import dataclasses
import random
import sys
from fractions import Fraction
from typing import Optional

from . import io
from .algorithms import DPTable, is_tree, min_moves_to_win, solve_bounded_moves, solve_mrgm_fixed_districts, solve_tree_cuts
from .algorithms.dp import table_size
from .algorithms.tree_cuts import search_size
from .election import Variant, WinnerMode, plan_cost
from .errors import GuardExceeded, InstanceError, PlanError, check_guard
from .generate import random_instance
from .oracle import TwoDCPInstance, X3CInstance, solve_exact
from .reductions import (
    dcp_to_mgm,
    exact_move_bound,
    lift_complete_graph,
    lift_uniform_cost,
    x3c_to_mgm_tree,
    x3c_to_mrgm,
    x3c_to_rgb,
)
from .suites import format_table, reduction_suite, solver_suite

YES, NO, USAGE, UNDECIDED = 0, 1, 2, 3

ALGORITHMS = ("oracle", "bounded-moves", "tree-cuts", "fixed-districts", "dp", "auto")
REDUCTIONS = ("x3c-rgb", "x3c-mrgm", "dcp-mgm", "x3c-tree-mgm", "lift-complete", "lift-unit-cost")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: Optional[str], text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# -- solve -------------------------------------------------------------------


def _run_algorithm(name, inst, args):
    """``(plan, cost, minimal)`` or ``None`` for a no answer."""
    if name == "oracle":
        found = solve_exact(inst, threads=args.threads)
        return None if found is None else (*found, True)
    if name == "bounded-moves":
        cap = exact_move_bound(inst) if args.max_moves is None else args.max_moves
        found = solve_bounded_moves(inst, cap)
        return None if found is None else (*found, args.max_moves is None)
    if name == "tree-cuts":
        found = solve_tree_cuts(inst)
        return None if found is None else (*found, True)
    if name == "fixed-districts":
        found = solve_mrgm_fixed_districts(inst)
        return None if found is None else (*found, False)
    if name == "dp":
        table = DPTable(inst)
        plan = table.plan()
        return None if plan is None else (plan, Fraction(table.min_cost()), True)
    raise ValueError(name)


def _auto(inst, args):
    """First exact method whose search space fits the guard."""
    candidates = [("oracle", inst.k ** inst.n)]
    if inst.variant.has_graph and is_tree(inst):
        candidates.append(("tree-cuts", search_size(inst.n, inst.k)))
    if inst.variant is Variant.MRGM:
        candidates.append(("dp", table_size(inst)))
    for name, size in candidates:
        try:
            check_guard(name, size)
        except GuardExceeded:
            continue
        return name, _run_algorithm(name, inst, args)
    args.max_moves = None
    return "bounded-moves", _run_algorithm("bounded-moves", inst, args)


def cmd_solve(args) -> int:
    inst = io.parse_instance(_read(args.input))
    if args.winner_mode:
        inst = dataclasses.replace(inst, winner_mode=WinnerMode(args.winner_mode))
    if args.algorithm == "auto":
        name, found = _auto(inst, args)
    else:
        name, found = args.algorithm, _run_algorithm(args.algorithm, inst, args)
    if found is None:
        print(f"no algorithm={name}")
        return NO
    plan, cost, minimal = found
    assert cost == plan_cost(inst, plan)
    qualifier = "" if minimal else " (not minimised)"
    print(f"yes cost={io.cost_text(cost)}{qualifier} moves={len(plan)} algorithm={name}")
    if args.output:
        _write(args.output, io.serialize_plan(inst, plan))
    return YES


# -- generate ----------------------------------------------------------------


def cmd_generate(args) -> int:
    if args.random:
        missing = [f for f in ("variant", "voters", "districts", "alternatives", "seed") if getattr(args, f) is None]
        if missing:
            raise _UsageError(f"--random needs --{' --'.join(missing)}")
        budget = None if args.budget is None else io.read_cost(args.budget, "--budget")
        inst = random_instance(
            random.Random(args.seed), args.variant, args.voters, args.districts, args.alternatives, budget=budget, tree=args.tree
        )
        _write(args.output, io.serialize_instance(inst))
        return YES
    if not args.reduction or not args.source:
        raise _UsageError("generate needs --random or --reduction with --source")
    text = _read(args.source)
    if args.reduction in ("lift-complete", "lift-unit-cost"):
        inst = io.parse_instance(text)
        lifted = lift_complete_graph(inst) if args.reduction == "lift-complete" else lift_uniform_cost(inst)
        _write(args.output, io.serialize_instance(lifted))
        return YES
    source = io.parse_source(text)
    want = TwoDCPInstance if args.reduction == "dcp-mgm" else X3CInstance
    if not isinstance(source, want):
        raise InstanceError(f"{args.reduction} needs a {'2DCP' if want is TwoDCPInstance else 'X3C'} source document")
    if args.reduction == "x3c-rgb":
        inst = x3c_to_rgb(source)
    elif args.reduction == "x3c-mrgm":
        inst = x3c_to_mrgm(source, args.lam)
    elif args.reduction == "dcp-mgm":
        inst = dcp_to_mgm(source)
    else:
        inst = x3c_to_mgm_tree(source)
    _write(args.output, io.serialize_instance(inst))
    return YES


# -- verify / robustness -------------------------------------------------------


def cmd_verify(args) -> int:
    if args.suite == "solvers":
        rows = solver_suite(seed=args.seed, limit=args.limit or 300)
    else:
        rows = reduction_suite(limit=args.limit)
    sys.stdout.write(format_table(rows))
    return NO if any(r.mismatches for r in rows) else YES


def cmd_robustness(args) -> int:
    inst = io.parse_instance(_read(args.input))
    moves = min_moves_to_win(inst)
    print("unbounded" if moves is None else moves)
    return YES


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gerrysolve", description="Exact solvers and reduction generators for district-based plurality bribery.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="decide an instance and print the cheapest winning plan's cost")
    p.add_argument("--input", required=True)
    p.add_argument("--algorithm", choices=ALGORITHMS, default="auto")
    p.add_argument("--max-moves", type=int)
    p.add_argument("--winner-mode", choices=[m.value for m in WinnerMode])
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--output", help="write the witness plan here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("generate", help="build a reduction instance or a random instance")
    p.add_argument("--reduction", choices=REDUCTIONS)
    p.add_argument("--source")
    p.add_argument("--lambda", dest="lam", type=int, default=1)
    p.add_argument("--random", action="store_true")
    p.add_argument("--variant", choices=[v.value for v in Variant])
    p.add_argument("--voters", type=int)
    p.add_argument("--districts", type=int)
    p.add_argument("--alternatives", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--budget")
    p.add_argument("--tree", action="store_true", help="use the spanning tree itself as the voter graph")
    p.add_argument("--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="run a differential suite and print a report table")
    p.add_argument("--suite", choices=("reductions", "solvers"), required=True)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("robustness", help="fewest voter moves that make the target win")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_robustness)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"gerrysolve: error: {exc}", file=sys.stderr)
        return USAGE
    except (InstanceError, PlanError, ValueError, OSError) as exc:
        print(f"gerrysolve: error: {exc}", file=sys.stderr)
        return USAGE
    except GuardExceeded as exc:
        print(f"gerrysolve: undecided: {exc}", file=sys.stderr)
        return UNDECIDED


if __name__ == "__main__":
    sys.exit(main())
