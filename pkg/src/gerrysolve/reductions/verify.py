"""Decide both sides of a reduction and check the built instance's shape."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..algorithms.bounded import solve_bounded_moves
from ..algorithms.tree_cuts import is_tree
from ..election import ProblemInstance, district_winner_sets, induced_connected, is_finite, validates
from ..errors import GuardExceeded, check_guard
from ..oracle import TwoDCPInstance, X3CInstance, solve_2dcp_brute, solve_exact, solve_x3c_brute
from .constructions import (
    dcp_to_mgm,
    dcp_witness,
    is_degenerate_tree_source,
    mrgm_witness,
    pad_x3c,
    rgb_witness,
    tree_witness,
    x3c_to_mgm_tree,
    x3c_to_mrgm,
    x3c_to_rgb,
)

UNVERIFIED = "unverified (out of oracle range)"

KINDS = ("x3c-rgb", "x3c-mrgm", "dcp-mgm", "x3c-tree-mgm")


@dataclass
class ReductionReport:
    kind: str
    source_answer: bool
    target_answer: Optional[bool]
    target_method: str
    witness_forwarded: Optional[object] = None
    structural_checks: list = field(default_factory=list)

    @property
    def decided(self) -> bool:
        return self.target_answer is not None

    @property
    def passes(self) -> bool:
        agree = not self.decided or self.target_answer == self.source_answer
        return agree and all(ok for _, ok in self.structural_checks)

    def to_dict(self) -> dict:
        def word(answer):
            return UNVERIFIED if answer is None else ("yes" if answer else "no")

        return {
            "kind": self.kind,
            "source_answer": word(self.source_answer),
            "target_answer": word(self.target_answer),
            "target_method": self.target_method,
            "witness_forwarded": None if self.witness_forwarded is None else [list(mv) for mv in self.witness_forwarded],
            "structural_checks": [[name, "pass" if ok else "fail"] for name, ok in self.structural_checks],
            "passes": self.passes,
        }


# -- structural formulas -----------------------------------------------------


def _district_sizes(instance: ProblemInstance) -> list:
    return [len(members) for members in instance.districting.districts()]


def rgb_checks(source: X3CInstance, instance: ProblemInstance) -> list:
    padded = pad_x3c(source)
    n, m = padded.n, padded.m
    sizes = _district_sizes(instance)
    finite = [key for key, c in instance.costs.entries.items() if is_finite(c)]
    return [
        ("padding: 5n > m + 1", 5 * n > m + 1),
        ("districts = 8n - 1", instance.k == 8 * n - 1),
        ("budget = 3n", instance.budget == 3 * n),
        ("two alternatives", len(instance.alternatives) == 2),
        ("district sizes 4 (elements, sets) and 3 (fillers)", sizes == [4] * (3 * n + m) + [3] * (5 * n - m - 1)),
        ("finite-cost pairs = 3m", len(finite) == 3 * m and not is_finite(instance.costs.default_cost)),
    ]


def mrgm_checks(source: X3CInstance, instance: ProblemInstance, lam: int = 1) -> list:
    n, m = source.n, source.m
    if m < n:
        return [("fewer sets than n: fixed no-instance", instance.budget == 0 and instance.k == 1)]
    sizes = _district_sizes(instance)
    return [
        ("districts = m + 1 + 3n(m - 1)", instance.k == m + 1 + 3 * n * (m - 1)),
        ("budget = m - n", instance.budget == m - n),
        ("alternatives = 3n + 1", len(instance.alternatives) == 3 * n + 1),
        ("set districts hold 4 lambda voters", sizes[:m] == [4 * lam] * m),
        ("P_C and element districts hold m - n + 2 voters", sizes[m:] == [m - n + 2] * (1 + 3 * n * (m - 1))),
    ]


def dcp_checks(source: TwoDCPInstance, instance: ProblemInstance) -> list:
    n = len(source.vertices)
    ids = instance.voter_ids
    chain = [v for v in ids if v.startswith("d")]
    chain_prime = [v for v in ids if v.startswith("e")]
    h2 = instance.districting.members(1)
    winners = district_winner_sets(instance, instance.districting)
    return [
        ("two districts, two alternatives", instance.k == 2 and len(instance.alternatives) == 2),
        ("|D| = 10n + |Z2|", len(chain) == 10 * n + len(source.z2)),
        ("|D'| = 10n + |Z1| + 1", len(chain_prime) == 10 * n + len(source.z1) + 1),
        ("H2 = first |Z2| vertices of D", sorted(h2) == chain[: len(source.z2)]),
        ("budget = 2n", instance.budget == 2 * n),
        ("voter graph connected", induced_connected(instance.graph, ids)),
        ("initial winners: c in H1, y in H2", winners == [frozenset({"c"}), frozenset({"y"})]),
    ]


def tree_checks(source: X3CInstance, instance: ProblemInstance) -> list:
    n, m = source.n, source.m
    sizes = _district_sizes(instance)
    y_count = sum(m - source.frequency(u) for u in source.universe)
    return [
        ("districts = m + sum(m - f_u)", instance.k == m + y_count),
        ("|X_S| = 40n", sizes[:m] == [40 * n] * m),
        ("|Y_ui| = 10n", sizes[m:] == [10 * n] * y_count),
        ("budget = 7n", instance.budget == 7 * n),
        ("voter graph is a tree", is_tree(instance)),
    ]


# -- deciding the target -------------------------------------------------------


def exact_move_bound(instance: ProblemInstance) -> int:
    """Largest number of voters any affordable plan can move."""
    movable = set()
    cheapest = None
    for j, vid in enumerate(instance.voter_ids):
        for d in range(instance.k):
            if d == instance.homes[j]:
                continue
            c = instance.transfer_cost(vid, d)
            if is_finite(c):
                movable.add(vid)
                cheapest = c if cheapest is None else min(cheapest, c)
    if cheapest is None:
        return 0
    if cheapest == 0:
        return len(movable)
    return min(len(movable), math.floor(Fraction(instance.budget) / cheapest))


def decide_target(instance: ProblemInstance, guard: Optional[int] = None):
    """``(answer, method)`` from the cheapest exact solver in range.

    The oracle is tried first, then the bounded-moves search capped at the
    largest affordable number of moves (exact by that cap).  ``(None,
    "unverified")`` when both exceed the guard.
    """
    try:
        check_guard("oracle", instance.k ** instance.n, guard)
        return solve_exact(instance, size_guard=guard) is not None, "oracle"
    except GuardExceeded:
        pass
    bound = exact_move_bound(instance)
    try:
        return solve_bounded_moves(instance, bound, guard=guard) is not None, f"bounded-moves ({bound} moves)"
    except GuardExceeded:
        return None, "unverified"


def verify_reduction(kind: str, source, guard: Optional[int] = None, lam: int = 1, decide: bool = True) -> ReductionReport:
    """Decide the source by brute force, the target by the cheapest exact solver.

    A yes-source's witness is pushed through the forward construction and
    validated on the target.  ``decide=False`` skips solving the target.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown reduction kind {kind!r}; expected one of {', '.join(KINDS)}")
    if kind == "dcp-mgm":
        solution = solve_2dcp_brute(source, guard)
        source_answer = solution is not None
    else:
        cover = solve_x3c_brute(source, guard)
        source_answer = cover is not None

    if kind == "x3c-tree-mgm":
        if is_degenerate_tree_source(source):
            return ReductionReport(kind, source_answer, None, "not built", None, [("non-degenerate source", False)])

    build = {
        "x3c-rgb": lambda: (x3c_to_rgb(source), rgb_checks),
        "x3c-mrgm": lambda: (x3c_to_mrgm(source, lam), lambda s, i: mrgm_checks(s, i, lam)),
        "dcp-mgm": lambda: (dcp_to_mgm(source), dcp_checks),
        "x3c-tree-mgm": lambda: (x3c_to_mgm_tree(source), tree_checks),
    }
    instance, checker = build[kind]()
    checks = checker(source, instance)

    witness = None
    if source_answer:
        if kind == "dcp-mgm":
            witness = dcp_witness(source, solution[1])
        elif kind == "x3c-rgb":
            witness = rgb_witness(source, cover)
        elif kind == "x3c-mrgm":
            witness = mrgm_witness(source, cover)
        else:
            witness = tree_witness(source, cover)
        checks.append(("forwarded witness validates", validates(instance, witness)))
        if kind == "x3c-tree-mgm":
            checks.append(("forwarded witness moves 7n voters", len(witness) == 7 * source.n))

    answer, method = decide_target(instance, guard) if decide else (None, "unverified")
    return ReductionReport(kind, source_answer, answer, method, witness, checks)
