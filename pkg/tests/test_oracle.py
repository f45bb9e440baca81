"""The exhaustive oracle and the source-problem brute-force solvers."""

import itertools
import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _builders import from_tops
from gerrysolve.election import MovePlan, apply_plan, is_election_winner, is_feasible_plan, is_finite
from gerrysolve.errors import GuardExceeded
from gerrysolve.generate import random_corpus, random_instance
from gerrysolve.oracle import TwoDCPInstance, X3CInstance, solve_2dcp_brute, solve_exact, solve_x3c_brute
from gerrysolve.reductions import lift_complete_graph


def naive_oracle(inst):
    """Independent route: plain loops over every assignment, no numpy."""
    ids = inst.voter_ids
    homes = dict(zip(ids, inst.homes))
    tops = {v.id: v.ranking[0] for v in inst.voters}
    adj = {v: set() for v in ids}
    if inst.graph is not None:
        for a, b in inst.graph.edges:
            adj[a].add(b)
            adj[b].add(a)
    best = None
    for assign in itertools.product(range(inst.k), repeat=inst.n):
        where = dict(zip(ids, assign))
        moves = tuple(sorted((v, d) for v, d in where.items() if d != homes[v]))
        prices = [inst.transfer_cost(v, d) for v, d in moves]
        if all(is_finite(c) for c in prices):
            cost = sum(prices, Fraction(0))
            if cost > inst.budget:
                continue
            if inst.graph is not None and not all(_connected(adj, [v for v in ids if where[v] == d]) for d in range(inst.k)):
                continue
            wins = Counter()
            for d in range(inst.k):
                tally = Counter(tops[v] for v in ids if where[v] == d)
                if tally:
                    top = max(tally.values())
                    wins.update(a for a, t in tally.items() if t == top)
            most = max(wins.values())
            leaders = {a for a, w in wins.items() if w == most}
            ok = inst.target in leaders if inst.winner_mode.value == "co" else leaders == {inst.target}
            if ok and (best is None or (cost, moves) < best):
                best = (cost, moves)
    return best


def _connected(adj, members):
    if not members:
        return True
    members = set(members)
    seen, stack = set(), [next(iter(members))]
    while stack:
        v = stack.pop()
        if v not in seen:
            seen.add(v)
            stack.extend(adj[v] & members)
    return seen == members


# -- source solvers ---------------------------------------------------------------


def test_x3c_single_set():
    assert solve_x3c_brute(X3CInstance(3, [(1, 2, 3)])) == [0]


def test_x3c_first_cover_in_index_order():
    assert solve_x3c_brute(X3CInstance(6, [(1, 2, 3), (4, 5, 6), (1, 2, 4)])) == [0, 1]


def test_x3c_duplicate_sets():
    assert solve_x3c_brute(X3CInstance(3, [(1, 2, 3), (1, 2, 3)])) == [0]


def test_x3c_no_cover():
    assert solve_x3c_brute(X3CInstance(6, [(1, 2, 3), (1, 2, 4)])) is None


def test_2dcp_path_picks_smallest_v1():
    dcp = TwoDCPInstance(("x", "z1", "z2"), {("z1", "x"), ("x", "z2")}, {"z1"}, {"z2"})
    # as sorted tuples ("x", "z1") < ("z1",)
    assert solve_2dcp_brute(dcp) == ({"x", "z1"}, {"z2"})


def test_2dcp_star_is_yes():
    # x joins z1's side and z3 stands alone
    dcp = TwoDCPInstance(("x", "z1", "z2", "z3"), {("x", "z1"), ("x", "z2"), ("x", "z3")}, {"z1", "z2"}, {"z3"})
    assert solve_2dcp_brute(dcp) == ({"x", "z1", "z2"}, {"z3"})


def test_2dcp_star_is_no_when_anchors_straddle():
    dcp = TwoDCPInstance(("x", "z1", "z2", "z3"), {("x", "z1"), ("x", "z2"), ("x", "z3")}, {"z1", "z2"}, {"x", "z3"})
    assert solve_2dcp_brute(dcp) is None


def test_2dcp_single_edge():
    dcp = TwoDCPInstance(("z1", "z2"), {("z1", "z2")}, {"z1"}, {"z2"})
    assert solve_2dcp_brute(dcp) == ({"z1"}, {"z2"})


@pytest.mark.parametrize("which", ["x3c", "2dcp"])
def test_source_guards(which):
    with pytest.raises(GuardExceeded):
        if which == "x3c":
            solve_x3c_brute(X3CInstance(6, [(1, 2, 3)] * 10), guard=5)
        else:
            solve_2dcp_brute(TwoDCPInstance(("a", "b", "c"), {("a", "b"), ("b", "c")}, {"a"}, {"c"}), guard=4)


# -- bribery oracle ----------------------------------------------------------------


ONE_MOVE = from_tops([["c", "y", "y"], ["c", "c", "c"]], budget=1)
EQUAL_TOTALS = from_tops([["c", "c", "y"], ["y", "y", "c"]], budget=6)


def test_one_move_instance():
    plan, cost = solve_exact(ONE_MOVE)
    assert cost == 1 and len(plan) == 1
    # the tie-break picks the smallest move: v2 (a y-voter) into district 1
    assert plan.moves == (("v2", 1),)
    assert is_election_winner(ONE_MOVE, apply_plan(ONE_MOVE, plan))


def test_already_winning_gives_empty_plan():
    inst = from_tops([["c", "c"], ["c", "y"]], budget=3)
    assert solve_exact(inst) == (MovePlan(()), 0)


def test_equal_totals_two_districts_is_no():
    assert solve_exact(EQUAL_TOTALS) is None


def test_guard_error_message():
    with pytest.raises(GuardExceeded, match="instance too large for oracle"):
        solve_exact(EQUAL_TOTALS, size_guard=10)


def test_guard_environment_override(monkeypatch):
    monkeypatch.setenv("GERRYSOLVE_GUARD", "10")
    with pytest.raises(GuardExceeded):
        solve_exact(EQUAL_TOTALS)


def test_matches_naive_enumeration():
    corpus = random_corpus(seed=7, count=200, variants=("MRGM", "MGM", "RGB", "GB"), max_n=7)
    for inst in corpus:
        found = solve_exact(inst)
        expected = naive_oracle(inst)
        if expected is None:
            assert found is None
        else:
            assert found is not None
            assert (found[1], found[0].canonical().moves) == expected


def test_thread_count_does_not_change_answer():
    rng = random.Random(3)
    for _ in range(5):
        inst = random_instance(rng, "GB", 12, 3, 3)
        assert solve_exact(inst, threads=1) == solve_exact(inst, threads=4)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["MRGM", "MGM", "RGB", "GB"]))
def test_returned_plans_validate(seed, variant):
    inst = random_instance(random.Random(seed), variant, 6, 2 + seed % 2, 3)
    found = solve_exact(inst)
    if found is not None:
        plan, cost = found
        assert is_feasible_plan(inst, plan)
        assert is_election_winner(inst, apply_plan(inst, plan))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["MRGM", "MGM", "RGB", "GB"]))
def test_budget_monotone(seed, variant):
    inst = random_instance(random.Random(seed), variant, 6, 2, 3)
    found = solve_exact(inst)
    if found is not None:
        bigger = solve_exact(inst.with_budget(Fraction(inst.budget) + 2))
        assert bigger is not None and bigger[1] <= found[1]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["MRGM", "RGB"]))
def test_complete_graph_lift_keeps_answer(seed, variant):
    inst = random_instance(random.Random(seed), variant, 6, 3, 3)
    assert (solve_exact(inst) is None) == (solve_exact(lift_complete_graph(inst)) is None)
