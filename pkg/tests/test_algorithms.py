"""Bounded moves, tree cuts, fixed districts, the dynamic program and robustness."""

import dataclasses
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _builders import from_tops, path_edges
from gerrysolve.algorithms import (
    DPState,
    DPTable,
    ScoreGuess,
    is_tree,
    min_moves_to_win,
    mrgm_dp_min_cost,
    repair,
    solve_bounded_moves,
    solve_mrgm_dp,
    solve_mrgm_fixed_districts,
    solve_tree_cuts,
)
from gerrysolve.election import (
    UNMOVABLE,
    CostMap,
    MovePlan,
    WinnerMode,
    apply_plan,
    induced_connected,
    is_election_winner,
    is_feasible_plan,
    validates,
)
from gerrysolve.errors import GuardExceeded, InstanceError
from gerrysolve.generate import random_corpus, random_instance, random_tree_corpus
from gerrysolve.oracle import X3CInstance, solve_exact
from gerrysolve.reductions import x3c_to_rgb

ONE_MOVE = from_tops([["c", "y", "y"], ["c", "c", "c"]], budget=1)
EQUAL_TOTALS = from_tops([["c", "c", "y"], ["y", "y", "c"]], budget=6)
WINNING = from_tops([["c", "c"], ["c", "y"]], budget=2)


# -- bounded moves -------------------------------------------------------------------


def test_bounded_zero_moves_when_already_winning():
    assert solve_bounded_moves(WINNING, 0) == (MovePlan(()), 0)


def test_bounded_matches_oracle_on_one_move_instance():
    assert solve_bounded_moves(ONE_MOVE, 1) == solve_exact(ONE_MOVE)


def test_bounded_decides_small_rgb_reduction():
    inst = x3c_to_rgb(X3CInstance(3, [(1, 2, 3)]))
    plan, cost = solve_bounded_moves(inst, 3)
    assert cost == 3 and validates(inst, plan)
    assert {v for v, _ in plan.moves} == {"U1.1", "U2.1", "U3.1"}


def test_bounded_skips_unmovable_pairs():
    costs = CostMap({}, default_cost=UNMOVABLE)
    inst = from_tops([["c", "y", "y"], ["c", "c", "c"]], variant="RGB", costs=costs, budget=5)
    assert solve_bounded_moves(inst, 3) is None


def test_bounded_guard():
    with pytest.raises(GuardExceeded):
        solve_bounded_moves(EQUAL_TOTALS, 6, guard=10)


# -- tree cuts --------------------------------------------------------------------------


PATH4 = path_edges(["v1", "v2", "v3", "v4"])


def test_tree_cuts_path_already_winning():
    # D0 [c,c] gives c; D1 [y,c] ties, so c has 2 districts and y has 1
    inst = from_tops([["c", "c"], ["y", "c"]], variant="MGM", budget=1, edges=PATH4)
    assert is_election_winner(inst, inst.districting)
    assert solve_tree_cuts(inst) == (MovePlan(()), 0)


def test_tree_cuts_path_one_move():
    inst = from_tops([["c", "c"], ["y", "y", "c"]], variant="MGM", budget=1, edges=path_edges(["v1", "v2", "v3", "v4", "v5"]))
    plan, cost = solve_tree_cuts(inst)
    # v3 -> 0 also wins; the tie-break prefers the smaller move list
    assert cost == 1 and plan.moves == (("v2", 1),)
    assert solve_exact(inst) == (plan, cost)


def test_tree_cuts_single_district():
    yes = from_tops([["c", "c", "y"]], variant="MGM", edges=path_edges(["v1", "v2", "v3"]))
    no = from_tops([["c", "y", "y"]], variant="MGM", budget=2, edges=path_edges(["v1", "v2", "v3"]))
    assert solve_tree_cuts(yes) == (MovePlan(()), 0)
    assert solve_tree_cuts(no) is None


def test_tree_cuts_unmovable_center_keeps_its_label():
    # star centred on v1, which may not leave district 0
    edges = {("v1", "v2"), ("v1", "v3"), ("v1", "v4")}
    costs = CostMap({("v1", 1): UNMOVABLE})
    inst = from_tops([["y", "y", "c"], ["c"]], variant="GB", budget=5, edges=edges, costs=costs)
    found = solve_tree_cuts(inst)
    assert found == solve_exact(inst)
    if found is not None:
        assert "v1" not in dict(found[0].moves)


def test_tree_cuts_rejects_non_tree():
    inst = from_tops([["c", "c"], ["y"]], variant="MGM", edges={("v1", "v2"), ("v2", "v3"), ("v1", "v3")})
    assert not is_tree(inst)
    with pytest.raises(InstanceError, match="not a tree"):
        solve_tree_cuts(inst)


def test_tree_cuts_districts_stay_connected():
    for inst in random_tree_corpus(seed=5, count=40):
        found = solve_tree_cuts(inst)
        if found is not None:
            after = apply_plan(inst, found[0])
            assert all(induced_connected(inst.graph, members) for members in after.districts())


# -- fixed districts -------------------------------------------------------------------


def test_fixed_districts_already_winning():
    assert solve_mrgm_fixed_districts(WINNING) == (MovePlan(()), 0)


def test_fixed_districts_one_move():
    plan, cost = solve_mrgm_fixed_districts(ONE_MOVE)
    assert cost == 1 and validates(ONE_MOVE, plan)


def test_fixed_districts_equal_totals():
    assert solve_mrgm_fixed_districts(EQUAL_TOTALS) is None


def test_repair_on_the_current_scores():
    guess = ScoreGuess((2, 1), frozenset({0, 1}))
    assert repair(WINNING, guess) == MovePlan(())


def test_fixed_districts_needs_mrgm():
    with pytest.raises(InstanceError):
        solve_mrgm_fixed_districts(from_tops([["c"]], variant="MGM", edges=set()))


def test_fixed_districts_agrees_with_oracle_unique_mode():
    for inst in random_corpus(seed=2, count=150, variants=("MRGM",)):
        found = solve_mrgm_fixed_districts(inst)
        assert (found is None) == (solve_exact(inst) is None)


def test_fixed_districts_co_mode_is_sound():
    for inst in random_corpus(seed=10, count=150, variants=("MRGM",)):
        co = dataclasses.replace(inst, winner_mode=WinnerMode.CO)
        found = solve_mrgm_fixed_districts(co)
        if found is not None:
            assert validates(co, found[0])


# -- dynamic program ----------------------------------------------------------------


def test_dp_zero_budget_is_current_winner():
    for inst in random_corpus(seed=4, count=60, variants=("MRGM",), max_budget=0):
        assert solve_mrgm_dp(inst) == is_election_winner(inst, inst.districting)


def test_dp_one_move_instance():
    assert solve_mrgm_dp(ONE_MOVE)
    assert mrgm_dp_min_cost(ONE_MOVE) == 1


@pytest.mark.parametrize("budget", range(7))
def test_dp_equal_totals(budget):
    assert not solve_mrgm_dp(EQUAL_TOTALS.with_budget(budget))


def test_dp_base_and_plan():
    table = DPTable(ONE_MOVE)
    zero = (0, 0)
    assert table.entry(DPState(0, zero, 0, zero))
    assert not table.entry(DPState(0, zero, 0, (1, 0)))
    plan = table.plan()
    assert len(plan) == 1 and validates(ONE_MOVE, plan)


def test_dp_accepting_states_have_zero_supply():
    for inst in random_corpus(seed=6, count=40, variants=("MRGM",)):
        for _, supply, _ in DPTable(inst).accepting():
            assert not any(supply)


def test_dp_matches_oracle_cost():
    for inst in random_corpus(seed=8, count=100, variants=("MRGM",)):
        found = solve_exact(inst)
        assert mrgm_dp_min_cost(inst) == (None if found is None else found[1])


# -- robustness ---------------------------------------------------------------------


def test_robustness_examples():
    assert min_moves_to_win(WINNING) == 0
    assert min_moves_to_win(ONE_MOVE) == 1
    assert min_moves_to_win(EQUAL_TOTALS) is None


def test_robustness_guard():
    with pytest.raises(GuardExceeded):
        min_moves_to_win(ONE_MOVE, guard=5)


def test_robustness_needs_unit_costs():
    with pytest.raises(InstanceError):
        min_moves_to_win(dataclasses.replace(ONE_MOVE, variant="RGB"))


# -- properties ----------------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_every_solver_is_budget_monotone(seed):
    inst = random_instance(random.Random(seed), "MRGM", 6, 2, 3, budget=0)
    answers = []
    for b in range(4):
        at = inst.with_budget(b)
        answers.append(
            (
                solve_bounded_moves(at, b) is not None,
                solve_mrgm_fixed_districts(at) is not None,
                solve_mrgm_dp(at),
            )
        )
    for column in zip(*answers):
        assert list(column) == sorted(column)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["GB", "MGM"]))
def test_tree_cuts_match_oracle(seed, variant):
    inst = random_instance(random.Random(seed), variant, 7, 2 + seed % 2, 3, tree=True)
    found = solve_tree_cuts(inst)
    expected = solve_exact(inst)
    assert found == expected
    if found is not None:
        assert is_feasible_plan(inst, found[0])
