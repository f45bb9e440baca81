"""Exact solvers, a brute-force oracle and hardness-reduction generators for
bribery and gerrymandering in district-based plurality elections."""

from .election import (
    UNMOVABLE,
    CostMap,
    Districting,
    MovePlan,
    ProblemInstance,
    Variant,
    Voter,
    VoterGraph,
    WinnerMode,
    apply_plan,
    district_winner_sets,
    election_winner_set,
    induced_connected,
    is_election_winner,
    is_feasible_plan,
    plan_cost,
    plurality_winner_set,
    validates,
)
from .errors import GuardExceeded, InstanceError, PlanError
from .io import parse_instance, parse_plan, serialize_instance, serialize_plan
from .oracle import TwoDCPInstance, X3CInstance, solve_2dcp_brute, solve_exact, solve_x3c_brute

__all__ = [
    "UNMOVABLE",
    "CostMap",
    "Districting",
    "GuardExceeded",
    "InstanceError",
    "MovePlan",
    "PlanError",
    "ProblemInstance",
    "TwoDCPInstance",
    "Variant",
    "Voter",
    "VoterGraph",
    "WinnerMode",
    "X3CInstance",
    "apply_plan",
    "district_winner_sets",
    "election_winner_set",
    "induced_connected",
    "is_election_winner",
    "is_feasible_plan",
    "parse_instance",
    "parse_plan",
    "plan_cost",
    "plurality_winner_set",
    "serialize_instance",
    "serialize_plan",
    "solve_2dcp_brute",
    "solve_exact",
    "solve_x3c_brute",
    "validates",
]
