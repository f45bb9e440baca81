"""Reduction instance builders, witness maps, lifts and verifiers."""

from .constructions import (
    dcp_to_mgm,
    dcp_witness,
    enumerate_2dcp_sources,
    enumerate_x3c_sources,
    is_degenerate_tree_source,
    lift_complete_graph,
    lift_uniform_cost,
    mrgm_witness,
    pad_x3c,
    rgb_witness,
    small_connected_graphs,
    tree_witness,
    x3c_to_mgm_tree,
    x3c_to_mrgm,
    x3c_to_rgb,
)
from .verify import KINDS, UNVERIFIED, ReductionReport, decide_target, exact_move_bound, verify_reduction

__all__ = [
    "KINDS",
    "UNVERIFIED",
    "ReductionReport",
    "dcp_to_mgm",
    "dcp_witness",
    "decide_target",
    "enumerate_2dcp_sources",
    "enumerate_x3c_sources",
    "exact_move_bound",
    "is_degenerate_tree_source",
    "lift_complete_graph",
    "lift_uniform_cost",
    "mrgm_witness",
    "pad_x3c",
    "rgb_witness",
    "small_connected_graphs",
    "tree_witness",
    "verify_reduction",
    "x3c_to_mgm_tree",
    "x3c_to_mrgm",
    "x3c_to_rgb",
]
