"""Exact polynomial-time algorithms for restricted regimes."""

from .bounded import solve_bounded_moves
from .dp import DPState, DPTable, mrgm_dp_min_cost, solve_mrgm_dp
from .fixed_districts import ScoreGuess, repair, solve_mrgm_fixed_districts
from .robustness import min_moves_to_win
from .tree_cuts import is_tree, solve_tree_cuts

__all__ = [
    "DPState",
    "DPTable",
    "ScoreGuess",
    "is_tree",
    "min_moves_to_win",
    "mrgm_dp_min_cost",
    "repair",
    "solve_bounded_moves",
    "solve_mrgm_dp",
    "solve_mrgm_fixed_districts",
    "solve_tree_cuts",
]
