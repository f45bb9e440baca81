"""How many voter moves it takes to make the target win."""

from __future__ import annotations

from typing import Optional

from ..election import ProblemInstance, Variant
from ..errors import GuardExceeded, InstanceError, default_guard
from ..oracle import solve_exact
from .bounded import movable_pairs, solve_bounded_moves
from .dp import DPTable, table_size


def min_moves_to_win(instance: ProblemInstance, guard: Optional[int] = None) -> Optional[int]:
    """Smallest budget that makes the instance a yes-instance, or ``None``.

    Budgets are tried upward from 0 with the bounded-moves search while its
    guard allows; past that, one call at budget ``n`` to the dynamic program
    (MRGM) or the oracle yields the minimum directly, because both return the
    cheapest winning plan and answers are monotone in the budget.
    """
    if not instance.variant.unit_cost:
        raise InstanceError("robustness is defined for the unit-cost variants MGM and MRGM")
    guard = default_guard() if guard is None else guard
    pairs = sum(map(len, movable_pairs(instance)))
    n = instance.n
    for b in range(n + 1):
        if pairs ** b > guard:
            break
        if solve_bounded_moves(instance.with_budget(b), b, guard) is not None:
            return b
    else:
        return None
    full = instance.with_budget(n)
    if instance.variant is Variant.MRGM and table_size(full) <= guard:
        cost = DPTable(full, guard).min_cost()
        return None if cost is None else int(cost)
    if instance.k ** n <= guard:
        found = solve_exact(full, guard)
        return None if found is None else int(found[1])
    raise GuardExceeded("robustness", instance.k ** n, guard)
