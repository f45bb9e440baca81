"""Enumerate every plan with at most ``max_moves`` moves.

For unit-cost variants with ``max_moves`` equal to the budget this decides
the instance exactly.  For weighted variants it decides the restriction
"at most ``max_moves`` voters move".
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Optional

from ..election import MovePlan, ProblemInstance
from ..errors import check_guard
from ..oracle import scaled_costs
from ._tally import Tally


def movable_pairs(instance: ProblemInstance) -> list:
    """Finite-cost destinations per voter index (home excluded)."""
    _, blocked, _, _ = scaled_costs(instance)
    return [
        [d for d in range(instance.k) if d != home and not blocked[j, d]]
        for j, home in enumerate(instance.homes)
    ]


def index_adjacency(instance: ProblemInstance) -> Optional[list]:
    if instance.graph is None:
        return None
    index = {v: j for j, v in enumerate(instance.voter_ids)}
    adj = [[] for _ in range(instance.n)]
    for u, v in instance.graph.edges:
        adj[index[u]].append(index[v])
        adj[index[v]].append(index[u])
    return adj


def members_connected(adj: list, members: set) -> bool:
    if not members:
        return True
    start = next(iter(members))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w in members and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(members)


def solve_bounded_moves(instance: ProblemInstance, max_moves: int, guard: Optional[int] = None):
    """Minimum-cost winning feasible plan using at most ``max_moves`` moves.

    Returns ``(plan, cost)`` or ``None``.  Ties on cost go to the
    lexicographically smallest sorted move list, as in the oracle.
    """
    if max_moves < 0:
        raise ValueError("max_moves must be nonnegative")
    dests = movable_pairs(instance)
    check_guard("bounded-moves enumeration", sum(map(len, dests)) ** max_moves, guard)
    cost, _, budget, scale = scaled_costs(instance)
    adj = index_adjacency(instance)
    tally = Tally(instance)
    n = instance.n
    ids = instance.voter_ids
    best = [None, None]  # scaled cost, moves
    stack = []
    touched = []

    def feasible():
        if adj is None:
            return True
        return all(members_connected(adj, tally.members[d]) for d in set(touched))

    def visit(start, spent):
        if (best[0] is None or spent < best[0]) and tally.target_wins() and feasible():
            # pre-order over ascending (voter, destination) is lexicographic,
            # so the first plan seen at a given cost is the tie-break winner
            best[0] = spent
            best[1] = tuple(stack)
        if len(stack) == max_moves:
            return
        for j in range(start, n):
            for d in dests[j]:
                c = spent + int(cost[j, d])
                if c > budget or (best[0] is not None and c >= best[0]):
                    continue
                src = tally.move(j, d)
                stack.append((ids[j], d))
                touched.extend((src, d))
                visit(j + 1, c)
                del touched[-2:]
                stack.pop()
                tally.move(j, src)

    visit(0, 0)
    if best[0] is None:
        return None
    return MovePlan(best[1]), Fraction(best[0], scale)
