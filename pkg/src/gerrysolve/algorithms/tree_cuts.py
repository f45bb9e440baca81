"""Tree districting by cut-edge enumeration.

On a tree, a partition into ``j`` non-empty connected parts is exactly the
forest left after deleting ``j - 1`` edges.  Every cut set is tried for
``j = 1..k`` and every injective labelling of the resulting components with
district indices is costed; with ``j < k`` the unused districts end empty.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Optional

from ..election import MovePlan, ProblemInstance, Variant, induced_connected, winners_from_counts
from ..errors import InstanceError, check_guard
from ..oracle import scaled_costs


def is_tree(instance: ProblemInstance) -> bool:
    graph = instance.graph
    return graph is not None and len(graph.edges) == instance.n - 1 and induced_connected(graph, instance.voter_ids)


def _components(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    roots = {}
    comp = [0] * n
    for j in range(n):
        comp[j] = roots.setdefault(find(j), len(roots))
    return comp, len(roots)


def search_size(n: int, k: int) -> int:
    return sum(math.comb(n - 1, j - 1) * math.perm(k, j) for j in range(1, min(k, n) + 1))


def solve_tree_cuts(instance: ProblemInstance, guard: Optional[int] = None):
    """Minimum-cost winning plan for GB/MGM on a tree; ``(plan, cost)`` or ``None``."""
    if instance.variant not in (Variant.GB, Variant.MGM):
        raise InstanceError("tree-cut solver needs a GB or MGM instance")
    if not is_tree(instance):
        raise InstanceError("voter graph is not a tree")
    n, k, m = instance.n, instance.k, instance.m
    check_guard("tree-cut enumeration", search_size(n, k), guard)
    cost, blocked, budget, scale = scaled_costs(instance)
    ids = instance.voter_ids
    index = {v: j for j, v in enumerate(ids)}
    edges = sorted((index[u], index[v]) for u, v in instance.graph.edges)
    tops, homes = instance.tops, instance.homes
    target = instance.alt_index[instance.target]
    co = instance.winner_mode.value == "co"
    best = None
    for parts in range(1, min(k, n) + 1):
        for cut in itertools.combinations(range(len(edges)), parts - 1):
            kept = [e for i, e in enumerate(edges) if i not in cut]
            comp, count = _components(n, kept)
            assert count == parts
            for labels in itertools.permutations(range(k), parts):
                assign = [labels[comp[j]] for j in range(n)]
                if any(blocked[j, assign[j]] for j in range(n)):
                    continue
                spent = sum(int(cost[j, assign[j]]) for j in range(n))
                if spent > budget:
                    continue
                if not _target_wins(assign, tops, k, m, target, co):
                    continue
                key = tuple((ids[j], assign[j]) for j in range(n) if assign[j] != homes[j])
                if best is None or (spent, key) < best:
                    best = (spent, key)
    if best is None:
        return None
    plan = MovePlan(best[1])
    return plan, Fraction(best[0], scale)


def _target_wins(assign, tops, k, m, target, co):
    counts = [[0] * m for _ in range(k)]
    for d, a in zip(assign, tops):
        counts[d][a] += 1
    wins = [0] * m
    for row in counts:
        for a in winners_from_counts(row):
            wins[a] += 1
    best = wins[target]
    if best == 0:
        return False
    return all(w < best or (co and w == best) for a, w in enumerate(wins) if a != target)
