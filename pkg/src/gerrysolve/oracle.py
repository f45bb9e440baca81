"""Exhaustive ground-truth solvers.

``solve_exact`` enumerates every voter-to-district assignment.  A final
assignment determines the plan (the voters whose district changed) and its
cost, so enumerating assignments instead of move sequences is complete.  The
enumeration is vectorised over chunks of assignment indices; rational costs
are scaled to integers by the common denominator so every comparison stays
exact.  Chunks may be evaluated on several threads; partial results are
reduced by (cost, move-list) which is associative, so the answer never
depends on the thread count.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .election import (
    UNMOVABLE,
    MovePlan,
    ProblemInstance,
    VoterGraph,
    WinnerMode,
    induced_connected,
)
from .errors import InstanceError, check_guard

CHUNK = 1 << 15


# -- reduction source problems -------------------------------------------


@dataclass(frozen=True)
class X3CInstance:
    """Exact cover by 3-sets over the universe ``{1, ..., universe_size}``."""

    universe_size: int
    sets: tuple

    def __post_init__(self):
        if self.universe_size < 0 or self.universe_size % 3:
            raise InstanceError(f"universe size must be a nonnegative multiple of 3, got {self.universe_size}")
        sets = tuple(frozenset(int(u) for u in s) for s in self.sets)
        for j, s in enumerate(sets):
            if len(s) != 3:
                raise InstanceError(f"set {j} does not have exactly 3 distinct elements")
            if not all(1 <= u <= self.universe_size for u in s):
                raise InstanceError(f"set {j} has elements outside the universe")
        object.__setattr__(self, "sets", sets)

    @property
    def n(self) -> int:
        return self.universe_size // 3

    @property
    def m(self) -> int:
        return len(self.sets)

    @property
    def universe(self) -> range:
        return range(1, self.universe_size + 1)

    def frequency(self, u: int) -> int:
        return sum(1 for s in self.sets if u in s)

    def is_exact_cover(self, indices: Iterable[int]) -> bool:
        chosen = [self.sets[j] for j in indices]
        covered = set().union(*chosen) if chosen else set()
        return len(chosen) == self.n and covered == set(self.universe)


@dataclass(frozen=True)
class TwoDCPInstance:
    """2-disjoint connected partitioning: split ``graph`` into two connected
    parts containing ``z1`` and ``z2`` respectively."""

    vertices: tuple
    edges: frozenset
    z1: frozenset
    z2: frozenset

    def __post_init__(self):
        vertices = tuple(sorted(set(self.vertices)))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "z1", frozenset(self.z1))
        object.__setattr__(self, "z2", frozenset(self.z2))
        graph = VoterGraph(frozenset(self.edges))
        object.__setattr__(self, "edges", graph.edges)
        vset = set(vertices)
        if not graph.vertices() <= vset:
            raise InstanceError("edge references an unknown vertex")
        if not self.z1 or not self.z2:
            raise InstanceError("anchor sets must be non-empty")
        if self.z1 & self.z2:
            raise InstanceError("anchor sets must be disjoint")
        if not (self.z1 | self.z2) <= vset:
            raise InstanceError("anchor sets must be vertex subsets")
        if not induced_connected(graph, vertices):
            raise InstanceError("graph is not connected")

    @property
    def graph(self) -> VoterGraph:
        return VoterGraph(self.edges)

    def is_solution(self, part1, part2) -> bool:
        part1, part2 = set(part1), set(part2)
        g = self.graph
        return (
            part1 | part2 == set(self.vertices)
            and not part1 & part2
            and self.z1 <= part1
            and self.z2 <= part2
            and induced_connected(g, part1)
            and induced_connected(g, part2)
        )


def solve_x3c_brute(x3c: X3CInstance, guard: Optional[int] = None) -> Optional[list]:
    """First exact cover in lexicographic index order, or ``None``."""
    check_guard("x3c brute force", math.comb(x3c.m, x3c.n), guard)
    target = set(x3c.universe)
    for combo in itertools.combinations(range(x3c.m), x3c.n):
        covered = set()
        for j in combo:
            covered |= x3c.sets[j]
        if covered == target:
            return list(combo)
    return None


def solve_2dcp_brute(dcp: TwoDCPInstance, guard: Optional[int] = None) -> Optional[tuple]:
    """The valid bipartition with lexicographically smallest sorted ``V1``."""
    check_guard("2dcp brute force", 2 ** len(dcp.vertices), guard)
    free = [v for v in dcp.vertices if v not in dcp.z1 and v not in dcp.z2]
    graph = dcp.graph
    best = None
    for mask in range(1 << len(free)):
        part1 = set(dcp.z1) | {free[i] for i in range(len(free)) if mask >> i & 1}
        part2 = set(dcp.vertices) - part1
        if induced_connected(graph, part1) and induced_connected(graph, part2):
            key = tuple(sorted(part1))
            if best is None or key < best[0]:
                best = (key, frozenset(part1), frozenset(part2))
    return None if best is None else (best[1], best[2])


# -- bribery oracle --------------------------------------------------------


def scaled_costs(instance: ProblemInstance):
    """Integer cost matrix, unmovable mask, scaled budget and scale factor.

    Row ``j`` is voter ``instance.voter_ids[j]``; home entries are zero.
    """
    n, k = instance.n, instance.k
    finite = [instance.budget]
    for vid in instance.voter_ids:
        for d in range(k):
            c = instance.transfer_cost(vid, d)
            if c is not UNMOVABLE:
                finite.append(c)
    scale = 1
    for value in finite:
        scale = math.lcm(scale, value.denominator)
    cost = np.zeros((n, k), dtype=np.int64)
    blocked = np.zeros((n, k), dtype=bool)
    for j, vid in enumerate(instance.voter_ids):
        for d in range(k):
            c = instance.transfer_cost(vid, d)
            if c is UNMOVABLE:
                blocked[j, d] = True
            else:
                cost[j, d] = int(c * scale)
    budget = int(instance.budget * scale)
    return cost, blocked, budget, scale


def connected_mask(assign: np.ndarray, edges: np.ndarray, k: int) -> np.ndarray:
    """Row-wise test that every district of each assignment is connected.

    Labels propagate the minimum voter index along same-district edges until
    stable; a district is connected iff it contains at most one root.
    """
    rows, n = assign.shape
    labels = np.broadcast_to(np.arange(n), (rows, n)).copy()
    if len(edges):
        eu, ev = edges[:, 0], edges[:, 1]
        same = assign[:, eu] == assign[:, ev]
        while True:
            changed = False
            for e in range(len(eu)):
                a, b = labels[:, eu[e]], labels[:, ev[e]]
                sel = same[:, e] & (a != b)
                if sel.any():
                    changed = True
                    lo = np.minimum(a[sel], b[sel])
                    labels[sel, eu[e]] = lo
                    labels[sel, ev[e]] = lo
            if not changed:
                break
            # pointer jumping through representatives speeds convergence
            labels = np.take_along_axis(labels, labels, axis=1)
    roots = labels == np.arange(n)
    counts = np.zeros((rows, k), dtype=np.int64)
    ar = np.arange(rows)
    for j in range(n):
        counts[ar, assign[:, j]] += roots[:, j]
    return (counts <= 1).all(axis=1)


def target_wins_mask(assign: np.ndarray, tops: np.ndarray, k: int, m: int, target: int, co: bool) -> np.ndarray:
    rows, n = assign.shape
    tally = np.zeros((rows, k * m), dtype=np.int32)
    ar = np.arange(rows)
    flat = assign * m + tops[None, :]
    for j in range(n):
        tally[ar, flat[:, j]] += 1
    tally = tally.reshape(rows, k, m)
    best = tally.max(axis=2, keepdims=True)
    district_win = (tally == best) & (best > 0)
    wins = district_win.sum(axis=1)
    top = wins.max(axis=1, keepdims=True)
    elected = wins == top
    if co:
        return elected[:, target]
    return elected[:, target] & (elected.sum(axis=1) == 1)


class _Search:
    def __init__(self, instance: ProblemInstance):
        self.instance = instance
        self.n, self.k, self.m = instance.n, instance.k, instance.m
        self.tops = np.array(instance.tops, dtype=np.int64)
        self.homes = np.array(instance.homes, dtype=np.int64)
        self.cost, self.blocked, self.budget, self.scale = scaled_costs(instance)
        self.target = instance.alt_index[instance.target]
        self.co = instance.winner_mode is WinnerMode.CO
        if instance.graph is not None:
            index = {v: j for j, v in enumerate(instance.voter_ids)}
            self.edges = np.array(sorted((index[u], index[v]) for u, v in instance.graph.edges), dtype=np.int64).reshape(-1, 2)
        else:
            self.edges = None
        self.powers = self.k ** np.arange(self.n, dtype=np.int64)

    def chunk(self, lo: int, hi: int):
        idx = np.arange(lo, hi, dtype=np.int64)
        assign = (idx[:, None] // self.powers[None, :]) % self.k
        voters = np.arange(self.n)
        ok = ~self.blocked[voters[None, :], assign].any(axis=1)
        total = self.cost[voters[None, :], assign].sum(axis=1)
        ok &= total <= self.budget
        assign, total = assign[ok], total[ok]
        if not len(assign):
            return None
        ok = target_wins_mask(assign, self.tops, self.k, self.m, self.target, self.co)
        assign, total = assign[ok], total[ok]
        if self.edges is not None and len(assign):
            ok = connected_mask(assign, self.edges, self.k)
            assign, total = assign[ok], total[ok]
        if not len(assign):
            return None
        low = total.min()
        ids = self.instance.voter_ids
        best = None
        for row in assign[total == low]:
            key = tuple((ids[j], int(row[j])) for j in range(self.n) if row[j] != self.homes[j])
            if best is None or key < best:
                best = key
        return int(low), best


def _better(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def solve_exact(instance: ProblemInstance, size_guard: Optional[int] = None, threads: int = 1):
    """Minimum-cost winning feasible plan by exhaustive enumeration.

    Returns ``(plan, cost)`` or ``None``.  Among minimum-cost plans the one
    with the lexicographically smallest sorted move list wins.
    """
    total = instance.k ** instance.n
    check_guard("instance too large for oracle", total, size_guard)
    search = _Search(instance)
    bounds = [(lo, min(lo + CHUNK, total)) for lo in range(0, total, CHUNK)]
    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda b: search.chunk(*b), bounds))
    else:
        parts = [search.chunk(lo, hi) for lo, hi in bounds]
    best = None
    for part in parts:
        best = _better(best, part)
    if best is None:
        return None
    cost, key = best
    return MovePlan(key), Fraction(cost, search.scale)
