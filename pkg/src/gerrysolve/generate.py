"""Seeded random instances for differential testing and the CLI."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .election import UNMOVABLE, CostMap, ProblemInstance, Variant, Voter, VoterGraph


def alternative_labels(m: int) -> list:
    return ["c"] + [f"a{i}" for i in range(1, m)]


def voter_labels(n: int) -> list:
    width = len(str(n))
    return [f"v{i:0{width}d}" for i in range(1, n + 1)]


def random_tree(rng: random.Random, ids: list) -> set:
    order = list(ids)
    rng.shuffle(order)
    return {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, len(order))}


def _tree_districts(rng, ids, tree_edges, k):
    edges = sorted(tree_edges)
    cut = set(rng.sample(range(len(edges)), min(k - 1, len(edges))))
    parent = {v: v for v in ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, (u, v) in enumerate(edges):
        if i not in cut:
            parent[find(u)] = find(v)
    roots = sorted({find(v) for v in ids})
    labels = list(range(k))
    rng.shuffle(labels)
    label_of = {r: labels[i] for i, r in enumerate(roots)}
    return {v: label_of[find(v)] for v in ids}


def random_instance(
    rng: random.Random,
    variant,
    n: int,
    k: int,
    m: int,
    budget=None,
    tree: bool = False,
    extra_edge_prob: float = 0.2,
    unmovable_prob: float = 0.15,
) -> ProblemInstance:
    """Uniform random tops; graph variants get spanning-tree based districts.

    With ``tree=True`` the voter graph is the spanning tree itself, otherwise
    extra edges are sprinkled on top of it.  Weighted variants draw small
    rational costs with some unmovable pairs.
    """
    variant = Variant(variant)
    if n < k:
        raise ValueError("need at least one voter per district")
    alts = alternative_labels(m)
    ids = voter_labels(n)
    graph = None
    if variant.has_graph:
        tree_edges = random_tree(rng, ids)
        homes = _tree_districts(rng, ids, tree_edges, k)
        edges = set(tree_edges)
        if not tree:
            for i in range(n):
                for j in range(i + 1, n):
                    if rng.random() < extra_edge_prob:
                        edges.add((ids[i], ids[j]))
        graph = VoterGraph(frozenset(edges))
    else:
        seats = list(range(k)) + [rng.randrange(k) for _ in range(n - k)]
        rng.shuffle(seats)
        homes = dict(zip(ids, seats))
    voters = []
    for vid in ids:
        ranking = list(alts)
        rng.shuffle(ranking)
        voters.append(Voter(vid, tuple(ranking), homes[vid]))
    costs = CostMap()
    if not variant.unit_cost:
        entries = {}
        for vid in ids:
            for d in range(k):
                if d == homes[vid]:
                    continue
                if rng.random() < unmovable_prob:
                    entries[(vid, d)] = UNMOVABLE
                else:
                    entries[(vid, d)] = Fraction(rng.randint(1, 4), rng.randint(1, 3))
        costs = CostMap(entries)
    if budget is None:
        budget = rng.randint(0, 3) if variant.unit_cost else Fraction(rng.randint(0, 12), 2)
    return ProblemInstance(
        alternatives=tuple(alts),
        voters=tuple(voters),
        k=k,
        costs=costs,
        budget=budget,
        target="c",
        variant=variant,
        graph=graph,
    )


def random_corpus(seed: int, count: int, variants=("MRGM", "MGM"), max_n=8, max_k=3, max_m=3, max_budget=3, tree=False) -> list:
    """Reproducible batch of small instances cycling through ``variants``."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        variant = variants[i % len(variants)]
        k = rng.randint(1, max_k)
        n = rng.randint(max(k, 2), max_n)
        m = rng.randint(2, max_m)
        budget = rng.randint(0, max_budget) if Variant(variant).unit_cost else None
        out.append(random_instance(rng, variant, n, k, m, budget=budget, tree=tree))
    return out


def random_seeded(variant, n, k, m, seed: int, budget: Optional[int] = None, tree: bool = False) -> ProblemInstance:
    return random_instance(random.Random(seed), variant, n, k, m, budget=budget, tree=tree)


def random_tree_corpus(seed: int, count: int, variants=("GB", "MGM"), max_n=10, ks=(2, 3), max_m=3) -> list:
    """Reproducible tree-graph instances; weighted ones carry rational and unmovable costs."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        variant = variants[i % len(variants)]
        k = rng.choice(ks)
        n = rng.randint(k, max_n)
        m = rng.randint(2, max_m)
        out.append(random_instance(rng, variant, n, k, m, tree=True))
    return out
