"""Hardness-reduction instance builders and their forward witness maps.

Every builder is deterministic: voter ids, district order, rankings and edge
lists depend only on the source instance.  Rankings list the top choice first
and then the remaining alternatives in the instance's alternative order;
below the top they never affect a plurality outcome.
"""

from __future__ import annotations

import dataclasses
import itertools
from fractions import Fraction
from typing import Iterable, Optional

import networkx as nx

from ..election import UNMOVABLE, CostMap, MovePlan, ProblemInstance, Variant, Voter, VoterGraph
from ..errors import InstanceError
from ..oracle import TwoDCPInstance, X3CInstance


class _Builder:
    """Accumulates voters district by district."""

    def __init__(self, alternatives):
        self.alternatives = tuple(alternatives)
        self.voters = []
        self.edges = set()
        self.k = 0

    def ranking(self, top):
        return (top,) + tuple(a for a in self.alternatives if a != top)

    def district(self, members) -> int:
        """Add ``(voter id, top)`` pairs as a new district; returns its index."""
        d = self.k
        for vid, top in members:
            self.voters.append(Voter(vid, self.ranking(top), d))
        self.k += 1
        return d

    def path(self, ids):
        for a, b in zip(ids, ids[1:]):
            self.edges.add((a, b))

    def build(self, budget, target="c", variant=Variant.MRGM, costs=None, graph=False) -> ProblemInstance:
        return ProblemInstance(
            alternatives=self.alternatives,
            voters=tuple(self.voters),
            k=self.k,
            costs=costs if costs is not None else CostMap(),
            budget=budget,
            target=target,
            variant=variant,
            graph=VoterGraph(frozenset(self.edges)) if graph else None,
        )


def _element_alternatives(x3c: X3CInstance) -> tuple:
    return ("c",) + tuple(f"a{u}" for u in x3c.universe)


# -- padding and the two-alternative weighted reduction ----------------------


def pad_x3c(x3c: X3CInstance) -> X3CInstance:
    """Add fresh 3-element blocks, each with its own set, until ``5n > m + 1``."""
    size, sets = x3c.universe_size, list(x3c.sets)
    while 5 * (size // 3) <= len(sets) + 1:
        sets.append(frozenset({size + 1, size + 2, size + 3}))
        size += 3
    return X3CInstance(size, tuple(sets))


def _rgb_layout(x3c: X3CInstance):
    n, m = x3c.n, x3c.m
    width = len(str(max(3 * n, m, 5 * n - m - 1, 1)))
    u_ids = {u: [f"U{u:0{width}d}.{t}" for t in range(1, 5)] for u in x3c.universe}
    s_ids = {j: [f"S{j + 1:0{width}d}.{t}" for t in range(1, 5)] for j in range(m)}
    d_ids = {i: [f"D{i:0{width}d}.{t}" for t in range(1, 4)] for i in range(1, 5 * n - m)}
    return u_ids, s_ids, d_ids


def x3c_to_rgb(x3c: X3CInstance) -> ProblemInstance:
    """Two alternatives, ``8n - 1`` districts, cost 1 or unmovable, budget ``3n``.

    Sources with ``5n <= m + 1`` are padded first.
    """
    x3c = pad_x3c(x3c)
    n, m = x3c.n, x3c.m
    u_ids, s_ids, d_ids = _rgb_layout(x3c)
    b = _Builder(("c", "y"))
    for u in x3c.universe:
        ids = u_ids[u]
        b.district([(ids[0], "c"), (ids[1], "c"), (ids[2], "c"), (ids[3], "y")])
    set_district = {}
    for j in range(m):
        ids = s_ids[j]
        set_district[j] = b.district([(ids[0], "c")] + [(v, "y") for v in ids[1:]])
    for i in range(1, 5 * n - m):
        ids = d_ids[i]
        b.district([(ids[0], "c"), (ids[1], "y"), (ids[2], "y")])
    entries = {}
    for j, s in enumerate(x3c.sets):
        for u in s:
            entries[(u_ids[u][0], set_district[j])] = Fraction(1)
    costs = CostMap(entries, default_cost=UNMOVABLE)
    return b.build(3 * n, variant=Variant.RGB, costs=costs)


def _padded_cover(x3c: X3CInstance, cover: Iterable[int]) -> tuple:
    padded = pad_x3c(x3c)
    return padded, tuple(sorted(cover)) + tuple(range(x3c.m, padded.m))


def rgb_witness(x3c: X3CInstance, cover: Iterable[int]) -> MovePlan:
    """Send each element's designated c-voter to the district of its cover set."""
    padded, cover = _padded_cover(x3c, cover)
    u_ids, _, _ = _rgb_layout(padded)
    moves = []
    for j in cover:
        for u in sorted(padded.sets[j]):
            moves.append((u_ids[u][0], padded.universe_size + j))
    return MovePlan(tuple(sorted(moves)))


# -- the unit-cost reduction with many alternatives ------------------------


def _mrgm_trivial_no() -> ProblemInstance:
    b = _Builder(("c", "a1"))
    b.district([("v1", "a1")])
    return b.build(0)


def x3c_to_mrgm(x3c: X3CInstance, lam: int = 1) -> ProblemInstance:
    """MRGM with one alternative per universe element and budget ``m - n``.

    Districts, in order: one ``P_S`` per set (``lam`` voters for each of its
    elements and ``lam`` for c), ``P_C`` with ``m - n + 2`` c-voters, and
    ``m - 1`` copies ``P_{u,i}`` of ``m - n + 2`` voters for each element.
    With fewer sets than ``n`` no cover exists and a fixed no-instance is
    returned instead.
    """
    if lam < 1:
        raise InstanceError("lambda must be a positive integer")
    n, m = x3c.n, x3c.m
    if m < n:
        return _mrgm_trivial_no()
    big = m - n + 2
    b = _Builder(_element_alternatives(x3c))
    for j, s in enumerate(x3c.sets):
        members = [(f"S{j + 1:02d}.a{u:02d}.{t:02d}", f"a{u}") for u in sorted(s) for t in range(1, lam + 1)]
        members += [(f"S{j + 1:02d}.c.{t:02d}", "c") for t in range(1, lam + 1)]
        b.district(members)
    b.district([(f"C.{t:02d}", "c") for t in range(1, big + 1)])
    for u in x3c.universe:
        for i in range(1, m):
            b.district([(f"P{u:02d}.{i:02d}.{t:02d}", f"a{u}") for t in range(1, big + 1)])
    return b.build(m - n)


def mrgm_witness(x3c: X3CInstance, cover: Iterable[int]) -> MovePlan:
    """One ``P_C`` voter into every set district outside the cover."""
    outside = [j for j in range(x3c.m) if j not in set(cover)]
    return MovePlan(tuple((f"C.{t:02d}", j) for t, j in enumerate(outside, start=1)))


# -- two alternatives, two districts, arbitrary graph ----------------------


def _dcp_layout(dcp: TwoDCPInstance):
    n = len(dcp.vertices)
    z1, z2 = min(dcp.z1), min(dcp.z2)
    chain = [f"d{i:03d}" for i in range(1, 10 * n + len(dcp.z2) + 1)]
    chain_prime = [f"e{i:03d}" for i in range(1, 10 * n + len(dcp.z1) + 2)]
    return n, z1, z2, chain, chain_prime


def dcp_to_mgm(dcp: TwoDCPInstance) -> ProblemInstance:
    """Two alternatives and two districts; ``H1`` is district 0, ``H2`` district 1.

    Vertex ``x`` becomes voter ``v:x`` and, unless ``x`` is an anchor, also a
    pendant ``w:x``.  The chains ``d`` and ``e`` hang off the chosen anchors of
    the second and first anchor set; an extra edge joins the far end of ``d``
    to the first anchor so the initial ``H1`` is connected.
    """
    n, z1, z2, chain, chain_prime = _dcp_layout(dcp)
    anchors = dcp.z1 | dcp.z2
    free = [x for x in dcp.vertices if x not in anchors]
    b = _Builder(("c", "y"))
    h1 = [(f"v:{x}", "c" if x in dcp.z2 else "y") for x in dcp.vertices]
    h1 += [(f"w:{x}", "c") for x in free]
    h1 += [(d, "y" if i <= 5 * n else "c") for i, d in enumerate(chain, start=1) if i > len(dcp.z2)]
    h1 += [(e, "y" if i <= 5 * n else "c") for i, e in enumerate(chain_prime, start=1)]
    b.district(h1)
    b.district([(d, "y" if i <= 5 * n else "c") for i, d in enumerate(chain, start=1) if i <= len(dcp.z2)])
    for a, c in dcp.edges:
        b.edges.add((f"v:{a}", f"v:{c}"))
    for x in free:
        b.edges.add((f"v:{x}", f"w:{x}"))
    b.path(chain)
    b.path(chain_prime)
    b.edges.add((f"v:{z2}", chain[0]))
    b.edges.add((f"v:{z1}", chain_prime[0]))
    b.edges.add((chain[-1], f"v:{z1}"))
    return b.build(2 * n, variant=Variant.MGM, graph=True)


def dcp_witness(dcp: TwoDCPInstance, part2: Iterable) -> MovePlan:
    """Move the voters of the second part into ``H2``."""
    part2 = set(part2)
    moves = [(f"v:{x}", 1) for x in part2]
    moves += [(f"w:{x}", 1) for x in part2 if x not in dcp.z1 | dcp.z2]
    return MovePlan(tuple(sorted(moves)))


# -- trees -------------------------------------------------------------------


def _tree_layout(x3c: X3CInstance):
    m = x3c.m
    y_keys = [(u, i) for u in x3c.universe for i in range(1, m - x3c.frequency(u) + 1)]
    if not y_keys:
        raise InstanceError("degenerate source: every element lies in every set, so no Y district exists")
    return y_keys, y_keys[0][0]


def is_degenerate_tree_source(x3c: X3CInstance) -> bool:
    """True when every element lies in every set, leaving no Y district."""
    return all(x3c.frequency(u) == x3c.m for u in x3c.universe)


def _x_district(j: int, n: int, s) -> list:
    x, y, z = sorted(s)
    size = 10 * n
    tops = ["c", f"a{x}", f"a{x}", f"a{y}", f"a{y}", f"a{z}", f"a{z}"]
    tops += ["c"] * (size - 1) + [f"a{x}"] * (size - 2) + [f"a{y}"] * (size - 2) + [f"a{z}"] * (size - 2)
    return [(f"X{j + 1:02d}.{t:03d}", top) for t, top in enumerate(tops, start=1)]


def x3c_to_mgm_tree(x3c: X3CInstance) -> ProblemInstance:
    """MGM on a tree with budget ``7n``.

    Each set district ``X_S`` is a path of ``40n`` voters whose first seven
    vote c, a_x, a_x, a_y, a_y, a_z, a_z.  The element districts ``Y_{u,i}``
    (``10n`` a_u-voters each) are strung into one path that starts at the
    first voter of ``Y_{w,1}``, with ``w`` the first element lying outside some
    set; every ``X_S`` hangs off that voter by its first voter.
    """
    n, m = x3c.n, x3c.m
    y_keys, _ = _tree_layout(x3c)
    b = _Builder(_element_alternatives(x3c))
    firsts = []
    for j, s in enumerate(x3c.sets):
        members = _x_district(j, n, s)
        b.district(members)
        ids = [vid for vid, _ in members]
        b.path(ids)
        firsts.append(ids[0])
    y_path = []
    for u, i in y_keys:
        ids = [f"Y{u:02d}.{i:02d}.{t:03d}" for t in range(1, 10 * n + 1)]
        b.district([(vid, f"a{u}") for vid in ids])
        y_path.extend(ids)
    b.path(y_path)
    for first in firsts:
        b.edges.add((first, y_path[0]))
    return b.build(7 * n, variant=Variant.MGM, graph=True)


def tree_witness(x3c: X3CInstance, cover: Iterable[int]) -> MovePlan:
    """The seven boundary voters of every cover set move to ``Y_{w,1}``."""
    _tree_layout(x3c)
    dest = x3c.m
    moves = [(f"X{j + 1:02d}.{t:03d}", dest) for j in sorted(cover) for t in range(1, 8)]
    return MovePlan(tuple(moves))


# -- variant lifts -----------------------------------------------------------


def lift_complete_graph(instance: ProblemInstance) -> ProblemInstance:
    """RGB to GB or MRGM to MGM by adding the complete voter graph."""
    lifted = {Variant.RGB: Variant.GB, Variant.MRGM: Variant.MGM}.get(instance.variant)
    if lifted is None:
        raise InstanceError(f"complete-graph lift needs RGB or MRGM, got {instance.variant.value}")
    graph = VoterGraph.complete(instance.voter_ids)
    return dataclasses.replace(instance, variant=lifted, graph=graph)


def lift_uniform_cost(instance: ProblemInstance) -> ProblemInstance:
    """MRGM to RGB or MGM to GB with every transfer costing 1."""
    lifted = {Variant.MRGM: Variant.RGB, Variant.MGM: Variant.GB}.get(instance.variant)
    if lifted is None:
        raise InstanceError(f"uniform-cost lift needs MRGM or MGM, got {instance.variant.value}")
    return dataclasses.replace(instance, variant=lifted, costs=CostMap(default_cost=Fraction(1)))


# -- source enumeration ------------------------------------------------------


def enumerate_x3c_sources(max_universe: int = 6, max_sets: int = 4, min_sets: int = 1):
    """Every source with ``3n <= max_universe`` and ``min_sets <= m <= max_sets``.

    A source's sets form a multiset of 3-subsets, listed in sorted order.
    """
    for size in range(3, max_universe + 1, 3):
        triples = list(itertools.combinations(range(1, size + 1), 3))
        for m in range(min_sets, max_sets + 1):
            for combo in itertools.combinations_with_replacement(triples, m):
                yield X3CInstance(size, combo)


def _automorphisms(vertices, edges) -> list:
    g = nx.Graph()
    g.add_nodes_from(vertices)
    g.add_edges_from(edges)
    index = {v: i for i, v in enumerate(vertices)}
    matcher = nx.algorithms.isomorphism.GraphMatcher(g, g)
    return [tuple(index[f[v]] for v in vertices) for f in matcher.isomorphisms_iter()]


def enumerate_2dcp_sources(graphs, up_to_isomorphism: bool = False):
    """Every anchor choice on each given connected graph ``(vertices, edges)``.

    Each vertex goes to the first anchor set, the second, or neither, with both
    anchor sets non-empty.  With ``up_to_isomorphism`` only the smallest
    labelling in each orbit of the graph's automorphism group is kept.
    """
    for vertices, edges in graphs:
        vertices = tuple(vertices)
        autos = _automorphisms(vertices, edges) if up_to_isomorphism else None
        for labels in itertools.product(range(3), repeat=len(vertices)):
            if 1 not in labels or 2 not in labels:
                continue
            if autos is not None:
                images = []
                for perm in autos:
                    image = [0] * len(labels)
                    for i, t in enumerate(labels):
                        image[perm[i]] = t
                    images.append(tuple(image))
                if min(images) != labels:
                    continue
            z1 = frozenset(v for v, t in zip(vertices, labels) if t == 1)
            z2 = frozenset(v for v, t in zip(vertices, labels) if t == 2)
            yield TwoDCPInstance(vertices, frozenset(edges), z1, z2)


def small_connected_graphs(max_vertices: int = 6, min_vertices: int = 2) -> list:
    """One ``(vertices, edges)`` per isomorphism class of connected graphs.

    Vertices are the strings ``"0"``, ``"1"``, ...; sizes up to 7 are covered.
    """
    if max_vertices > 7:
        raise ValueError("the graph atlas only covers graphs with up to 7 vertices")
    out = []
    for g in nx.graph_atlas_g():
        if min_vertices <= g.number_of_nodes() <= max_vertices and nx.is_connected(g):
            out.append((tuple(str(v) for v in g.nodes), tuple(sorted((str(a), str(b)) for a, b in g.edges))))
    return out
