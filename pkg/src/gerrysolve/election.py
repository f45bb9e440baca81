"""Districted plurality elections: instances, move plans, winners and costs.

Costs are exact: finite costs are :class:`fractions.Fraction` values and the
marker :data:`UNMOVABLE` stands for a transfer that is never allowed.  The
marker absorbs addition and compares above every finite number, so a plan
containing one unmovable transfer is never within budget.

Districts emptied by moves have no plurality winner, and the empty voter set
counts as connected.
"""

from __future__ import annotations

import enum
from collections import Counter, deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import InstanceError, PlanError


class _Unmovable:
    """Absorbing infinite cost marker (singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNMOVABLE"

    def __reduce__(self):
        return "UNMOVABLE"

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("UNMOVABLE")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


UNMOVABLE = _Unmovable()

Cost = Union[Fraction, _Unmovable]


def is_finite(cost) -> bool:
    return cost is not UNMOVABLE


def as_cost(value) -> Cost:
    """Coerce ``value`` to an exact cost.

    Accepts ints, Fractions, decimal or rational strings and the string
    ``"unmovable"``.  Binary floats are rejected because they are not exact.
    """
    if value is UNMOVABLE:
        return value
    if isinstance(value, str):
        if value.strip().lower() == "unmovable":
            return UNMOVABLE
        cost = Fraction(value.strip())
    elif isinstance(value, bool):
        raise InstanceError(f"cost must be a number, got {value!r}")
    elif isinstance(value, (int, Fraction)):
        cost = Fraction(value)
    else:
        raise InstanceError(f"cost must be an exact rational, got {value!r}")
    if cost < 0:
        raise InstanceError(f"cost must be nonnegative, got {value!r}")
    return cost


class Variant(str, enum.Enum):
    GB = "GB"
    MGM = "MGM"
    RGB = "RGB"
    MRGM = "MRGM"

    @property
    def has_graph(self) -> bool:
        return self in (Variant.GB, Variant.MGM)

    @property
    def unit_cost(self) -> bool:
        return self in (Variant.MGM, Variant.MRGM)


class WinnerMode(str, enum.Enum):
    UNIQUE = "unique"
    CO = "co"


@dataclass(frozen=True)
class Voter:
    id: str
    ranking: tuple
    home_district: int

    def __post_init__(self):
        object.__setattr__(self, "ranking", tuple(self.ranking))

    @property
    def top(self) -> str:
        return self.ranking[0]


@dataclass(frozen=True)
class Districting:
    """Assignment of every voter id to a district index in ``[0, k)``."""

    k: int
    assignment: Mapping[str, int]

    def __post_init__(self):
        if self.k < 1:
            raise InstanceError(f"district count must be positive, got {self.k}")
        assignment = dict(self.assignment)
        for vid, d in assignment.items():
            if not 0 <= d < self.k:
                raise InstanceError(f"voter {vid!r} assigned to district {d} outside [0, {self.k})")
        object.__setattr__(self, "assignment", MappingProxyType(assignment))

    def __eq__(self, other):
        if not isinstance(other, Districting):
            return NotImplemented
        return self.k == other.k and dict(self.assignment) == dict(other.assignment)

    def __hash__(self):
        return hash((self.k, frozenset(self.assignment.items())))

    def members(self, district: int) -> list:
        return sorted(v for v, d in self.assignment.items() if d == district)

    def districts(self) -> list:
        """Sorted member lists, one per district index."""
        out = [[] for _ in range(self.k)]
        for vid in sorted(self.assignment):
            out[self.assignment[vid]].append(vid)
        return out


@dataclass(frozen=True)
class VoterGraph:
    """Undirected simple graph over voter ids; edges stored as sorted pairs."""

    edges: frozenset

    def __post_init__(self):
        normalized = set()
        for edge in self.edges:
            u, v = tuple(edge)
            if u == v:
                raise InstanceError(f"self-loop on voter {u!r}")
            normalized.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def complete(cls, voter_ids: Iterable[str]) -> "VoterGraph":
        ids = sorted(voter_ids)
        return cls(frozenset((ids[i], ids[j]) for i in range(len(ids)) for j in range(i + 1, len(ids))))

    @cached_property
    def adjacency(self) -> Mapping[str, frozenset]:
        adj: dict = {}
        for u, v in self.edges:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        return MappingProxyType({k: frozenset(s) for k, s in adj.items()})

    def vertices(self) -> frozenset:
        return frozenset(self.adjacency)

    def neighbors(self, voter: str) -> frozenset:
        return self.adjacency.get(voter, frozenset())


@dataclass(frozen=True)
class CostMap:
    """Per (voter, destination district) transfer costs with a default."""

    entries: Mapping = field(default_factory=dict)
    default_cost: Cost = Fraction(1)

    def __post_init__(self):
        entries = {(v, int(d)): as_cost(c) for (v, d), c in dict(self.entries).items()}
        object.__setattr__(self, "entries", MappingProxyType(entries))
        object.__setattr__(self, "default_cost", as_cost(self.default_cost))

    def __eq__(self, other):
        if not isinstance(other, CostMap):
            return NotImplemented
        return self.default_cost == other.default_cost and dict(self.entries) == dict(other.entries)

    __hash__ = None

    def cost(self, voter: str, district: int) -> Cost:
        return self.entries.get((voter, district), self.default_cost)

    def is_uniform_one(self) -> bool:
        return self.default_cost == 1 and all(c == 1 for c in self.entries.values())


@dataclass(frozen=True)
class MovePlan:
    """Reassignments ``(voter id, destination district)``; no voter twice."""

    moves: tuple = ()

    def __post_init__(self):
        moves = tuple((str(v), int(d)) for v, d in self.moves)
        seen = set()
        for v, _ in moves:
            if v in seen:
                raise PlanError(f"voter {v!r} appears twice in plan")
            seen.add(v)
        object.__setattr__(self, "moves", moves)

    def __len__(self):
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    def canonical(self) -> "MovePlan":
        return MovePlan(tuple(sorted(self.moves)))

    def sort_key(self) -> tuple:
        """Lexicographic tie-break key on (voter id, destination)."""
        return tuple(sorted(self.moves))

    def voters(self) -> frozenset:
        return frozenset(v for v, _ in self.moves)


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    alternatives: tuple
    voters: tuple
    k: int
    costs: CostMap = field(default_factory=CostMap)
    budget: Fraction = Fraction(0)
    target: str = "c"
    variant: Variant = Variant.MRGM
    graph: Optional[VoterGraph] = None
    winner_mode: WinnerMode = WinnerMode.UNIQUE

    def __post_init__(self):
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        object.__setattr__(self, "voters", tuple(self.voters))
        object.__setattr__(self, "variant", Variant(self.variant))
        object.__setattr__(self, "winner_mode", WinnerMode(self.winner_mode))
        budget = as_cost(self.budget)
        if budget is UNMOVABLE:
            raise InstanceError("budget must be finite")
        object.__setattr__(self, "budget", budget)
        self._validate()

    def _validate(self):
        alts = self.alternatives
        if not alts:
            raise InstanceError("no alternatives")
        if any(not isinstance(a, str) or a == "" for a in alts):
            raise InstanceError("alternative labels must be non-empty strings")
        if len(set(alts)) != len(alts):
            raise InstanceError("duplicate alternative labels")
        if self.target not in alts:
            raise InstanceError(f"target {self.target!r} is not an alternative")
        if self.k < 1:
            raise InstanceError("district count must be positive")
        alt_set = set(alts)
        ids = set()
        for voter in self.voters:
            if voter.id in ids:
                raise InstanceError(f"duplicate voter id {voter.id!r}")
            ids.add(voter.id)
            if len(voter.ranking) != len(alts) or set(voter.ranking) != alt_set:
                raise InstanceError(f"voter {voter.id!r}: ranking is not a permutation of the alternatives")
            if not 0 <= voter.home_district < self.k:
                raise InstanceError(f"voter {voter.id!r}: district {voter.home_district} outside [0, {self.k})")
        if not self.voters:
            raise InstanceError("no voters")
        for (vid, d) in self.costs.entries:
            if vid not in ids:
                raise InstanceError(f"cost entry for unknown voter {vid!r}")
            if not 0 <= d < self.k:
                raise InstanceError(f"cost entry for {vid!r} names district {d} outside [0, {self.k})")
        if self.variant.unit_cost and not self.costs.is_uniform_one():
            raise InstanceError(f"{self.variant.value} requires unit transfer costs")
        if self.variant.unit_cost and self.budget.denominator != 1:
            raise InstanceError(f"{self.variant.value} budget must be an integer")
        if self.variant.has_graph:
            if self.graph is None:
                raise InstanceError(f"{self.variant.value} requires a voter graph")
            for u, v in self.graph.edges:
                if u not in ids or v not in ids:
                    raise InstanceError(f"edge ({u!r}, {v!r}) references an unknown voter")
            for d, members in enumerate(self.districting.districts()):
                if not induced_connected(self.graph, members):
                    raise InstanceError(f"initial district not connected: district {d}")
        elif self.graph is not None:
            raise InstanceError(f"{self.variant.value} does not take a voter graph")

    def _semantic_key(self):
        voters = tuple(sorted(self.voters, key=lambda v: v.id))
        return (self.alternatives, voters, self.k, self.budget, self.target, self.variant, self.graph, self.winner_mode)

    def __eq__(self, other):
        """Equal when they describe the same election; voter order is irrelevant."""
        if not isinstance(other, ProblemInstance):
            return NotImplemented
        return self._semantic_key() == other._semantic_key() and self.costs == other.costs

    __hash__ = None

    # -- derived views -------------------------------------------------

    @cached_property
    def districting(self) -> Districting:
        return Districting(self.k, {v.id: v.home_district for v in self.voters})

    @cached_property
    def voter_ids(self) -> tuple:
        return tuple(sorted(v.id for v in self.voters))

    @cached_property
    def voter_by_id(self) -> Mapping[str, Voter]:
        return MappingProxyType({v.id: v for v in self.voters})

    @cached_property
    def alt_index(self) -> Mapping[str, int]:
        return MappingProxyType({a: i for i, a in enumerate(self.alternatives)})

    @property
    def n(self) -> int:
        return len(self.voters)

    @property
    def m(self) -> int:
        return len(self.alternatives)

    @cached_property
    def tops(self) -> tuple:
        """Top-alternative index per voter, aligned with :attr:`voter_ids`."""
        by_id = self.voter_by_id
        return tuple(self.alt_index[by_id[v].top] for v in self.voter_ids)

    @cached_property
    def homes(self) -> tuple:
        by_id = self.voter_by_id
        return tuple(by_id[v].home_district for v in self.voter_ids)

    def transfer_cost(self, voter: str, district: int) -> Cost:
        if self.voter_by_id[voter].home_district == district:
            return Fraction(0)
        return self.costs.cost(voter, district)

    def with_budget(self, budget) -> "ProblemInstance":
        return replace(self, budget=budget)


# -- winners -----------------------------------------------------------


def winners_from_counts(counts: Sequence[int]) -> frozenset:
    """Indices attaining the maximum count; empty when every count is zero."""
    best = max(counts, default=0)
    if best == 0:
        return frozenset()
    return frozenset(i for i, c in enumerate(counts) if c == best)


def plurality_winner_set(ballots: Iterable[Sequence[str]], alternatives: Optional[Iterable[str]] = None) -> frozenset:
    """Alternatives ranked first by the maximum number of ballots."""
    ballots = [tuple(b) for b in ballots]
    if alternatives is None:
        alt_set = set(ballots[0]) if ballots else set()
    else:
        alt_set = set(alternatives)
    tops = Counter()
    for ballot in ballots:
        if len(ballot) != len(alt_set) or set(ballot) != alt_set:
            raise InstanceError(f"ranking {ballot!r} is not a permutation of the alternatives")
        tops[ballot[0]] += 1
    if not tops:
        return frozenset()
    best = max(tops.values())
    return frozenset(a for a, c in tops.items() if c == best)


def district_winner_sets(instance: ProblemInstance, districting: Districting) -> list:
    by_id = instance.voter_by_id
    return [
        plurality_winner_set((by_id[v].ranking for v in members), instance.alternatives)
        for members in districting.districts()
    ]


def election_winner_set(instance: ProblemInstance, districting: Districting) -> frozenset:
    """Alternatives winning (or co-winning) the maximum number of districts."""
    if set(districting.assignment) != set(instance.voter_by_id):
        raise InstanceError("districting does not cover exactly the instance's voters")
    won = Counter()
    for winners in district_winner_sets(instance, districting):
        won.update(winners)
    if not won:
        return frozenset()
    best = max(won.values())
    return frozenset(a for a, c in won.items() if c == best)


def is_election_winner(instance: ProblemInstance, districting: Districting) -> bool:
    winners = election_winner_set(instance, districting)
    if instance.winner_mode is WinnerMode.CO:
        return instance.target in winners
    return winners == {instance.target}


def induced_connected(graph: VoterGraph, voter_set: Iterable[str]) -> bool:
    """Whether ``voter_set`` induces a connected subgraph (empty set: yes)."""
    members = set(voter_set)
    if not members:
        return True
    adjacency = graph.adjacency
    start = next(iter(members))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adjacency.get(u, ()):
            if w in members and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(members)


# -- plans ---------------------------------------------------------------


def _check_plan(instance: ProblemInstance, plan: MovePlan):
    by_id = instance.voter_by_id
    for vid, dest in plan.moves:
        voter = by_id.get(vid)
        if voter is None:
            raise PlanError(f"unknown voter {vid!r}")
        if not 0 <= dest < instance.k:
            raise PlanError(f"destination {dest} of {vid!r} outside [0, {instance.k})")
        if dest == voter.home_district:
            raise PlanError(f"voter {vid!r} moved to its own district {dest}")


def apply_plan(instance: ProblemInstance, plan: MovePlan) -> Districting:
    _check_plan(instance, plan)
    assignment = dict(instance.districting.assignment)
    for vid, dest in plan.moves:
        assignment[vid] = dest
    return Districting(instance.k, assignment)


def plan_between(instance: ProblemInstance, districting: Districting) -> MovePlan:
    """The canonical plan turning the home districting into ``districting``."""
    homes = instance.districting.assignment
    return MovePlan(tuple((v, districting.assignment[v]) for v in instance.voter_ids if districting.assignment[v] != homes[v]))


def plan_cost(instance: ProblemInstance, plan: MovePlan) -> Cost:
    _check_plan(instance, plan)
    total: Cost = Fraction(0)
    for vid, dest in plan.moves:
        total = total + instance.costs.cost(vid, dest)
    return total


def is_feasible_plan(instance: ProblemInstance, plan: MovePlan) -> bool:
    """Within budget and, for graph variants, every district stays connected."""
    if plan_cost(instance, plan) > instance.budget:
        return False
    if instance.graph is None:
        return True
    districting = apply_plan(instance, plan)
    return all(induced_connected(instance.graph, members) for members in districting.districts())


def validates(instance: ProblemInstance, plan: MovePlan) -> bool:
    """Feasible and makes the target win; the acceptance test for any witness."""
    return is_feasible_plan(instance, plan) and is_election_winner(instance, apply_plan(instance, plan))
