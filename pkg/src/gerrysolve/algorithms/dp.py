"""MRGM with few alternatives: dynamic program over supply and score vectors.

A table entry ``T(i, supply, b, scores)`` is true when the first ``i``
districts can be rewritten with per-alternative net vote changes whose
prefix sum is ``-supply``, using at most ``b`` incoming voters, so that
alternative ``a`` wins exactly ``scores[a]`` of them.  Going from layer
``i - 1`` to ``i`` picks a net-change vector ``mu`` for district ``i``:

* ``gamma[a] + mu[a] >= 0`` (cannot remove voters that are not there),
* ``f_plus(mu) <= b`` and ``f_minus(mu) <= budget``,
* ``T(i, supply, b, s) <- T(i-1, supply + mu, b - f_plus(mu), s - won(gamma + mu))``.

The table is monotone in ``b`` (the base row is true for every ``b``), so a
layer is stored as ``{(supply, scores): least b}``; ``T`` is true exactly when
the stored least ``b`` is at most the queried one.  The answer reads only
final entries with zero supply: moving voters never changes global totals.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import NamedTuple, Optional

from ..election import MovePlan, ProblemInstance, Variant, WinnerMode
from ..errors import InstanceError, check_guard


class DPState(NamedTuple):
    i: int
    supply: tuple
    b: int
    scores: tuple


def f_plus(mu) -> int:
    return sum(x for x in mu if x > 0)


def f_minus(mu) -> int:
    return sum(-x for x in mu if x < 0)


def district_profiles(instance: ProblemInstance) -> list:
    """Vote counts ``gamma[i][a]`` of every home district."""
    gamma = [[0] * instance.m for _ in range(instance.k)]
    for top, home in zip(instance.tops, instance.homes):
        gamma[home][top] += 1
    return [tuple(row) for row in gamma]


def table_size(instance: ProblemInstance) -> int:
    k, m, B = instance.k, instance.m, int(instance.budget)
    return (k + 1) * (2 * B + 1) ** m * (B + 1) * (k + 1) ** m


def changes(gamma, budget):
    """Admissible net-change vectors for one district."""
    ranges = [range(-g, budget + 1) for g in gamma]
    for mu in itertools.product(*ranges):
        if f_plus(mu) <= budget and f_minus(mu) <= budget:
            yield mu


def won(votes) -> tuple:
    best = max(votes)
    if best == 0:
        return (0,) * len(votes)
    return tuple(int(v == best) for v in votes)


class DPTable:
    """The filled table, one ``{(supply, scores): (least b, parent)}`` per layer."""

    def __init__(self, instance: ProblemInstance, guard: Optional[int] = None):
        if instance.variant is not Variant.MRGM:
            raise InstanceError("dynamic program needs an MRGM instance")
        check_guard("dynamic-programming table", table_size(instance), guard)
        self.instance = instance
        self.budget = int(instance.budget)
        self.gamma = district_profiles(instance)
        m = instance.m
        zero = (0,) * m
        self.layers = [{(zero, zero): (0, None)}]
        for i in range(instance.k):
            self.layers.append(self._extend(self.layers[-1], self.gamma[i]))

    def _extend(self, layer, gamma):
        B = self.budget
        nxt = {}
        moves = [(mu, f_plus(mu), won(tuple(g + x for g, x in zip(gamma, mu)))) for mu in changes(gamma, B)]
        for (supply, scores), (used, _) in layer.items():
            for mu, plus, wins in moves:
                b = used + plus
                if b > B:
                    continue
                new_supply = tuple(s - x for s, x in zip(supply, mu))
                if any(abs(s) > B for s in new_supply):
                    continue
                key = (new_supply, tuple(s + w for s, w in zip(scores, wins)))
                old = nxt.get(key)
                if old is None or b < old[0]:
                    nxt[key] = (b, (supply, scores, mu))
        return nxt

    def entry(self, state: DPState) -> bool:
        """Value of ``T`` at ``state``."""
        if not 0 <= state.i < len(self.layers) or not 0 <= state.b <= self.budget:
            return False
        hit = self.layers[state.i].get((tuple(state.supply), tuple(state.scores)))
        return hit is not None and hit[0] <= state.b

    def accepting(self) -> list:
        """Final entries the answer query accepts, cheapest first."""
        inst = self.instance
        c = inst.alt_index[inst.target]
        co = inst.winner_mode is WinnerMode.CO
        found = []
        for (supply, scores), (used, _) in self.layers[-1].items():
            if any(supply):
                continue
            sc = scores[c]
            if all(s < sc or (co and s == sc) for a, s in enumerate(scores) if a != c) and sc > 0:
                found.append((used, supply, scores))
        found.sort()
        return found

    def min_cost(self) -> Optional[int]:
        acc = self.accepting()
        return acc[0][0] if acc else None

    def net_changes(self, supply, scores) -> list:
        """Per-district ``mu`` vectors along the stored cheapest path."""
        out = []
        key = (supply, scores)
        for i in range(len(self.layers) - 1, 0, -1):
            _, parent = self.layers[i][key]
            prev_supply, prev_scores, mu = parent
            out.append(mu)
            key = (prev_supply, prev_scores)
        out.reverse()
        return out

    def plan(self) -> Optional[MovePlan]:
        """Concrete cheapest plan: surplus voters (smallest ids) fill deficits."""
        acc = self.accepting()
        if not acc:
            return None
        _, supply, scores = acc[0]
        mus = self.net_changes(supply, scores)
        inst = self.instance
        ids = inst.voter_ids
        moves = []
        for a in range(inst.m):
            givers = []
            for i, mu in enumerate(mus):
                if mu[a] < 0:
                    pool = [ids[j] for j in range(inst.n) if inst.homes[j] == i and inst.tops[j] == a]
                    givers.extend(pool[: -mu[a]])
            takers = [i for i, mu in enumerate(mus) for _ in range(max(mu[a], 0))]
            assert len(givers) == len(takers)
            moves.extend(zip(givers, takers))
        return MovePlan(tuple(sorted(moves)))


def solve_mrgm_dp(instance: ProblemInstance, guard: Optional[int] = None) -> bool:
    return bool(DPTable(instance, guard).accepting())


def mrgm_dp_min_cost(instance: ProblemInstance, guard: Optional[int] = None) -> Optional[Fraction]:
    cost = DPTable(instance, guard).min_cost()
    return None if cost is None else Fraction(cost)
