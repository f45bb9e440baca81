"""MRGM with few districts: guess winning scores, then repair the profile.

For every guess of a winning plurality score ``w[i]`` per district and a
set ``I`` of districts the target should win, a seven-step repair procedure
detaches surplus voters into a pool, tops the target up where it should win,
re-places the pool without breaking the score caps and finally removes
co-winners that would tie the target overall.  Any plan the procedure emits
is re-validated from scratch, so a "yes" is always backed by a checked plan.

Budget accounting follows one rule everywhere: a voter costs 1 when its
current position (district or pool) differs from its home district.  Moves
are picked by smallest marginal cost under that rule, then by voter id.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..election import (
    MovePlan,
    ProblemInstance,
    Variant,
    WinnerMode,
    apply_plan,
    is_election_winner,
    winners_from_counts,
)
from ..errors import InstanceError, check_guard

POOL = -1


@dataclass(frozen=True)
class ScoreGuess:
    w: tuple
    I: frozenset


class _Discard(Exception):
    pass


class _Repair:
    def __init__(self, instance: ProblemInstance, guess: ScoreGuess):
        self.instance = instance
        self.w = guess.w
        self.I = guess.I
        self.k = instance.k
        self.c = instance.alt_index[instance.target]
        self.tops = instance.tops
        self.homes = instance.homes
        self.where = list(self.homes)
        self.counts = [[0] * instance.m for _ in range(self.k)]
        for top, home in zip(self.tops, self.homes):
            self.counts[home][top] += 1
        self.pool = set()
        self.displaced = 0
        self.budget = int(instance.budget)

    # -- bookkeeping -----------------------------------------------------

    def marginal(self, j, dest):
        home = self.homes[j]
        return (dest != home) - (self.where[j] != home)

    def relocate(self, j, dest):
        src = self.where[j]
        self.displaced += self.marginal(j, dest)
        top = self.tops[j]
        if src == POOL:
            self.pool.discard(j)
        else:
            self.counts[src][top] -= 1
        if dest == POOL:
            self.pool.add(j)
        else:
            self.counts[dest][top] += 1
        self.where[j] = dest
        if self.displaced > self.budget:
            raise _Discard

    def voters_in(self, district, alt):
        return [j for j, d in enumerate(self.where) if d == district and self.tops[j] == alt]

    def detach(self, district, alt, count):
        candidates = sorted(self.voters_in(district, alt), key=lambda j: (self.marginal(j, POOL), j))
        for j in candidates[:count]:
            self.relocate(j, POOL)

    def score(self, alt, district):
        return self.counts[district][alt]

    # -- the seven steps ------------------------------------------------------

    def run(self) -> Optional[MovePlan]:
        try:
            self.trim()
            self.raise_target()
            self.safe_placement()
            if any(self.tops[j] == self.c for j in self.pool):
                raise _Discard
            self.drain()
            self.break_cowinners()
        except _Discard:
            return None
        return self.validated_plan()

    def trim(self):
        c, w = self.c, self.w
        for x in range(self.instance.m):
            if x == c:
                continue
            for i in range(self.k):
                if self.score(x, i) > w[i]:
                    self.detach(i, x, self.score(x, i) - w[i])
        for i in range(self.k):
            p = self.score(c, i)
            if i in self.I:
                if p > w[i]:
                    self.detach(i, c, p - w[i])
            elif p >= w[i]:
                self.detach(i, c, p - w[i] + 1)

    def raise_target(self):
        c, w = self.c, self.w
        for i in sorted(self.I):
            while self.score(c, i) < w[i]:
                pooled = [j for j in self.pool if self.tops[j] == c]
                if pooled:
                    j = min(pooled, key=lambda j: (self.marginal(j, i), j))
                else:
                    outside = [j for j, d in enumerate(self.where) if d != POOL and d not in self.I and self.tops[j] == c]
                    if not outside:
                        raise _Discard
                    j = min(outside, key=lambda j: (self.marginal(j, i), j))
                self.relocate(j, i)

    def safe_placement(self):
        w = self.w
        progress = True
        while progress:
            progress = False
            for j in sorted(self.pool):
                x = self.tops[j]
                fits = [i for i in range(self.k) if self.score(x, i) <= w[i] - 2]
                if fits:
                    self.relocate(j, min(fits, key=lambda i: (self.marginal(j, i), i)))
                    progress = True
                    break

    def drain(self):
        w = self.w
        for j in sorted(self.pool):
            x = self.tops[j]
            fits = [i for i in range(self.k) if self.score(x, i) < w[i]]
            if not fits:
                raise _Discard
            self.relocate(j, min(fits, key=lambda i: (self.marginal(j, i), i)))

    def break_cowinners(self):
        c, w = self.c, self.w
        lam = len(self.I)
        co = self.instance.winner_mode is WinnerMode.CO
        limit = 2 * len(self.where) * self.k
        for _ in range(limit):
            district_winners = [winners_from_counts(row) for row in self.counts]
            wins = [0] * self.instance.m
            for winners in district_winners:
                for a in winners:
                    wins[a] += 1
            offenders = [x for x in range(self.instance.m) if x != c and (wins[x] > lam if co else wins[x] >= lam)]
            if not offenders:
                return
            # first offender with a legal move; one without may still be cured
            # by another offender's move
            options = []
            for x in offenders:
                sources = {i for i in range(self.k) if x in district_winners[i]}
                sinks = [i for i in range(self.k) if self.score(x, i) <= w[i] - 2]
                movers = [j for j, d in enumerate(self.where) if d in sources and self.tops[j] == x]
                options = [(self.marginal(j, i), j, i) for j in movers for i in sinks if i != self.where[j]]
                if options:
                    break
            if not options:
                raise _Discard
            _, j, i = min(options)
            self.relocate(j, i)
        raise _Discard

    def validated_plan(self) -> Optional[MovePlan]:
        ids = self.instance.voter_ids
        plan = MovePlan(tuple((ids[j], d) for j, d in enumerate(self.where) if d != self.homes[j]))
        if len(plan) > self.instance.budget:
            return None
        if not is_election_winner(self.instance, apply_plan(self.instance, plan)):
            return None
        return plan


def guesses(instance: ProblemInstance):
    """All score guesses in a fixed order that starts from the current profile.

    Each district's score runs outward from its current winning score, and
    win sets run by distance from the districts the target wins now, so the
    guess describing the initial districting is tried first.
    """
    k = instance.k
    counts = [[0] * instance.m for _ in range(k)]
    for top, home in zip(instance.tops, instance.homes):
        counts[home][top] += 1
    current = [max(row) for row in counts]
    axes = [sorted(range(instance.n + 1), key=lambda v, cur=cur: (abs(v - cur), v)) for cur in current]
    c = instance.alt_index[instance.target]
    now = sum(1 << i for i in range(k) if c in winners_from_counts(counts[i]))
    masks = sorted(range(1 << k), key=lambda mask: (bin(mask ^ now).count("1"), mask))
    for w in itertools.product(*axes):
        for mask in masks:
            yield ScoreGuess(w, frozenset(i for i in range(k) if mask >> i & 1))


def repair(instance: ProblemInstance, guess: ScoreGuess) -> Optional[MovePlan]:
    """Run the repair procedure for one guess; the validated plan or ``None``."""
    return _Repair(instance, guess).run()


def solve_mrgm_fixed_districts(instance: ProblemInstance, guard: Optional[int] = None, minimise: bool = False):
    """First validated plan over all score guesses; ``(plan, cost)`` or ``None``.

    With ``minimise`` every guess is repaired and the cheapest plan is kept,
    ties going to the smaller move list; a zero-cost plan ends the scan.
    """
    if instance.variant is not Variant.MRGM:
        raise InstanceError("fixed-districts solver needs an MRGM instance")
    n, k = instance.n, instance.k
    check_guard("score-guess enumeration", (n + 1) ** k * 2 ** k, guard)
    best = None
    for guess in guesses(instance):
        plan = repair(instance, guess)
        if plan is None:
            continue
        if not minimise:
            return plan, Fraction(len(plan))
        key = (len(plan), plan.canonical().moves)
        if best is None or key < best[0]:
            best = (key, plan)
            if not plan.moves:
                break
    return None if best is None else (best[1], Fraction(len(best[1])))
