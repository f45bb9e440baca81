"""Mutable per-district vote tallies with incremental winner bookkeeping.

Voters are addressed by their index in ``instance.voter_ids``; alternatives
by their index in ``instance.alternatives``.
"""

from ..election import ProblemInstance, WinnerMode, winners_from_counts


class Tally:
    def __init__(self, instance: ProblemInstance):
        self.k, self.m = instance.k, instance.m
        self.tops = list(instance.tops)
        self.homes = list(instance.homes)
        self.where = list(self.homes)
        self.target = instance.alt_index[instance.target]
        self.co = instance.winner_mode is WinnerMode.CO
        self.counts = [[0] * self.m for _ in range(self.k)]
        self.members = [set() for _ in range(self.k)]
        for j, (top, home) in enumerate(zip(self.tops, self.homes)):
            self.counts[home][top] += 1
            self.members[home].add(j)
        self.district_winners = [frozenset() for _ in range(self.k)]
        self.wins = [0] * self.m
        for d in range(self.k):
            self._refresh(d)

    def _refresh(self, d):
        old = self.district_winners[d]
        new = winners_from_counts(self.counts[d])
        if old != new:
            for a in old:
                self.wins[a] -= 1
            for a in new:
                self.wins[a] += 1
            self.district_winners[d] = new

    def move(self, j, dest):
        src = self.where[j]
        if src == dest:
            return src
        top = self.tops[j]
        self.counts[src][top] -= 1
        self.counts[dest][top] += 1
        self.members[src].discard(j)
        self.members[dest].add(j)
        self.where[j] = dest
        self._refresh(src)
        self._refresh(dest)
        return src

    def target_wins(self) -> bool:
        wins, c = self.wins, self.target
        best = wins[c]
        if best == 0:
            return False
        for a, w in enumerate(wins):
            if a != c and (w > best or (w == best and not self.co)):
                return False
        return True
