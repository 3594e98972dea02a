"""Maximum independent set on small graphs given as adjacency bitmasks."""

from __future__ import annotations

import itertools

from .setcover import SearchBudget, _bits, _Clock


def _clique_cover_bound(cand: int, adj: list[int]) -> int:
    """Greedy partition of ``cand`` into cliques; an upper bound on alpha."""
    count = 0
    left = cand
    while left:
        v = (left & -left).bit_length() - 1
        clique = 1 << v
        common = adj[v] & left
        for u in _bits(common):
            if all(adj[u] >> w & 1 for w in _bits(clique)):
                clique |= 1 << u
        left &= ~clique
        count += 1
    return count


def greedy_min_degree(cand: int, adj: list[int]) -> list[int]:
    chosen = []
    while cand:
        v = min(_bits(cand), key=lambda u: ((adj[u] & cand).bit_count(), u))
        chosen.append(v)
        cand &= ~(adj[v] | (1 << v))
    return chosen


def exact_mis(cand: int, adj: list[int], budget: SearchBudget = SearchBudget()) -> tuple[list[int], bool]:
    """Branch on the highest-degree vertex; bound by a greedy clique cover."""
    best = [greedy_min_degree(cand, adj)]
    clock = _Clock(budget)

    def rec(cand: int, chosen: list[int]):
        if clock.tick():
            return
        # vertices of degree <= 1 can always be taken
        changed = True
        forced = []
        while changed:
            changed = False
            for v in _bits(cand):
                if (adj[v] & cand).bit_count() <= 1:
                    forced.append(v)
                    cand &= ~(adj[v] | (1 << v))
                    changed = True
                    break
        chosen = chosen + forced
        if not cand:
            if len(chosen) > len(best[0]):
                best[0] = chosen
            return
        if len(chosen) + _clique_cover_bound(cand, adj) <= len(best[0]):
            return
        v = max(_bits(cand), key=lambda u: ((adj[u] & cand).bit_count(), -u))
        rec(cand & ~(adj[v] | (1 << v)), chosen + [v])
        if clock.exhausted:
            return
        rec(cand & ~(1 << v), chosen)

    rec(cand, [])
    return sorted(best[0]), not clock.exhausted


def brute_force_mis(cand: int, adj: list[int]) -> list[int]:
    verts = list(_bits(cand))
    for r in range(len(verts), 0, -1):
        for combo in itertools.combinations(verts, r):
            if all(not (adj[a] >> b & 1) for a, b in itertools.combinations(combo, 2)):
                return list(combo)
    return []
