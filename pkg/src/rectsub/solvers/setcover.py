"""Bitmask set cover: greedy, branch-and-bound, and brute-force enumeration.

Elements and candidate sets are small integers; a set is a Python int whose
bit ``e`` is set when it contains element ``e``.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass


@dataclass(frozen=True)
class SearchBudget:
    nodes: int = 2_000_000
    seconds: float = 60.0

    def __post_init__(self):
        if self.nodes <= 0 or self.seconds <= 0:
            raise ValueError("budget limits must be positive")


class _Clock:
    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.nodes = 0
        self.deadline = time.monotonic() + budget.seconds
        self.exhausted = False

    def tick(self) -> bool:
        self.nodes += 1
        if self.nodes > self.budget.nodes or (
            self.nodes % 1024 == 0 and time.monotonic() > self.deadline
        ):
            self.exhausted = True
        return self.exhausted


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def greedy_cover(universe: int, sets: list[int]) -> list[int] | None:
    """Classic greedy; ties go to the lowest set index. ``None`` if infeasible."""
    chosen = []
    left = universe
    while left:
        best, gain = -1, 0
        for k, s in enumerate(sets):
            g = (s & left).bit_count()
            if g > gain:
                best, gain = k, g
        if best < 0:
            return None
        chosen.append(best)
        left &= ~sets[best]
    return chosen


def _reduce_candidates(cands: list[int], sets: list[int], left: int) -> list[int]:
    """Drop candidates whose useful part is a subset of another candidate's."""
    useful = [(sets[k] & left, k) for k in cands]
    useful.sort(key=lambda t: (-t[0].bit_count(), t[1]))
    kept: list[tuple[int, int]] = []
    for u, k in useful:
        if u and not any(u & ~v == 0 for v, _ in kept):
            kept.append((u, k))
    return [k for _, k in kept]


def _packing_bound(left: int, containing: dict[int, int], sets: list[int]) -> int:
    """Elements that pairwise share no candidate set each need their own set."""
    order = sorted(_bits(left), key=lambda e: containing[e].bit_count())
    blocked = 0
    count = 0
    for e in order:
        if blocked >> e & 1:
            continue
        count += 1
        for k in _bits(containing[e]):
            blocked |= sets[k]
    return count


def exact_cover(
    universe: int,
    sets: list[int],
    budget: SearchBudget = SearchBudget(),
    *,
    enumerate_all: bool = False,
) -> tuple[list[list[int]], bool]:
    """Minimum set cover by branch-and-bound.

    Branches on the uncovered element with the fewest useful candidates and
    bounds with a disjoint-element packing. Returns ``(solutions, optimal)``:
    one best cover, or with ``enumerate_all`` every distinct minimum cover.
    ``optimal`` is False when the budget ran out first.
    """
    containing: dict[int, int] = {}
    for k, s in enumerate(sets):
        for e in _bits(s & universe):
            containing[e] = containing.get(e, 0) | (1 << k)
    if any(e not in containing for e in _bits(universe)):
        return [], True  # infeasible

    incumbent = greedy_cover(universe, sets)
    best = [len(incumbent) + (1 if enumerate_all else 0)]
    found: dict[frozenset, list[int]] = {}
    if not enumerate_all:
        found[frozenset(incumbent)] = incumbent
    clock = _Clock(budget)

    def rec(left: int, chosen: list[int]):
        if clock.tick():
            return
        if not left:
            n = len(chosen)
            if n < best[0] or (enumerate_all and n == best[0]):
                if n < best[0]:
                    best[0] = n
                    found.clear()
                found[frozenset(chosen)] = list(chosen)
            return
        lb = _packing_bound(left, containing, sets)
        if len(chosen) + lb > best[0] or (len(chosen) + lb == best[0] and not enumerate_all):
            return
        pivot, pcands = -1, None
        for e in _bits(left):
            cands = _reduce_candidates(list(_bits(containing[e])), sets, left)
            if pcands is None or len(cands) < len(pcands):
                pivot, pcands = e, cands
                if len(cands) <= 1:
                    break
        if enumerate_all:
            # dominated candidates may still appear in other minimum covers
            pcands = sorted(_bits(containing[pivot]), key=lambda k: -(sets[k] & left).bit_count())
        for k in pcands:
            chosen.append(k)
            rec(left & ~sets[k], chosen)
            chosen.pop()
            if clock.exhausted:
                return

    rec(universe, [])
    sols = sorted((sorted(s) for s in found.values()))
    return sols, not clock.exhausted


def brute_force_cover(universe: int, sets: list[int], *, enumerate_all: bool = False):
    """Subset enumeration by increasing size; the oracle for small instances."""
    if universe == 0:
        return [[]]
    for r in range(1, len(sets) + 1):
        hits = []
        for combo in itertools.combinations(range(len(sets)), r):
            acc = 0
            for k in combo:
                acc |= sets[k]
            if acc & universe == universe:
                if not enumerate_all:
                    return [list(combo)]
                hits.append(list(combo))
        if hits:
            return hits
    return []
