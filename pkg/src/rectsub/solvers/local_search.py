"""k-level local search for stabbing.

Start from every vertex of the subdivision and repeatedly replace a subset
``X'`` of the current solution by a strictly smaller set ``Y`` of vertices
while all target faces stay stabbed.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

from ..geometry import Subdivision
from . import setcover
from .problems import PointSolution, stab_instance
from .setcover import SearchBudget

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LocalSearchConfig:
    k: int = 3
    max_iterations: int = 100_000

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")


def _find_swap(x: list[int], sets: list[int], universe: int, k: int):
    """First improving swap in lexicographic order of ``X'``, or None.

    ``x`` is the sorted current solution. Returns ``(removed, added)``.
    """
    count: dict[int, int] = {}
    for v in x:
        for e in setcover._bits(sets[v] & universe):
            count[e] = count.get(e, 0) + 1
    in_x = set(x)
    for size in range(1, min(k, len(x)) + 1):
        for removed in itertools.combinations(x, size):
            lost: dict[int, int] = {}
            for v in removed:
                for e in setcover._bits(sets[v] & universe):
                    lost[e] = lost.get(e, 0) + 1
            uncovered = 0
            for e, c in lost.items():
                if c == count[e]:
                    uncovered |= 1 << e
            if not uncovered:
                return removed, ()
            if size == 1:
                continue
            cands = [
                v for v, s in enumerate(sets) if s & uncovered and (v not in in_x or v in removed)
            ]
            added = _small_cover(uncovered, cands, sets, size - 1)
            if added is not None:
                return removed, added
    return None


def _small_cover(target: int, cands: list[int], sets: list[int], limit: int):
    """Any cover of ``target`` using at most ``limit`` candidates, else None."""
    if limit <= 3:
        for r in range(1, limit + 1):
            for combo in itertools.combinations(cands, r):
                acc = 0
                for v in combo:
                    acc |= sets[v]
                if acc & target == target:
                    return combo
        return None
    sub_sets = [sets[v] & target for v in cands]
    sols, _ = setcover.exact_cover(target, sub_sets, SearchBudget(nodes=200_000))
    if sols and len(sols[0]) <= limit:
        return tuple(cands[i] for i in sols[0])
    return None


def local_search_stab(sub: Subdivision, cfg: LocalSearchConfig = LocalSearchConfig(), target="all") -> PointSolution:
    _, universe, sets = stab_instance(sub, target)
    x = list(range(len(sub.vertices)))
    iterations = 0
    capped = False
    while True:
        swap = _find_swap(x, sets, universe, cfg.k)
        if swap is None:
            break
        removed, added = swap
        x = sorted((set(x) - set(removed)) | set(added))
        iterations += 1
        if iterations >= cfg.max_iterations:
            capped = True
            log.warning("local search stopped at the iteration cap (%d)", cfg.max_iterations)
            break
    # a k-local optimum with k >= |X| admits the swap X -> OPT, so it is optimal
    optimal = not capped and cfg.k >= len(x)
    return PointSolution(
        tuple(sub.vertices[v] for v in x),
        optimal,
        f"local-search(k={cfg.k})",
        {"iterations": iterations, "capped": capped},
    )


def is_locally_optimal(sub: Subdivision, points, k: int, target="all") -> bool:
    """Exhaustive check that no swap with ``|Y| < |X'| <= k`` keeps feasibility.

    Enumerates every ``X'`` and every ``Y`` drawn from all vertices; kept
    separate from the search so it can audit it.
    """
    _, universe, sets = stab_instance(sub, target)
    x = sorted(sub.vertex_index(p) for p in points)
    for size in range(1, min(k, len(x)) + 1):
        for removed in itertools.combinations(x, size):
            keep = 0
            for v in x:
                if v not in removed:
                    keep |= sets[v]
            need = universe & ~keep
            if not need:
                return False
            for r in range(1, size):
                for ys in itertools.combinations(range(len(sets)), r):
                    acc = 0
                    for v in ys:
                        acc |= sets[v]
                    if acc & need == need:
                        return False
    return True
