"""Stabbing, independent-set and dominating-set solvers over a subdivision."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..geometry import Point, Subdivision, target_faces
from . import independent, setcover
from .setcover import SearchBudget


@dataclass(frozen=True)
class PointSolution:
    points: tuple[Point, ...]
    optimal: bool = False
    algorithm: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def size(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class FaceSolution:
    face_ids: frozenset[int]
    optimal: bool = False
    algorithm: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def size(self) -> int:
        return len(self.face_ids)


def _faces(sub: Subdivision, target) -> list[int]:
    if isinstance(target, str):
        return sorted(target_faces(sub, target))
    return sorted(target)


def stab_instance(sub: Subdivision, target="all") -> tuple[list[int], int, list[int]]:
    """Set-cover view: target faces become elements, vertices become sets.

    Returns ``(faces, universe, sets)`` with ``sets[v]`` the bitmask of target
    faces stabbed by vertex ``v``.
    """
    faces = _faces(sub, target)
    pos = {f: k for k, f in enumerate(faces)}
    sets = []
    for fs in sub.vertex_to_faces:
        mask = 0
        for f in fs:
            if f in pos:
                mask |= 1 << pos[f]
        sets.append(mask)
    return faces, (1 << len(faces)) - 1, sets


def greedy_stab(sub: Subdivision, target="all") -> PointSolution:
    _, universe, sets = stab_instance(sub, target)
    chosen = setcover.greedy_cover(universe, sets) or []
    return PointSolution(tuple(sub.vertices[v] for v in chosen), False, "greedy")


def exact_stab(sub: Subdivision, target="all", budget: SearchBudget = SearchBudget()) -> PointSolution:
    _, universe, sets = stab_instance(sub, target)
    sols, optimal = setcover.exact_cover(universe, sets, budget)
    pts = tuple(sub.vertices[v] for v in sols[0]) if sols else ()
    return PointSolution(pts, optimal, "branch-and-bound")


def naive_stab(sub: Subdivision, target="all") -> PointSolution:
    _, universe, sets = stab_instance(sub, target)
    sol = setcover.brute_force_cover(universe, sets)[0]
    return PointSolution(tuple(sub.vertices[v] for v in sol), True, "enumeration")


def face_graph(sub: Subdivision, target="all") -> tuple[list[int], list[int]]:
    """Target faces and their adjacency bitmasks (indices into the face list)."""
    faces = _faces(sub, target)
    pos = {f: k for k, f in enumerate(faces)}
    adj = []
    for f in faces:
        mask = 0
        for g in sub.adjacency[f]:
            if g in pos:
                mask |= 1 << pos[g]
        adj.append(mask)
    return faces, adj


def _closed(adj: list[int]) -> list[int]:
    return [a | (1 << k) for k, a in enumerate(adj)]


def exact_mis(sub: Subdivision, target="all", budget: SearchBudget = SearchBudget()) -> FaceSolution:
    faces, adj = face_graph(sub, target)
    sol, optimal = independent.exact_mis((1 << len(faces)) - 1, adj, budget)
    return FaceSolution(frozenset(faces[k] for k in sol), optimal, "branch-and-bound")


def greedy_mis(sub: Subdivision, target="all") -> FaceSolution:
    faces, adj = face_graph(sub, target)
    sol = independent.greedy_min_degree((1 << len(faces)) - 1, adj)
    return FaceSolution(frozenset(faces[k] for k in sol), False, "greedy-min-degree")


def naive_mis(sub: Subdivision, target="all") -> FaceSolution:
    faces, adj = face_graph(sub, target)
    sol = independent.brute_force_mis((1 << len(faces)) - 1, adj)
    return FaceSolution(frozenset(faces[k] for k in sol), True, "enumeration")


def exact_mds(sub: Subdivision, target="all", budget: SearchBudget = SearchBudget()) -> FaceSolution:
    faces, adj = face_graph(sub, target)
    sols, optimal = setcover.exact_cover((1 << len(faces)) - 1, _closed(adj), budget)
    chosen = sols[0] if sols else []
    return FaceSolution(frozenset(faces[k] for k in chosen), optimal, "branch-and-bound")


def all_minimum_dominating_sets(
    sub: Subdivision, target="all", budget: SearchBudget = SearchBudget()
) -> tuple[list[frozenset[int]], bool]:
    faces, adj = face_graph(sub, target)
    sols, optimal = setcover.exact_cover(
        (1 << len(faces)) - 1, _closed(adj), budget, enumerate_all=True
    )
    return [frozenset(faces[k] for k in s) for s in sols], optimal


def greedy_mds(sub: Subdivision, target="all") -> FaceSolution:
    faces, adj = face_graph(sub, target)
    chosen = setcover.greedy_cover((1 << len(faces)) - 1, _closed(adj)) or []
    return FaceSolution(frozenset(faces[k] for k in chosen), False, "greedy-max-coverage")


def naive_mds(sub: Subdivision, target="all") -> FaceSolution:
    faces, adj = face_graph(sub, target)
    sol = setcover.brute_force_cover((1 << len(faces)) - 1, _closed(adj))[0]
    return FaceSolution(frozenset(faces[k] for k in sol), True, "enumeration")
