"""Feasibility checks recomputed from cell geometry.

Nothing here reuses the vertex/face incidence or adjacency tables built with
the subdivision: closure membership and face contact are derived afresh from
the real-coordinate boxes of each face's cells.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..geometry import Subdivision, target_faces


class MalformedSolution(ValueError):
    pass


@dataclass
class VerificationReport:
    problem: str
    feasible: bool
    violations: list = field(default_factory=list)


def _corners(sub: Subdivision, f: int) -> set[tuple[int, int]]:
    out = set()
    for c in sub.faces[f].cells:
        x0, y0, x1, y1 = sub.cell_box(c)
        out.update(((x0, y0), (x1, y0), (x0, y1), (x1, y1)))
    return out


def _in_closure(sub: Subdivision, f: int, p) -> bool:
    x, y = p
    for c in sub.faces[f].cells:
        x0, y0, x1, y1 = sub.cell_box(c)
        if x0 <= x <= x1 and y0 <= y <= y1:
            return True
    return False


def _closures_meet(corners: dict, f: int, g: int) -> bool:
    # closed unions of grid cells meet iff they share a grid corner
    return not corners[f].isdisjoint(corners[g])


def verify_solution(sub: Subdivision, problem: str, solution, target="all") -> VerificationReport:
    targets = sorted(target_faces(sub, target)) if isinstance(target, str) else sorted(target)
    if problem == "stab":
        points = getattr(solution, "points", solution)
        try:
            points = [(int(p[0]), int(p[1])) for p in points]
        except (TypeError, ValueError, IndexError):
            raise MalformedSolution("stabbing solutions are lists of integer points") from None
        if len(set(points)) != len(points):
            raise MalformedSolution("duplicate points")
        missed = [f for f in targets if not any(_in_closure(sub, f, p) for p in points)]
        return VerificationReport("stab", not missed, missed)

    if problem not in ("mis", "mds"):
        raise ValueError(f"unknown problem {problem!r}")
    chosen = getattr(solution, "face_ids", solution)
    try:
        chosen = sorted(int(f) for f in chosen)
    except (TypeError, ValueError):
        raise MalformedSolution("face solutions are lists of face ids") from None
    tset = set(targets)
    bad = [f for f in chosen if f not in tset]
    if bad or len(set(chosen)) != len(chosen):
        raise MalformedSolution(f"faces outside the target set or repeated: {bad}")
    corners = {f: _corners(sub, f) for f in targets}
    if problem == "mis":
        pairs = [
            (f, g)
            for a, f in enumerate(chosen)
            for g in chosen[a + 1:]
            if _closures_meet(corners, f, g)
        ]
        return VerificationReport("mis", not pairs, pairs)
    picked = set(chosen)
    undominated = [
        f
        for f in targets
        if f not in picked and not any(_closures_meet(corners, f, g) for g in chosen)
    ]
    return VerificationReport("mds", not undominated, undominated)
