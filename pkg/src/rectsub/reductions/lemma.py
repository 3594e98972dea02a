"""Canonical solutions and machine checks of the reduction lemmas."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..geometry import target_faces
from ..solvers import (
    FaceSolution,
    PointSolution,
    SearchBudget,
    all_minimum_dominating_sets,
    exact_mds,
    exact_mis,
    exact_stab,
    verify_solution,
)
from .formula import LayoutInvalid, Rp3SatInstance, sat_brute_force, validate_layout
from .gadgets import ReductionOutput, _per_gadget, compile_reduction


class ClauseUnsatisfiedByAssignment(ValueError):
    def __init__(self, clause: int):
        self.clause = clause
        super().__init__(f"clause {clause} has no free attachment rectangle")


def canonical_solution(out: ReductionOutput, assignment) -> PointSolution | FaceSolution:
    """Glue the per-variable canonical solutions chosen by ``assignment``.

    A true variable selects ``P1`` (stab) or the second set ``S2`` / ``D2``
    (mis / mds); for independent set every clause ring then contributes four
    rectangles picked greedily around a free leg.
    """
    inst = out.instance
    if len(assignment) != inst.n:
        raise ValueError(f"assignment has {len(assignment)} values, expected {inst.n}")
    if out.problem == "stab":
        pts = []
        for v, val in enumerate(assignment, start=1):
            pts.extend(out.canonical[v][0 if val else 1])
        return PointSolution(tuple(pts), False, "canonical")

    chosen: set[int] = set()
    for v, val in enumerate(assignment, start=1):
        chosen |= out.canonical[v][1 if val else 0]
    if out.problem == "mis":
        adj = out.subdivision.adjacency
        for alpha, legs in out.attachments.items():
            free = [j for j, (_, _, f) in enumerate(legs, start=1) if f not in chosen]
            if not free:
                raise ClauseUnsatisfiedByAssignment(alpha)
            picked = [out.face("clause", alpha, f"r_alpha^{free[0]}")]
            for r in range(4, 10):
                f = out.face("clause", alpha, f"r_alpha^{r}")
                if not any(g in adj[f] for g in picked):
                    picked.append(f)
            chosen.update(picked)
    return FaceSolution(frozenset(chosen), False, "canonical")


@dataclass
class LemmaReport:
    problem: str
    variant: str
    n: int
    m: int
    target: int
    satisfiable: bool
    forward_check: bool
    converse_check: str  # verified | inconclusive | refuted
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "problem": self.problem,
            "variant": self.variant,
            "n": self.n,
            "m": self.m,
            "target": self.target,
            "satisfiable": self.satisfiable,
            "forward_check": self.forward_check,
            "converse_check": self.converse_check,
            "details": self.details,
        }


def _feasible_at_target(out: ReductionOutput, assignment) -> bool:
    try:
        sol = canonical_solution(out, assignment)
    except ClauseUnsatisfiedByAssignment:
        return False
    rep = verify_solution(out.subdivision, out.problem, sol, out.variant)
    return rep.feasible and sol.size == out.target


def _gadget_checks(out: ReductionOutput, budget: SearchBudget) -> dict:
    sub = out.subdivision
    allowed = target_faces(sub, out.variant)
    m = out.slots_per_side
    want = _per_gadget(out.problem, m)
    per = {}
    for v in range(1, out.instance.n + 1):
        faces = out.gadget_faces(v) & allowed
        entry = {"faces": len(faces), "expected": want}
        if out.problem == "stab":
            sol = exact_stab(sub, faces, budget)
            entry.update(optimum=sol.size, complete=sol.optimal)
        elif out.problem == "mis":
            sol = exact_mis(sub, faces, budget)
            entry.update(optimum=sol.size, complete=sol.optimal)
        else:
            sols, complete = all_minimum_dominating_sets(sub, faces, budget)
            canon = {s & faces for s in out.canonical[v]}
            entry.update(
                optimum=len(sols[0]) if sols else None,
                complete=complete,
                optimal_sets=len(sols),
                unique_pair=complete and len(sols) == 2 and set(sols) == canon,
            )
        entry["ok"] = bool(entry["complete"] and entry["optimum"] == want and entry.get("unique_pair", True))
        per[str(v)] = entry
    clauses = {}
    if out.problem == "mis":
        for alpha in range(out.instance.m):
            ring = out.clause_faces(alpha) & allowed
            sol = exact_mis(sub, ring, budget)
            clauses[str(alpha)] = {"optimum": sol.size, "complete": sol.optimal, "ok": sol.optimal and sol.size == 4}
    return {"variables": per, "clauses": clauses}


def _certified_bound(out: ReductionOutput, gadgets: dict) -> bool:
    """Whether the per-gadget optima alone bound the global optimum by the target.

    Stabbing: faces of different gadgets share no vertex, so the gadget
    minima add up to a lower bound. Independent set over rectangles: target
    faces split into gadget faces and clause rings, so the maxima add up to
    an upper bound. Neither argument is available for domination, where a
    clause rectangle dominates faces of several gadgets.
    """
    if not all(g["ok"] for g in gadgets["variables"].values()):
        return False
    if not all(c["ok"] for c in gadgets["clauses"].values()):
        return False
    sub = out.subdivision
    owner = {e.face: (e.cls, e.owner) for e in out.manifest}
    if out.problem == "stab":
        gadget = set()
        for v in range(1, out.instance.n + 1):
            gadget |= out.gadget_faces(v)
        for fs in sub.vertex_to_faces:
            if len({owner[f] for f in fs if f in gadget}) > 1:
                return False
        return True
    if out.problem == "mis":
        allowed = target_faces(sub, out.variant)
        return all(owner[f][0] in ("variable", "clause") for f in allowed)
    return False


def _global_optimum(out: ReductionOutput, budget: SearchBudget):
    solver = {"stab": exact_stab, "mis": exact_mis, "mds": exact_mds}[out.problem]
    sol = solver(out.subdivision, out.variant, budget)
    return sol.size, sol.optimal


def _meets(problem: str, size: int, target: int) -> bool:
    return size >= target if problem == "mis" else size <= target


def verify_lemma(
    inst: Rp3SatInstance,
    problem: str,
    variant: str = "rect",
    budget: SearchBudget = SearchBudget(),
) -> LemmaReport:
    """Check "satisfiable iff a solution of target size exists" on ``inst``.

    The forward direction is checked for every assignment through the
    canonical solutions. The converse is decided by an exact search over the
    whole reduction; when that runs out of budget a satisfiable instance can
    still be certified through per-gadget bounds, otherwise the verdict is
    inconclusive.
    """
    violations = validate_layout(inst)
    if violations:
        raise LayoutInvalid(violations)
    satisfiable, witnesses = sat_brute_force(inst)
    out = compile_reduction(inst, problem, variant)

    hits = []
    forward = True
    for a in itertools.product((False, True), repeat=inst.n):
        ok = _feasible_at_target(out, a)
        if ok:
            hits.append(a)
        if ok != inst.satisfied(a):
            forward = False
    gadgets = _gadget_checks(out, budget)
    opt, complete = _global_optimum(out, budget)

    if complete:
        exists = _meets(problem, opt, out.target)
        converse = "verified" if exists == satisfiable else "refuted"
        # a satisfiable instance must also hit the target exactly
        if satisfiable and opt != out.target:
            converse = "refuted"
    elif satisfiable and hits and _certified_bound(out, gadgets):
        converse = "verified"
    else:
        converse = "inconclusive"

    details = {
        "witnesses": len(witnesses),
        "canonical_hits": len(hits),
        "global_optimum": opt,
        "global_search_complete": complete,
        "gadgets": gadgets,
        "faces": out.subdivision.n_faces,
        "segments": out.segments.m,
    }
    return LemmaReport(
        problem, variant, inst.n, inst.m, out.target, satisfiable, forward, converse, details
    )
