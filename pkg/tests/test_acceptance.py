"""Acceptance gate: one verdict line per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the verdicts are repeated
in an "acceptance criteria" section at the end of the terminal report.
"""

import itertools
import math
import time

import pytest

from conftest import record
from rectsub.corpus import corpus, guillotine_corpus
from rectsub.geometry import build_subdivision, rectangular_faces
from rectsub.oracle import check_point_location
from rectsub.reductions import (
    Clause,
    LayoutInvalid,
    Rp3SatInstance,
    mds_variable_gadget,
    mis_variable_gadget,
    parse_formula,
    stab_variable_gadget,
    verify_lemma,
)
from rectsub.solvers import (
    LocalSearchConfig,
    all_minimum_dominating_sets,
    exact_mds,
    exact_mis,
    exact_stab,
    greedy_stab,
    is_locally_optimal,
    local_search_stab,
    naive_mds,
    naive_mis,
    naive_stab,
    verify_solution,
)

H4 = 25 / 12


@pytest.fixture(scope="module")
def built():
    items = corpus(200)
    return [(it, build_subdivision(it.segments)) for it in items]


def test_1_gadget_census():
    t = time.perf_counter()
    bad = []
    for m in (1, 2, 3):
        g = stab_variable_gadget(m)
        vert = sum(1 for s in g.segments if not s.horizontal)
        got = (vert, g.segments.m - vert, len(rectangular_faces(g.subdivision)))
        if got != (8 * m + 4, 4, 8 * m + 5):
            bad.append(("stab", m, got))
        r = len(rectangular_faces(mis_variable_gadget(m).subdivision))
        if r != 8 * m - 1:
            bad.append(("mis", m, r))
        r = len(rectangular_faces(mds_variable_gadget(m).subdivision))
        if r != 8 * m + 8:
            bad.append(("mds", m, r))
    dt = time.perf_counter() - t
    ok = not bad and dt < 1.0
    record("1", ok, f"gadget census m=1..3, mismatches={bad}, {dt:.2f}s (limit 1s)")
    assert ok


def test_2_gadget_optima():
    times, found = [], {}
    t = time.perf_counter()
    found["stab"] = exact_stab(stab_variable_gadget(1).subdivision, "rect")
    times.append(time.perf_counter() - t)
    t = time.perf_counter()
    found["mis"] = exact_mis(mis_variable_gadget(1).subdivision, "rect")
    times.append(time.perf_counter() - t)
    t = time.perf_counter()
    g = mds_variable_gadget(1)
    found["mds"] = exact_mds(g.subdivision, "rect")
    sols, complete = all_minimum_dominating_sets(g.subdivision, "rect")
    times.append(time.perf_counter() - t)
    sizes = {k: v.size for k, v in found.items()}
    two = complete and len(sols) == 2 and set(sols) == set(g.canonical[1])
    ok = (
        sizes == {"stab": 6, "mis": 3, "mds": 4}
        and all(v.optimal for v in found.values())
        and two
        and max(times) < 10
    )
    record("2", ok, f"optima {sizes}, MDS optimal sets={len(sols)} equal D1/D2={two}, max {max(times):.2f}s (limit 10s)")
    assert ok


def _cube():
    signs = itertools.product((1, -1), repeat=3)
    return Rp3SatInstance(
        3, tuple(Clause((a, 2 * b, 3 * c), "top" if k < 4 else "bottom") for k, (a, b, c) in enumerate(signs))
    )


SAT_ONE = '{"variables":3,"clauses":[{"literals":[1,-2,3],"side":"top"}]}'


def test_3a_lemma_satisfiable():
    t = time.perf_counter()
    inst = parse_formula(SAT_ONE)
    got = {}
    for problem in ("stab", "mis", "mds"):
        rep = verify_lemma(inst, problem, "rect")
        got[problem] = (rep.target, rep.forward_check, rep.converse_check)
    dt = time.perf_counter() - t
    ok = got == {
        "stab": (18, True, "verified"),
        "mis": (13, True, "verified"),
        "mds": (12, True, "verified"),
    }
    record("3a", ok, f"n=3,m=1 satisfiable: {got}, {dt:.1f}s")
    assert ok


def test_3b_lemma_unsat_cube():
    t = time.perf_counter()
    try:
        rep = verify_lemma(_cube(), "stab", "rect")
        ok = (not rep.satisfiable) and rep.forward_check and rep.converse_check == "verified"
        detail = f"satisfiable={rep.satisfiable} forward={rep.forward_check} converse={rep.converse_check}"
    except LayoutInvalid as e:
        ok = False
        detail = f"sign cube has no crossing-free layout ({len(e.violations)} leg crossings), reduction not built"
    record("3b", ok, f"n=3,m=8 sign cube, stab: {detail}, {time.perf_counter() - t:.1f}s")
    assert ok


def test_4_greedy_guarantee(built):
    t = time.perf_counter()
    violations, worst, done = [], 0.0, 0
    for it, sub in built:
        ex = exact_stab(sub)
        if not ex.optimal:
            continue
        done += 1
        gr = greedy_stab(sub)
        if ex.size:
            worst = max(worst, gr.size / ex.size)
            if gr.size / ex.size > H4:
                violations.append(it.name)
        elif gr.size:
            violations.append(it.name)
    dt = time.perf_counter() - t
    ok = not violations and done == len(built) and dt < 60
    record("4", ok, f"{done}/{len(built)} instances, worst greedy ratio {worst:.3f} (bound 25/12), violations={len(violations)}, {dt:.1f}s")
    assert ok


def test_5_local_search(built):
    t = time.perf_counter()
    bad = []
    small = 0
    for it, sub in built:
        ex = exact_stab(sub)
        ls = local_search_stab(sub, LocalSearchConfig(k=3))
        if not verify_solution(sub, "stab", ls).feasible or not is_locally_optimal(sub, ls.points, 3):
            bad.append((it.name, "not 3-locally optimal"))
        if ls.size < ex.size:
            bad.append((it.name, "below exact"))
        if len(sub.vertices) <= 12:
            small += 1
            ub = local_search_stab(sub, LocalSearchConfig(k=len(sub.vertices) + 1))
            if ub.size != ex.size or not ub.optimal:
                bad.append((it.name, "unbounded k differs from exact"))
    dt = time.perf_counter() - t
    ok = not bad and dt < 120
    record("5", ok, f"k=3 audited on {len(built)} instances, unbounded k on {small} small ones, failures={bad[:3]}, {dt:.1f}s")
    assert ok


def test_6_guard_bound():
    t = time.perf_counter()
    items = guillotine_corpus(100)
    bad = []
    for it in items:
        ex = exact_stab(build_subdivision(it.segments))
        if not ex.optimal or ex.size > math.ceil(it.rooms / 2):
            bad.append((it.name, ex.size))
    dt = time.perf_counter() - t
    ok = not bad and dt < 30
    record("6", ok, f"100 guillotine partitions (<= 12 rooms), exact <= ceil(rooms/2), violations={bad[:3]}, {dt:.1f}s")
    assert ok


def test_7_geometry_oracle(built):
    euler_bad, loc_bad, cells = [], [], 0
    for it, sub in built:
        if sub.euler_faces() != sub.n_faces:
            euler_bad.append(it.name)
        rep = check_point_location(sub, samples=1000, seed=len(it.name))
        cells += rep.sampled
        if not rep.ok:
            loc_bad.append(it.name)
    ok = not euler_bad and not loc_bad
    record("7", ok, f"Euler failures={len(euler_bad)}, point-location mismatches on {len(loc_bad)} instances ({cells} cells checked)")
    assert ok


def test_8_exact_vs_naive(built):
    t = time.perf_counter()
    checked, bad = 0, []
    for it, sub in built:
        if sub.n_faces > 16 or len(sub.vertices) > 20:
            continue
        checked += 1
        pairs = (
            (exact_stab(sub).size, naive_stab(sub).size),
            (exact_mis(sub).size, naive_mis(sub).size),
            (exact_mds(sub).size, naive_mds(sub).size),
        )
        if any(a != b for a, b in pairs):
            bad.append((it.name, pairs))
    ok = not bad and checked > 0
    record("8", ok, f"{checked} instances with <= 16 faces and <= 20 vertices, disagreements={bad[:3]}, {time.perf_counter() - t:.1f}s")
    assert ok


PLANAR_UNSAT = {
    "variables": 6,
    "clauses": [
        {"literals": [-4, 5, 6], "side": "top"},
        {"literals": [3, 4, 6], "side": "top"},
        {"literals": [2, 3, -6], "side": "top"},
        {"literals": [1, -2, -6], "side": "top"},
        {"literals": [-4, -5, 6], "side": "bottom"},
        {"literals": [-3, 4, 6], "side": "bottom"},
        {"literals": [2, -3, -6], "side": "bottom"},
        {"literals": [-1, -2, -6], "side": "bottom"},
    ],
}


def test_3b_supplement_planar_unsat():
    """Not a criterion: the converse on a crossing-free unsatisfiable formula."""
    t = time.perf_counter()
    rep = verify_lemma(parse_formula(PLANAR_UNSAT), "stab", "rect")
    ok = (not rep.satisfiable) and rep.forward_check and rep.converse_check == "verified"
    record(
        "3b-supplement",
        ok,
        f"n=6,m=8 planar unsatisfiable, stab: target {rep.target}, exact optimum "
        f"{rep.details['global_optimum']}, converse={rep.converse_check}, {time.perf_counter() - t:.1f}s",
    )
    assert ok
