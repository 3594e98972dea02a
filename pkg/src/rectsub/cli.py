"""Command line entry point (``rectsub``).

Exit status: 0 on success, 1 when a checked solution is infeasible or a
lemma check is refuted, 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from pathlib import Path

from . import io as rio
from .geometry import GeometryError, build_subdivision, rectangular_faces
from .generators import GeneratorSpec, generate
from .reductions import (
    LayoutInvalid,
    TooLarge,
    canonical_solution,
    compile_reduction,
    parse_formula,
    verify_lemma,
)
from .solvers import (
    LocalSearchConfig,
    MalformedSolution,
    SearchBudget,
    exact_mds,
    exact_mis,
    exact_stab,
    greedy_mds,
    greedy_mis,
    greedy_stab,
    local_search_stab,
    naive_mds,
    naive_mis,
    naive_stab,
    verify_solution,
)

log = logging.getLogger("rectsub")

SOLVERS = {
    "stab": {"greedy": greedy_stab, "exact": exact_stab, "naive": naive_stab, "local": local_search_stab},
    "mis": {"greedy": greedy_mis, "exact": exact_mis, "naive": naive_mis},
    "mds": {"greedy": greedy_mds, "exact": exact_mds, "naive": naive_mds},
}


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_segments(path: str):
    return rio.parse_segments(_read(path))


def _load_json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


def _budget(args) -> SearchBudget:
    return SearchBudget(nodes=args.nodes, seconds=args.seconds)


# ------------------------------------------------------------------ commands


def cmd_build(args) -> int:
    segs = _load_segments(args.segments)
    sub = build_subdivision(segs)
    doc = {
        "segments": segs.m,
        "vertices": len(sub.vertices),
        "edges": sub.edge_count,
        "components": sub.component_count,
        "faces": sub.n_faces,
        "rectangular_faces": len(rectangular_faces(sub)),
        "euler_ok": sub.euler_faces() == sub.n_faces,
        "instance_hash": rio.instance_hash(segs),
        "face_adjacency": sorted([f, g] for f, nb in enumerate(sub.adjacency) for g in nb if f < g),
    }
    _emit(rio.dumps(doc), args.output)
    return 0


def cmd_solve(args) -> int:
    problem = args.command
    segs = _load_segments(args.segments)
    sub = build_subdivision(segs)
    if args.verify:
        doc = rio.SolutionDocument.from_json(_load_json(args.verify))
        if doc.instance_hash != rio.instance_hash(segs):
            raise InputError("solution instance_hash does not match the segment file")
        if doc.problem != problem:
            raise InputError(f"solution is for {doc.problem}, not {problem}")
        chosen = doc.points if problem == "stab" else doc.face_ids
        rep = verify_solution(sub, problem, chosen, args.faces)
        _emit(
            rio.dumps({"problem": problem, "feasible": rep.feasible, "violations": [list(v) if isinstance(v, tuple) else v for v in rep.violations]}),
            args.output,
        )
        return 0 if rep.feasible else 1
    algo = args.algo
    if algo not in SOLVERS[problem]:
        raise InputError(f"algorithm {algo!r} is not available for {problem}")
    fn = SOLVERS[problem][algo]
    if algo == "exact":
        sol = fn(sub, args.faces, _budget(args))
    elif algo == "local":
        sol = fn(sub, LocalSearchConfig(k=args.k), args.faces)
    else:
        sol = fn(sub, args.faces)
    doc = rio.solution_document(sol, problem, args.faces, segs)
    _emit(rio.dumps(doc.to_json()), args.output)
    return 0


def cmd_reduce(args) -> int:
    inst = parse_formula(_load_json(args.formula))
    out = compile_reduction(inst, args.problem, args.variant)
    header = f"{args.problem} reduction ({args.variant}) of a {inst.n}-variable, {inst.m}-clause formula"
    _emit(rio.serialize_segments(out.segments, header), args.output)
    if args.report:
        canon = {}
        for v, pair in out.canonical.items():
            if args.problem == "stab":
                canon[str(v)] = [[list(p) for p in s] for s in pair]
            else:
                canon[str(v)] = [sorted(s) for s in pair]
        report = {
            "problem": args.problem,
            "variant": args.variant,
            "n": inst.n,
            "m": inst.m,
            "target": out.target,
            "faces": out.subdivision.n_faces,
            "instance_hash": rio.instance_hash(out.segments),
            "canonical": canon,
            "manifest": out.manifest_json(),
        }
        Path(args.report).write_text(rio.dumps(report))
    if args.assignment is not None:
        bits = args.assignment
        if len(bits) != inst.n or set(bits) - {"0", "1"}:
            raise InputError(f"--assignment needs {inst.n} characters of 0/1")
        sol = canonical_solution(out, [b == "1" for b in bits])
        rep = verify_solution(out.subdivision, args.problem, sol, args.variant)
        log.info("canonical solution: size %d, feasible %s", sol.size, rep.feasible)
        return 0 if rep.feasible else 1
    return 0


def cmd_verify_lemma(args) -> int:
    inst = parse_formula(_load_json(args.formula))
    rep = verify_lemma(inst, args.problem, args.variant, _budget(args))
    _emit(rio.dumps(rep.to_json()), args.output)
    if rep.converse_check == "inconclusive":
        log.warning("converse check inconclusive: search budget exhausted")
    return 1 if rep.converse_check == "refuted" or not rep.forward_check else 0


def cmd_render(args) -> int:
    segs = _load_segments(args.segments)
    sub = build_subdivision(segs)
    solution = None
    if args.solution:
        doc = rio.SolutionDocument.from_json(_load_json(args.solution))
        solution = doc.points if doc.problem == "stab" else doc.face_ids
    if args.manifest:
        from dataclasses import replace

        from .geometry import FaceClass

        entries = _load_json(args.manifest)
        entries = entries.get("manifest", entries) if isinstance(entries, dict) else entries
        cls = {e["face"]: FaceClass(e["class"]) for e in entries}
        sub = replace(sub, faces=tuple(replace(f, cls=cls.get(f.id, f.cls)) for f in sub.faces))
    out = args.output
    if out is None or out.endswith(".svg"):
        from .render import render_svg

        _emit(render_svg(sub, solution), out)
    else:
        from .render import render_figure

        render_figure(sub, out, solution, title=args.title)
    return 0


def cmd_gen(args) -> int:
    try:
        a, b = (int(t) for t in args.dims.lower().split("x"))
    except ValueError:
        raise InputError(f"--dims expects AxB, got {args.dims!r}") from None
    try:
        spec = GeneratorSpec(args.kind, args.rooms, (a, b), args.seed)
    except ValueError as e:
        raise InputError(str(e)) from None
    segs = generate(spec)
    _emit(rio.serialize_segments(segs, f"{args.kind} rooms={args.rooms} dims={a}x{b} seed={args.seed}"), args.output)
    return 0


def cmd_bench(args) -> int:
    """Greedy and local search against the exact optimum over the corpus.

    Writes one CSV row per instance and, with ``--figure``, a scatter plot.
    """
    from .corpus import corpus

    rows = []
    for item in corpus(args.count, args.seed):
        sub = build_subdivision(item.segments)
        ex = exact_stab(sub, "all", _budget(args))
        gr = greedy_stab(sub)
        ls = local_search_stab(sub, LocalSearchConfig(k=args.k))
        rows.append(
            {
                "name": item.name,
                "kind": item.kind,
                "faces": sub.n_faces,
                "vertices": len(sub.vertices),
                "exact": ex.size,
                "exact_complete": ex.optimal,
                "greedy": gr.size,
                "local_search": ls.size,
                "greedy_ratio": round(gr.size / ex.size, 6) if ex.size else 1.0,
                "within_h4": gr.size <= math.ceil(25 / 12 * ex.size),
            }
        )
    fh = open(args.csv, "w", newline="") if args.csv else sys.stdout
    try:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]) if rows else ["name"])
        w.writeheader()
        w.writerows(rows)
    finally:
        if args.csv:
            fh.close()
    if args.figure:
        from .render import ratio_figure

        ratio_figure(rows, args.figure)
    return 0 if all(r["within_h4"] for r in rows) else 1


# ------------------------------------------------------------------- parsing


def _add_budget(p):
    p.add_argument("--nodes", type=int, default=2_000_000, help="branch-and-bound node limit")
    p.add_argument("--seconds", type=float, default=60.0, help="branch-and-bound time limit")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rectsub", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sp = ap.add_subparsers(dest="command", required=True)

    p = sp.add_parser("build", help="build a subdivision and print its statistics")
    p.add_argument("segments")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build)

    for name, algos, default in (
        ("stab", ["greedy", "exact", "local", "naive"], "greedy"),
        ("mis", ["greedy", "exact", "naive"], "exact"),
        ("mds", ["greedy", "exact", "naive"], "exact"),
    ):
        p = sp.add_parser(name, help=f"solve the {name} problem on a .segs file")
        p.add_argument("segments")
        p.add_argument("--algo", choices=algos, default=default)
        p.add_argument("--faces", choices=["all", "rect"], default="all")
        p.add_argument("--k", type=int, default=3, help="local-search level")
        p.add_argument("--verify", metavar="SOLUTION", help="check a solution document instead of solving")
        p.add_argument("-o", "--output")
        _add_budget(p)
        p.set_defaults(func=cmd_solve)

    p = sp.add_parser("reduce", help="compile a formula into gadget geometry")
    p.add_argument("formula")
    p.add_argument("--problem", choices=["stab", "mis", "mds"], required=True)
    p.add_argument("--variant", choices=["rect", "all"], default="all")
    p.add_argument("--report", help="write target, canonical solutions and manifest here")
    p.add_argument("--assignment", help="check the canonical solution of this 0/1 string")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_reduce)

    p = sp.add_parser("verify-lemma", help="check the reduction lemma on a small formula")
    p.add_argument("formula")
    p.add_argument("--problem", choices=["stab", "mis", "mds"], required=True)
    p.add_argument("--variant", choices=["rect", "all"], default="all")
    p.add_argument("-o", "--output")
    _add_budget(p)
    p.set_defaults(func=cmd_verify_lemma)

    p = sp.add_parser("render", help="draw a subdivision (SVG, or PNG/PDF via matplotlib)")
    p.add_argument("segments")
    p.add_argument("--solution")
    p.add_argument("--manifest", help="reduction report or manifest used to colour faces")
    p.add_argument("--title")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)

    p = sp.add_parser("gen", help="generate an instance")
    p.add_argument("--kind", choices=["guillotine", "grid", "gadget"], default="guillotine")
    p.add_argument("--rooms", type=int, default=1)
    p.add_argument("--dims", default="2x2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sp.add_parser("bench", help="greedy and local search vs exact over the seeded corpus")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--csv", help="CSV output path (stdout if omitted)")
    p.add_argument("--figure", help="write a ratio plot (PNG/PDF/SVG)")
    _add_budget(p)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (
        InputError,
        rio.ParseError,
        rio.SchemaError,
        GeometryError,
        LayoutInvalid,
        TooLarge,
        MalformedSolution,
        ValueError,
    ) as e:
        print(f"rectsub {args.command}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
