import csv
import json
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rectsub.cli import main
from rectsub.generators import GeneratorSpec, generate, grid, guillotine
from rectsub.geometry import NonAxisParallel, build_subdivision, rectangular_faces
from rectsub.io import (
    ParseError,
    SchemaError,
    SolutionDocument,
    dumps,
    instance_hash,
    parse_segments,
    serialize_segments,
    solution_document,
)
from rectsub.reductions import stab_variable_gadget
from rectsub.render import render_svg
from rectsub.solvers import exact_mis, greedy_stab

SVG = "{http://www.w3.org/2000/svg}"
FORMULA = '{"variables":3,"clauses":[{"literals":[1,-2,3],"side":"top"}]}'


# ------------------------------------------------------------ formats


def test_parse_segments_examples():
    assert parse_segments("0 0 0 1\n0 1 1 1\n1 1 1 0\n1 0 0 0").m == 4
    assert parse_segments("# comment\n0 0 2 0").m == 1
    with pytest.raises(NonAxisParallel) as e:
        parse_segments("0 0 0 1\n0 0 1 1")
    assert e.value.line == 2
    with pytest.raises(ParseError):
        parse_segments("0 0 1")
    with pytest.raises(ParseError):
        parse_segments("0 0 a 1")
    with pytest.raises(ParseError):
        parse_segments("3 3 3 3")


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 12), st.integers(0, 10_000))
def test_segments_roundtrip(rooms, seed):
    text = serialize_segments(guillotine(rooms, seed), "header")
    assert serialize_segments(parse_segments(text), "header") == text


def test_solution_document_roundtrip():
    segs = grid(2, 2)
    doc = solution_document(greedy_stab(build_subdivision(segs)), "stab", "all", segs)
    text = dumps(doc.to_json())
    again = SolutionDocument.from_json(json.loads(text))
    assert dumps(again.to_json()) == text
    assert doc.instance_hash == instance_hash(segs)
    mis = solution_document(exact_mis(build_subdivision(segs)), "mis", "rect", segs)
    assert dumps(SolutionDocument.from_json(mis.to_json()).to_json()) == dumps(mis.to_json())
    with pytest.raises(SchemaError):
        SolutionDocument.from_json({"problem": "stab"})


def test_generators():
    assert guillotine(1, 0).m == 4
    assert build_subdivision(guillotine(1, 0)).n_faces == 1
    assert build_subdivision(generate(GeneratorSpec("grid", dims=(2, 2)))).n_faces == 4
    sub = build_subdivision(guillotine(7, 42))
    assert sub.n_faces == 7 and len(rectangular_faces(sub)) == 7
    assert guillotine(7, 42) == guillotine(7, 42)
    # frozen: the seeded generator must not drift between releases
    assert instance_hash(guillotine(7, 42)) == (
        "sha256:837c4b6bfe793a67c6d893b79709a5661f4b5d85c4b06f1da313df8a45d8378b"
    )
    assert build_subdivision(generate(GeneratorSpec("gadget", rooms=1))).n_faces == 13
    with pytest.raises(ValueError):
        GeneratorSpec("spiral")
    with pytest.raises(ValueError):
        GeneratorSpec(rooms=0)


# ------------------------------------------------------------- render


def _faces(svg):
    root = ET.fromstring(svg.split("\n", 1)[1])
    return root.findall(f".//{SVG}path"), root.findall(f".//{SVG}circle")


def test_svg_unit_square():
    paths, points = _faces(render_svg(build_subdivision(guillotine(1, 0))))
    assert len(paths) == 1 and not points


def test_svg_gadget_with_canonical_points():
    g = stab_variable_gadget(1)
    paths, points = _faces(render_svg(g.subdivision, g.canonical[1][0]))
    assert len(paths) == 13 and len(points) == 6
    assert {p.get("data-class") for p in paths} == {"variable"}


def test_svg_highlighted_face():
    sub = build_subdivision(grid(2, 2))
    paths, _ = _faces(render_svg(sub, [0]))
    assert [p.get("data-face") for p in paths if "selected" in p.get("class")] == ["0"]


# ---------------------------------------------------------------- CLI


@pytest.fixture
def files(tmp_path):
    (tmp_path / "grid.segs").write_text(serialize_segments(grid(2, 2)))
    (tmp_path / "formula.json").write_text(FORMULA)
    (tmp_path / "bad.segs").write_text("0 0 1 1\n")
    return tmp_path


def test_cli_stab(files, capsys):
    assert main(["stab", str(files / "grid.segs"), "--algo", "greedy", "--faces", "all"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["size"] == 1 and doc["problem"] == "stab"


def test_cli_build_and_solvers(files, capsys):
    assert main(["build", str(files / "grid.segs")]) == 0
    assert json.loads(capsys.readouterr().out)["faces"] == 4
    for cmd in ("mis", "mds"):
        assert main([cmd, str(files / "grid.segs")]) == 0
        assert json.loads(capsys.readouterr().out)["size"] == 1
    assert main(["stab", str(files / "grid.segs"), "--algo", "local", "--k", "2"]) == 0


def test_cli_reduce(files):
    out, rep = files / "out.segs", files / "rep.json"
    code = main(
        ["reduce", str(files / "formula.json"), "--problem", "stab", "--variant", "rect",
         "-o", str(out), "--report", str(rep)]
    )
    assert code == 0
    report = json.loads(rep.read_text())
    assert report["target"] == 18
    assert report["instance_hash"] == instance_hash(parse_segments(out.read_text()))
    assert len(report["manifest"]) == report["faces"]


def test_cli_reduce_assignment_exit_codes(files):
    f = str(files / "formula.json")
    o = str(files / "o.segs")
    assert main(["reduce", f, "--problem", "stab", "--variant", "rect", "-o", o, "--assignment", "111"]) == 0
    assert main(["reduce", f, "--problem", "stab", "--variant", "rect", "-o", o, "--assignment", "010"]) == 1
    assert main(["reduce", f, "--problem", "stab", "-o", o, "--assignment", "01"]) == 2


def test_cli_verify_lemma(files, capsys):
    assert main(["verify-lemma", str(files / "formula.json"), "--problem", "mds", "--variant", "rect"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["converse_check"] == "verified" and rep["target"] == 12


def test_cli_verify_solution(files):
    g = str(files / "grid.segs")
    sol = files / "sol.json"
    assert main(["mis", g, "-o", str(sol)]) == 0
    assert main(["mis", g, "--verify", str(sol)]) == 0
    doc = json.loads(sol.read_text())
    doc["face_ids"] = [0, 1]
    doc["size"] = 2
    sol.write_text(json.dumps(doc))
    assert main(["mis", g, "--verify", str(sol)]) == 1
    doc["instance_hash"] = "sha256:0"
    sol.write_text(json.dumps(doc))
    assert main(["mis", g, "--verify", str(sol)]) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["build", "{d}/bad.segs"],
        ["build", "{d}/missing.segs"],
        ["stab", "{d}/formula.json"],
        ["reduce", "{d}/grid.segs", "--problem", "stab"],
        ["gen", "--kind", "grid", "--dims", "2by2"],
        ["gen", "--rooms", "0"],
    ],
)
def test_cli_input_errors(files, argv):
    assert main([a.format(d=files) for a in argv]) == 2


def test_cli_usage_error(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_cli_gen_and_render(files):
    segs = files / "g.segs"
    assert main(["gen", "--kind", "guillotine", "--rooms", "5", "--seed", "3", "-o", str(segs)]) == 0
    assert parse_segments(segs.read_text()) == guillotine(5, 3)
    svg = files / "g.svg"
    assert main(["render", str(segs), "-o", str(svg)]) == 0
    assert len(_faces(svg.read_text())[0]) == 5
    png = files / "g.png"
    assert main(["render", str(segs), "-o", str(png)]) == 0
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_cli_bench(files):
    out, fig = files / "bench.csv", files / "bench.png"
    assert main(["bench", "--count", "10", "--csv", str(out), "--figure", str(fig)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 10 and all(r["within_h4"] == "True" for r in rows)
    assert fig.stat().st_size > 0
