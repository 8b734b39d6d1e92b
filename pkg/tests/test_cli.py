import json
import math
import xml.etree.ElementTree as ET

import pytest

from anning.cli import main

EUCLID = {"type": "norm-plane", "norm": {"type": "lp", "p": 2.0}}


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_triple_circumcenter(tmp_path, capsys):
    diagram = {
        "field": EUCLID,
        "sites": [
            {"x": 0, "y": 0, "w": 0},
            {"x": 1, "y": 0, "w": 0},
            {"x": 0, "y": 1, "w": 0},
        ],
    }
    code, out, _ = run(capsys, "triple", "--diagram", write_json(tmp_path / "d.json", diagram))
    assert code == 0
    payload = json.loads(out)
    assert payload["points"] == [[0.5, 0.5]]
    assert payload["residuals"][0] <= 1e-9


def test_triple_svg_output(tmp_path, capsys):
    diagram = {
        "field": EUCLID,
        "sites": [
            {"x": 0, "y": 0, "w": 0.2},
            {"x": 2, "y": 0, "w": 0},
            {"x": 0, "y": 2, "w": 0},
        ],
    }
    svg_path = tmp_path / "out.svg"
    code, _, _ = run(
        capsys,
        "triple",
        "--diagram",
        write_json(tmp_path / "d.json", diagram),
        "--svg",
        str(svg_path),
        "--resolution",
        "64",
    )
    assert code == 0
    root = ET.fromstring(svg_path.read_text())
    assert root.tag.endswith("svg")


def test_triple_collinear_exit_2(tmp_path, capsys):
    diagram = {
        "field": EUCLID,
        "sites": [{"x": 0, "y": 0}, {"x": 1, "y": 0}, {"x": 2, "y": 0}],
    }
    for s in diagram["sites"]:
        s["w"] = 0
    code, _, err = run(capsys, "triple", "--diagram", write_json(tmp_path / "d.json", diagram))
    assert code == 2
    assert "Collinear" in err


def test_triple_non_strict_exit_2(tmp_path, capsys):
    diagram = {
        "field": {"type": "norm-plane", "norm": {"type": "l1"}},
        "sites": [
            {"x": 0, "y": 0, "w": 0},
            {"x": 1, "y": 0, "w": 0},
            {"x": 0, "y": 1, "w": 0},
        ],
    }
    code, _, err = run(capsys, "triple", "--diagram", write_json(tmp_path / "d.json", diagram))
    assert code == 2
    assert "NonStrict" in err


def test_triple_malformed_json_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    code, _, err = run(capsys, "triple", "--diagram", str(bad))
    assert code == 1
    assert err


def test_enumerate_345(tmp_path, capsys):
    triangle = {"field": EUCLID, "s1": [0, 0], "s2": [3, 0], "s3": [0, 4]}
    out_path = tmp_path / "report.json"
    code, _, _ = run(
        capsys,
        "enumerate",
        "--triangle",
        write_json(tmp_path / "t.json", triangle),
        "--assert-bound",
        "--out",
        str(out_path),
    )
    assert code == 0
    report = json.loads(out_path.read_text())
    assert report["bound"] == 126
    assert len(report["candidates"]) <= 126
    assert len(report["integer_points"]) == 6
    assert report["triangle"]["s2"] == [3.0, 3.0] or report["triangle"]["s2"] == [3.0, 0.0]
    # round-trip: emitted JSON re-parses to an equal value
    assert json.loads(json.dumps(report)) == report


def test_enumerate_torus(tmp_path, capsys):
    t = math.sqrt(3.0) * 0.9
    triangle = {
        "field": {
            "type": "torus",
            "u": [t * math.cos(math.pi / 6), t * math.sin(math.pi / 6)],
            "v": [0.0, t],
        },
        "s1": [0.0, 0.0],
        "s2": [0.9, 0.0],
        "s3": [0.45, 0.9 * math.sqrt(3.0) / 2.0],
    }
    code, out, _ = run(
        capsys, "enumerate", "--triangle", write_json(tmp_path / "t.json", triangle)
    )
    assert code == 0
    report = json.loads(out)
    assert report["weight_pairs_swept"] == 1
    assert len(report["candidates"]) == 6
    assert report["integer_points"] == []


def test_construct_pythagorean_exact_scaled(capsys):
    code, out, _ = run(
        capsys,
        "construct",
        "pythagorean",
        "--a", "3", "--b", "4", "--c", "5",
        "--n", "2",
        "--exact",
        "--scaled",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["scale"] == 5
    assert payload["points"] == [["5", "0"], ["-7/5", "24/5"]]


def test_construct_grid(capsys):
    code, out, _ = run(capsys, "construct", "grid", "--n", "3")
    assert code == 0
    assert len(json.loads(out)["points"]) == 9


def test_construct_norm_for_set(tmp_path, capsys):
    pts = {"points": [[0.0, 0.0], [1.0, 0.0], [0.0, 2.0]]}
    code, out, _ = run(
        capsys, "construct", "norm-for-set", "--points", write_json(tmp_path / "p.json", pts)
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["norm"]["type"] == "arcs"
    assert len(payload["target_distances"]) == 3


def test_construct_norm_for_set_slope_collision(tmp_path, capsys):
    pts = {"points": [[0, 0], [1, 0], [1, 1], [0, 1]]}
    code, _, err = run(
        capsys, "construct", "norm-for-set", "--points", write_json(tmp_path / "p.json", pts)
    )
    assert code == 2
    assert "SlopeCollision" in err


def test_construct_norm_for_set_rational_strings(tmp_path, capsys):
    pts = {"points": [["0", "0"], ["1", "0"], ["0", "2"]]}
    code, _, _ = run(
        capsys, "construct", "norm-for-set", "--points", write_json(tmp_path / "p.json", pts)
    )
    assert code == 0


def test_construct_cone_equilateral(capsys):
    code, out, _ = run(capsys, "construct", "cone-equilateral", "--k", "4")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["points"]) == 4
    assert payload["points"][0] == {"r": 0.5, "theta": 0.0}


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "cone", "--seed", "7")
    assert code == 0
    assert "cone: pass" in out


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "bogus")
    assert code == 1
    assert "unknown suite" in err


def test_render_command(tmp_path, capsys):
    diagram = {
        "field": EUCLID,
        "sites": [{"x": 0, "y": 0, "w": 0}, {"x": 2, "y": 0, "w": 0}],
    }
    svg_path = tmp_path / "cells.svg"
    code, _, _ = run(
        capsys,
        "render",
        "--diagram",
        write_json(tmp_path / "d.json", diagram),
        "--svg",
        str(svg_path),
        "--resolution",
        "32",
        "--bbox=-2,-2,4,2",
    )
    assert code == 0
    root = ET.fromstring(svg_path.read_text())
    assert root.attrib["viewBox"] == "-2 -2 6 4"


def test_field_flag_overrides_document(tmp_path, capsys):
    triangle = {"s1": [0, 0], "s2": [3, 0], "s3": [0, 4]}  # no field inside
    field_path = write_json(tmp_path / "f.json", EUCLID)
    code, out, _ = run(
        capsys,
        "enumerate",
        "--triangle",
        write_json(tmp_path / "t.json", triangle),
        "--field",
        field_path,
    )
    assert code == 0
    assert json.loads(out)["triangle"]["field"] == EUCLID
    # without --field the document must carry one
    code, _, err = run(capsys, "enumerate", "--triangle", str(tmp_path / "t.json"))
    assert code == 1
    assert "--field" in err


def test_json_outputs_deterministic(tmp_path, capsys):
    triangle = {"field": EUCLID, "s1": [0, 0], "s2": [3, 0], "s3": [0, 4]}
    path = write_json(tmp_path / "t.json", triangle)
    _, out1, _ = run(capsys, "enumerate", "--triangle", path)
    _, out2, _ = run(capsys, "enumerate", "--triangle", path)
    assert out1 == out2
