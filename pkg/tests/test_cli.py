import json
import subprocess
import sys

import pytest

from scenic_routes.cli import main


@pytest.fixture
def fig1_doc(tmp_path):
    p = tmp_path / "fig1.json"
    p.write_text(json.dumps({
        "points": [
            {"id": 0, "x": 0, "y": 0, "color": "red"},
            {"id": 1, "x": 4, "y": 0, "color": "blue"},
            {"id": 2, "x": 0, "y": 2, "color": "blue"},
            {"id": 3, "x": 1, "y": 4, "color": "blue"},
        ],
        "box": {"xmin": -1, "ymin": -1, "xmax": 6, "ymax": 5},
    }))
    return p


def test_build_route_metrics_render_pipeline(fig1_doc, tmp_path):
    graph, report, again, svg = (tmp_path / n for n in ("g.json", "r.json", "m.json", "g.svg"))
    assert main(["build-graph", "--input", str(fig1_doc), "--out", str(graph)]) == 0
    g = json.loads(graph.read_text())
    assert g["summary"]["intersections"] == 3
    assert main(["route", "--input", str(graph), "--algorithm", "all", "--out", str(report)]) == 0
    rep = json.loads(report.read_text())
    assert {r["algorithm"] for r in rep["routes"]} == {"minmax-hull", "densest-line", "acu", "acch", "dpe"}
    assert main(["metrics", "--input", str(graph), "--routes", str(report), "--out", str(again)]) == 0
    assert json.loads(again.read_text())["metrics"] == rep["metrics"]
    assert main(["render", "--input", str(graph), "--routes", str(report), "--out", str(svg)]) == 0
    assert svg.read_text().startswith("<?xml")


def test_route_from_input_document(fig1_doc, capsys):
    assert main(["route", "--input", str(fig1_doc), "--algorithm", "dpe", "--order", "sec2"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["order"] == "sec2" and rep["routes"][0]["metrics"]["completeness"] == 1.0


def test_flats_command(tmp_path, samples_dir):
    out = tmp_path / "lat.json"
    assert main(["flats", "--input", str(samples_dir / "space3d.json"), "--dim", "3", "--out", str(out)]) == 0
    d = json.loads(out.read_text())
    assert d["dim"] == 3 and d["flats"]
    assert main(["flats", "--input", str(samples_dir / "space3d.json"), "--dim", "2"]) == 3


def test_usage_errors_exit_2(fig1_doc, capsys):
    assert main([]) == 2
    assert main(["route", "--input", str(fig1_doc), "--algorithm", "bogus"]) == 2
    assert main(["route", "--input", str(fig1_doc), "--top-k", "many"]) == 2
    capsys.readouterr()


def test_data_errors_exit_3(tmp_path, fig1_doc, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"points": [{"id": 0, "x": 0, "y": 0, "color": "red"},
                                          {"id": 1, "x": 1, "y": 1, "color": "blue", "weight": -2}]}))
    assert main(["build-graph", "--input", str(bad)]) == 3
    assert "/points/1/weight" in capsys.readouterr().err
    assert main(["build-graph", "--input", str(tmp_path / "missing.json")]) == 3
    (tmp_path / "broken.json").write_text("{not json")
    assert main(["build-graph", "--input", str(tmp_path / "broken.json")]) == 3
    # render needs a graph document, not raw input
    assert main(["render", "--input", str(fig1_doc)]) == 3
    assert main(["build-graph", "--input", str(fig1_doc), "--box", "0,0,1"]) == 3


def test_cap_exceeded_exit_4(tmp_path, capsys):
    doc = tmp_path / "big.json"
    pts = [{"id": i, "x": i, "y": (i * 7) % 5, "color": "red" if i < 5 else "blue"} for i in range(10)]
    doc.write_text(json.dumps({"points": pts, "max_curves": 10}))
    assert main(["build-graph", "--input", str(doc)]) == 4
    doc.write_text(json.dumps({"points": pts, "routing": {"max_nodes": 3}}))
    assert main(["route", "--input", str(doc)]) == 4
    doc.write_text(json.dumps({"points": pts}))
    assert main(["route", "--input", str(doc), "--algorithm", "dpe", "--max-nodes", "3"]) == 4
    assert "cap exceeded" in capsys.readouterr().err


def test_identical_runs_are_byte_identical(fig1_doc, tmp_path):
    outs = []
    for k in range(2):
        g, r, s = (tmp_path / f"{n}{k}" for n in ("g.json", "r.json", "g.svg"))
        main(["build-graph", "--input", str(fig1_doc), "--out", str(g)])
        main(["route", "--input", str(g), "--out", str(r)])
        main(["render", "--input", str(g), "--routes", str(r), "--out", str(s)])
        outs.append([p.read_bytes() for p in (g, r, s)])
    assert outs[0] == outs[1]


def test_console_entry_point(fig1_doc):
    proc = subprocess.run([sys.executable, "-m", "scenic_routes.cli", "build-graph", "--input", str(fig1_doc)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["type"] == "scenic-graph"
