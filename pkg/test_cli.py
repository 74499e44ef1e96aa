"""
Tests for the command-line surface: outputs, exit codes, error mapping.
Run: pytest test_cli.py
"""
import json

import pytest

from angled.a2c import parse_a2c
from angled.builders import build
from angled.main import run

FLAGGED_TORUS = """\
meta disk_diagram true
vertex v
edge a v v
edge b v v
face f : a+ b+ a- b- angles: 1/2 1/2 1/2 1/2
"""

GOLDEN_TORUS_HOMOLOGY = """\
{
  "h1": {
    "betti": 2,
    "torsion": []
  },
  "presentation_abelianization": {
    "betti": 2,
    "torsion": []
  }
}
"""

GOLDEN_CYCLIC_HOMOLOGY = """\
{
  "h1": {
    "betti": 0,
    "torsion": [
      3
    ]
  },
  "presentation_abelianization": {
    "betti": 0,
    "torsion": [
      3
    ]
  }
}
"""


def test_check_modes(capsys):
    assert run(["check", "build:torus"]) == 0
    out = capsys.readouterr().out
    assert "v: girth 2 pi via" in out
    assert "classification: NonpositiveOnly (nonpositive: pass)" in out

    assert run(["check", "build:torus", "--mode", "negative"]) == 1
    assert "(negative: fail)" in capsys.readouterr().out


def test_collapse_decisions(capsys):
    assert run(["collapse", "build:grid:2,2", "--decide-pi1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "collapses: 12"
    assert lines[1] == "terminal: Point (1 vertices, 0 edges, 0 faces)"
    assert "simply connected: Yes (terminal = Point)" in lines


def test_collapse_writes_the_terminal_complex(tmp_path, capsys):
    out = tmp_path / "terminal.a2c"
    report = tmp_path / "collapse.json"
    assert run(["collapse", "build:cylinder:3", "-o", str(out), "--json", str(report)]) == 0
    terminal = parse_a2c(out.read_text())
    assert terminal.faces == ()
    assert json.loads(report.read_text())["terminal_class"] == "Cycle"


def test_build_then_validate(tmp_path, capsys):
    assert run(["build", "torus"]) == 0
    assert parse_a2c(capsys.readouterr().out) == build("torus")

    path = tmp_path / "heptadisk.a2c"
    assert run(["build", "heptadisk", "-o", str(path)]) == 0
    assert run(["validate", str(path)]) == 0
    assert "valid: 8 vertices, 14 edges, 7 faces" in capsys.readouterr().out


def test_curvature(tmp_path, capsys):
    assert run(["curvature", "build:heptadisk"]) == 0
    out = capsys.readouterr().out
    assert "c: S = 7/3 pi, chi(Lk) = 0, kappa = -1/3 pi" in out
    assert "Gauss-Bonnet residual: 0 pi" in out

    mislabeled = tmp_path / "torus.a2c"
    mislabeled.write_text(FLAGGED_TORUS)
    assert run(["curvature", str(mislabeled)]) == 1
    assert "Gauss-Bonnet residual: -2 pi" in capsys.readouterr().out


def test_homology_and_presentation(capsys):
    assert run(["homology", "build:torus"]) == 0
    assert capsys.readouterr().out == "H1 = Z^2\n"
    assert run(["presentation", "build:torus"]) == 0
    assert capsys.readouterr().out == "< a, b | a b a^-1 b^-1 >\n"


def test_solve_angles(tmp_path, capsys):
    assert run(["solve-angles", "build:torus"]) == 0
    out = capsys.readouterr().out
    assert "slack: 1/2 pi" in out
    assert "angles: 1/2 1/2 1/2 1/2" in out

    assert run(["solve-angles", "build:torus", "--mode", "negative"]) == 1
    assert "demand 2 pi vs supply 2 pi (tight)" in capsys.readouterr().out

    report = tmp_path / "outcome.json"
    assert run(["solve-angles", "build:tetrahedron", "--json", str(report)]) == 1
    assert "demand 8 pi vs supply 4 pi" in capsys.readouterr().out
    assert json.loads(report.read_text())["status"] == "Infeasible"


def test_trace(tmp_path, capsys):
    report = tmp_path / "trace.json"
    svg = tmp_path / "trace.svg"
    code = run([
        "trace", "build:torus", "--face", "f", "--point", "0.5,0.25", "--dir", "1,0",
        "--json", str(report), "--svg", str(svg),
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "termination: EdgeRevisit at edge b" in out
    assert "straight: yes" in out
    payload = json.loads(report.read_text())
    assert payload["termination"] == "EdgeRevisit"
    assert len(payload["segments"]) == 2
    assert "<svg" in svg.read_text()


def test_seeded_random_traces(capsys):
    assert run(["--seed", "3", "trace", "build:surface:2", "--random-starts", "5"]) == 0
    first = capsys.readouterr().out
    assert len(first.splitlines()) == 5
    assert "FreeEdgeHit" not in first
    assert run(["--seed", "3", "trace", "build:surface:2", "--random-starts", "5"]) == 0
    assert capsys.readouterr().out == first


def test_trace_stopping_at_a_free_edge_exits_1(capsys):
    code = run(["trace", "build:polygon:4", "--face", "f", "--point", "0.5,0.5", "--dir", "1,0"])
    assert code == 1
    out = capsys.readouterr().out
    assert "termination: FreeEdgeHit at edge e1" in out
    assert "straight: yes" in out


def test_homology_report_matches_golden(tmp_path, capsys):
    torus = tmp_path / "torus.json"
    assert run(["homology", "build:torus", "--json", str(torus)]) == 0
    assert torus.read_text() == GOLDEN_TORUS_HOMOLOGY

    cyclic = tmp_path / "cyclic.json"
    assert run(["homology", "build:presentation:a|a^3", "--json", str(cyclic)]) == 0
    assert cyclic.read_text() == GOLDEN_CYCLIC_HOMOLOGY


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "build:heptadisk"],
        ["curvature", "build:grid:2,3"],
        ["collapse", "build:cylinder:4", "--decide-pi1"],
        ["solve-angles", "build:tetrahedron"],
        ["trace", "build:torus", "--face", "f", "--point", "0.5,0.25", "--dir", "1,0"],
    ],
)
def test_json_reports_are_byte_identical_across_runs(argv, tmp_path, capsys):
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    code = run(argv + ["--json", str(first)])
    assert run(argv + ["--json", str(second)]) == code
    assert first.read_bytes() == second.read_bytes()


def test_link(tmp_path, capsys):
    dot = tmp_path / "link.dot"
    assert run(["link", "build:torus", "--vertex", "v", "--dot", str(dot)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("Lk(v): 4 nodes, 4 arcs, chi = 0")
    assert "girth: 2 pi via" in out
    assert dot.read_text().startswith('graph "Lk(v)" {')


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["check"],
        ["check", "build:torus", "--mode", "flat"],
        ["link", "build:torus"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert run(argv) == 2


def test_errors_are_reported_on_stderr(tmp_path, capsys):
    assert run(["validate", str(tmp_path / "missing.a2c")]) == 2
    assert capsys.readouterr().err.startswith("error: cannot read")

    bad = tmp_path / "bad.a2c"
    bad.write_text("vertex v\nedge a v v\nedge b v v\nface f : a+ b+ a- b- angles: 0.5 1/2 1/2 1/2\n")
    assert run(["check", str(bad)]) == 2
    assert capsys.readouterr().err.startswith("error: line 4, column 30:")

    assert run(["build", "sphere"]) == 2
    assert "unknown builder 'sphere'" in capsys.readouterr().err

    assert run(["trace", "build:torus"]) == 2
    assert "--random-starts" in capsys.readouterr().err


def test_verbose_logs_to_stderr(capsys):
    assert run(["--verbose", "check", "build:torus"]) == 0
    assert "DEBUG [angled.weight_test] weight test: NonpositiveOnly" in capsys.readouterr().err
