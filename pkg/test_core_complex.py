"""
Tests for the A2C format and structural validation.
Run: pytest test_core_complex.py
"""
from dataclasses import replace

import pytest

from angled.a2c import parse_a2c, serialize_a2c, uniform_angles
from angled.builders import build
from angled.core import (
    adjacency_census,
    census_profile,
    euler_characteristic,
    require_valid,
    total_angle,
    validate,
)
from angled.errors import (
    A2CSyntaxError,
    AngleSumError,
    DuplicateIdentifierError,
    InvalidComplexError,
    NonPositiveAngleError,
    UnknownCellError,
)
from angled.models import Angle, Complex2, Corner, DirectedEdge, Edge, Face

TORUS_A2C = """\
# flat torus: one square, opposite sides identified
vertex v
edge a v v
edge b v v
face f : a+ b+ a- b- angles: 1/2 1/2 1/2 1/2
"""


def test_parse_torus():
    complex_ = parse_a2c(TORUS_A2C, source="torus.a2c")
    assert complex_.vertices == ("v",)
    assert [e.id for e in complex_.edges] == ["a", "b"]
    face = complex_.face("f")
    assert face.boundary == (
        DirectedEdge("a", 1), DirectedEdge("b", 1), DirectedEdge("a", -1), DirectedEdge("b", -1),
    )
    assert face.angles == (Angle("1/2"),) * 4
    assert complex_.source == "torus.a2c"
    assert validate(complex_).ok


def test_serialize_then_parse_keeps_the_complex():
    original = build("grid:2,3")
    again = parse_a2c(serialize_a2c(original))
    assert again == original
    assert again.is_disk_diagram
    assert again.source == "grid:2,3"


@pytest.mark.parametrize("source", ["runs/#3 torus.a2c", "C:\\corpus\\torus.a2c", "a\\#b # c"])
def test_source_with_comment_marks_survives_serialization(source):
    original = replace(build("torus"), source=source)
    text = serialize_a2c(original)
    again = parse_a2c(text + "# trailing comment\n")
    assert again.source == source
    assert again == original


def test_escaped_hash_in_source_line():
    complex_ = parse_a2c("meta source issue \\#12  # note\nvertex v\n")
    assert complex_.source == "issue #12"


def test_bare_face_gets_uniform_angles():
    complex_ = parse_a2c("vertex v\nedge a v v\nedge b v v\nface f : a+ b+ a- b-\n")
    assert complex_.face("f").angles == uniform_angles(4)
    assert uniform_angles(5) == (Angle("3/5"),) * 5


def test_decimal_angle_reports_line_and_column():
    text = "vertex v\nedge a v v\nedge b v v\nface f : a+ b+ a- b- angles: 0.5 1/2 1/2 1/2\n"
    with pytest.raises(A2CSyntaxError) as excinfo:
        parse_a2c(text)
    assert excinfo.value.line == 4
    assert excinfo.value.column == 30
    assert "decimal" in excinfo.value.detail


def test_forward_references_resolve():
    text = "face f : a+ b+ a- b-\nedge a v v\nedge b v v\nvertex v\n"
    assert validate(parse_a2c(text)).ok


@pytest.mark.parametrize(
    "text, error",
    [
        ("vertex v\nvertex v\n", DuplicateIdentifierError),
        ("vertex v\nedge a v w\n", UnknownCellError),
        ("vertex v\nedge a v v\nface f : a+ a+ c+\n", UnknownCellError),
        ("vertex v\nedge a v v\nface f : a+ a+ a+ angles: 1/2 1/2 0\n", NonPositiveAngleError),
        ("vertex v\nedge a v v\nface f : a+ a+ a+ angles: 1/2 1/4 1/3\n", AngleSumError),
        ("vertex v\nedge a v v\nface f : a+ a+\n", A2CSyntaxError),
        ("vertex v\nedge a v v\nface f : a+ a+ a+ angles: 1/3 1/3\n", A2CSyntaxError),
        ("polygon p\n", A2CSyntaxError),
    ],
)
def test_parse_errors(text, error):
    with pytest.raises(error):
        parse_a2c(text)


def test_angle_sum_error_lists_every_face():
    text = (
        "vertex v\nedge a v v\n"
        "face f : a+ a+ a+ angles: 1/2 1/4 1/3\n"
        "face g : a+ a+ a+ angles: 1/2 1/2 1/2\n"
    )
    with pytest.raises(AngleSumError) as excinfo:
        parse_a2c(text)
    assert len(excinfo.value.faces) == 2


def test_validate_reports_every_violation():
    """Inconsistent boundary plus a disconnected vertex"""
    complex_ = Complex2(
        vertices=("p", "q", "r"),
        edges=(Edge("e", "p", "q"), Edge("g", "p", "q")),
        faces=(Face("f", (DirectedEdge("e"), DirectedEdge("g"), DirectedEdge("e")), uniform_angles(3)),),
    )
    report = validate(complex_)
    rules = {v.rule for v in report.violations}
    assert not report.ok
    assert "boundary-not-vertex-consistent" in rules
    assert "not-connected" in rules
    with pytest.raises(InvalidComplexError) as excinfo:
        require_valid(complex_)
    assert excinfo.value.report == report


def test_structural_check_ignores_angles(torus):
    bent = torus.with_angles({Corner("f", 0): Angle("1/3")})
    assert not validate(bent).ok
    assert [v.rule for v in validate(bent).violations] == ["angle-sum-violation"]
    assert validate(bent, check_angles=False).ok


def test_counts_and_census(torus):
    assert euler_characteristic(torus) == 0
    assert adjacency_census(torus, "a") == 2
    assert census_profile(torus) == {2: 2}
    assert total_angle(torus) == Angle(2)

    disk = build("polygon:5")
    assert euler_characteristic(disk) == 1
    assert census_profile(disk) == {1: 5}


def test_incidence_helpers(torus):
    assert len(torus.corners_at("v")) == 4
    assert torus.degree("v") == 4
    assert torus.corner_vertex(Corner("f", 2)) == "v"
    assert [str(s) for s in torus.sides_of("b")] == ["f@1", "f@3"]
