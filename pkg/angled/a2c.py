"""
A2C text format: parse and serialize.

Grammar (one declaration per line, '#' starts a comment):
    vertex <id>
    edge <id> <tail-vertex> <head-vertex>
    face <id> : <edge-ref>+ [angles: <angle>+]
    meta disk_diagram true|false
    meta source <free text>     (a backslash escapes # and itself)

edge-ref is <edge-id>+ or <edge-id>-; angle is p or p/q meaning (p/q)*pi.
Decimal angles are rejected. A face without an angles clause gets the
uniform placeholder (n-2)*pi/n at every corner.

Declarations may appear in any order; references are resolved after the
whole document is read.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass

from angled.errors import (
    A2CSyntaxError,
    AngleSumError,
    DuplicateIdentifierError,
    NonPositiveAngleError,
    UnknownCellError,
)
from angled.models import Angle, Complex2, DirectedEdge, Edge, Face, polygon_angle_sum

logger = logging.getLogger(__name__)

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_.]*$")
_DECIMAL = re.compile(r"^[+-]?\d*\.\d*(/\d+)?$")
_ESCAPED = re.compile(r"\\(.)")


@dataclass
class _Token:
    text: str
    column: int


def _tokenize(line: str) -> list[_Token]:
    tokens = []
    for match in re.finditer(r"\S+", line):
        tokens.append(_Token(match.group(0), match.start() + 1))
    return tokens


def _strip_comment(raw: str) -> str:
    """Cut the line at the first unescaped #."""
    escaped = False
    for i, char in enumerate(raw):
        if escaped:
            escaped = False
        elif char == "\\":
            escaped = True
        elif char == "#":
            return raw[:i]
    return raw


def _identifier(token: _Token, line_no: int, what: str) -> str:
    if not _IDENT.match(token.text):
        raise A2CSyntaxError(f"invalid {what} identifier {token.text!r}", line_no, token.column)
    return token.text


def uniform_angles(n: int) -> tuple[Angle, ...]:
    """Equal corners (n-2)*pi/n: the placeholder for bare faces."""
    return tuple(polygon_angle_sum(n) / n for _ in range(n))


def parse_a2c(text: str, source: str = "") -> Complex2:
    """
    Parse an A2C document into a Complex2.

    Failure modes:
    - malformed line / token -> A2CSyntaxError(line, column)
    - duplicate id within a sort -> DuplicateIdentifierError
    - edge or face referencing an undeclared cell -> UnknownCellError
    - angle <= 0 -> NonPositiveAngleError
    - corner angles not summing to (n-2)*pi -> AngleSumError listing every bad face

    Vertex consistency and connectivity are left to core.validate.
    """
    vertices: list[str] = []
    vertex_lines: dict[str, int] = {}
    edges: list[tuple[Edge, int]] = []
    edge_ids: set[str] = set()
    faces: list[tuple[str, list[DirectedEdge], list[Angle] | None, int]] = []
    face_ids: set[str] = set()
    is_disk = False
    meta_source = ""

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        tokens = _tokenize(line)
        if not tokens:
            continue
        keyword = tokens[0]

        if keyword.text == "vertex":
            if len(tokens) != 2:
                raise A2CSyntaxError("expected: vertex <id>", line_no, keyword.column)
            vid = _identifier(tokens[1], line_no, "vertex")
            if vid in vertex_lines:
                raise DuplicateIdentifierError("vertex", vid, line_no)
            vertex_lines[vid] = line_no
            vertices.append(vid)

        elif keyword.text == "edge":
            if len(tokens) != 4:
                raise A2CSyntaxError("expected: edge <id> <tail> <head>", line_no, keyword.column)
            eid = _identifier(tokens[1], line_no, "edge")
            if eid in edge_ids:
                raise DuplicateIdentifierError("edge", eid, line_no)
            edge_ids.add(eid)
            tail = _identifier(tokens[2], line_no, "vertex")
            head = _identifier(tokens[3], line_no, "vertex")
            edges.append((Edge(eid, tail, head), line_no))

        elif keyword.text == "face":
            faces.append(_parse_face(tokens, line_no, face_ids))

        elif keyword.text == "meta":
            if len(tokens) < 3:
                raise A2CSyntaxError("expected: meta <key> <value>", line_no, keyword.column)
            key = tokens[1].text
            if key == "disk_diagram":
                if len(tokens) != 3 or tokens[2].text not in ("true", "false"):
                    raise A2CSyntaxError("disk_diagram must be true or false", line_no, tokens[2].column)
                is_disk = tokens[2].text == "true"
            elif key == "source":
                meta_source = _ESCAPED.sub(r"\1", line[tokens[2].column - 1:].strip())
            else:
                raise A2CSyntaxError(f"unknown meta key {key!r}", line_no, tokens[1].column)

        else:
            raise A2CSyntaxError(f"unknown declaration {keyword.text!r}", line_no, keyword.column)

    # Resolve references
    for edge, line_no in edges:
        for vid in (edge.tail, edge.head):
            if vid not in vertex_lines:
                raise UnknownCellError("vertex", vid, line_no)

    built_faces = []
    bad_sums = []
    for fid, boundary, angles, line_no in faces:
        for directed in boundary:
            if directed.edge not in edge_ids:
                raise UnknownCellError("edge", directed.edge, line_no)
        if angles is None:
            angles = list(uniform_angles(len(boundary)))
        for angle in angles:
            if not angle.is_positive():
                raise NonPositiveAngleError(fid, angle, line_no)
        total = sum(angles, Angle(0))
        expected = polygon_angle_sum(len(boundary))
        if total != expected:
            bad_sums.append(f"face {fid!r} (line {line_no}) sums to {total} pi, expected {expected} pi")
        built_faces.append(Face(fid, tuple(boundary), tuple(angles)))

    if bad_sums:
        raise AngleSumError(bad_sums)

    complex_ = Complex2(
        vertices=tuple(vertices),
        edges=tuple(e for e, _ in edges),
        faces=tuple(built_faces),
        is_disk_diagram=is_disk,
        source=meta_source or source,
    )
    logger.debug(
        "parsed %s: %d vertices, %d edges, %d faces",
        source or "<text>", len(vertices), len(edges), len(built_faces),
    )
    return complex_


def _parse_face(tokens: list[_Token], line_no: int, face_ids: set[str]):
    if len(tokens) < 3 or tokens[2].text != ":":
        column = tokens[2].column if len(tokens) > 2 else tokens[0].column
        raise A2CSyntaxError("expected: face <id> : <edge-ref>+ [angles: <angle>+]", line_no, column)
    fid = _identifier(tokens[1], line_no, "face")
    if fid in face_ids:
        raise DuplicateIdentifierError("face", fid, line_no)
    face_ids.add(fid)

    rest = tokens[3:]
    split = next((i for i, t in enumerate(rest) if t.text == "angles:"), None)
    ref_tokens = rest if split is None else rest[:split]
    angle_tokens = None if split is None else rest[split + 1:]

    if not ref_tokens:
        raise A2CSyntaxError(f"face {fid!r} has an empty boundary", line_no, tokens[2].column)
    boundary = []
    for token in ref_tokens:
        try:
            directed = DirectedEdge.parse(token.text)
        except ValueError as exc:
            raise A2CSyntaxError(str(exc), line_no, token.column) from None
        if not _IDENT.match(directed.edge):
            raise A2CSyntaxError(f"invalid edge reference {token.text!r}", line_no, token.column)
        boundary.append(directed)
    if len(boundary) < 3:
        raise A2CSyntaxError(
            f"face {fid!r} needs at least 3 boundary edges (got {len(boundary)})",
            line_no, ref_tokens[0].column,
        )

    angles = None
    if angle_tokens is not None:
        angles = []
        for token in angle_tokens:
            if _DECIMAL.match(token.text):
                raise A2CSyntaxError(
                    f"decimal angle {token.text!r} not accepted; write p/q", line_no, token.column
                )
            try:
                angles.append(Angle.parse(token.text))
            except ValueError as exc:
                raise A2CSyntaxError(str(exc), line_no, token.column) from None
        if len(angles) != len(boundary):
            raise A2CSyntaxError(
                f"face {fid!r} has {len(boundary)} boundary edges but {len(angles)} angles",
                line_no, rest[split].column,
            )
    return fid, boundary, angles, line_no


def serialize_a2c(complex_: Complex2) -> str:
    """Inverse of parse_a2c; declarations in stored order, one per line."""
    lines = []
    if complex_.source:
        escaped = complex_.source.replace("\\", "\\\\").replace("#", "\\#")
        lines.append(f"meta source {escaped}")
    lines.append(f"meta disk_diagram {'true' if complex_.is_disk_diagram else 'false'}")
    lines.extend(f"vertex {v}" for v in complex_.vertices)
    lines.extend(f"edge {e.id} {e.tail} {e.head}" for e in complex_.edges)
    for face in complex_.faces:
        angles = " ".join(str(a) for a in face.angles)
        lines.append(f"face {face.id} : {face.word} angles: {angles}")
    return "\n".join(lines) + "\n"
