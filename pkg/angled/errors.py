"""
Exception hierarchy.
Design principles:
1. Every failure the toolkit can diagnose is an AngledError subclass
2. Each error carries a human-readable detail and a CLI exit code
3. Validation failures of a complex are data (ValidationReport), not errors;
   operations that need a valid complex raise InvalidComplexError carrying the report
4. The CLI maps AngledError -> exit code + "error: <detail>" on stderr
"""
from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from angled.schemas import ValidationReport

# Exit codes shared with the CLI
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2


class AngledError(Exception):
    """Base error. `detail` is what the CLI prints."""
    exit_code: int = EXIT_INVALID

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


# =========================
# INPUT / FORMAT ERRORS
# =========================

class A2CSyntaxError(AngledError):
    """Malformed A2C document. Line and column are 1-based."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class UnknownCellError(AngledError):
    def __init__(self, kind: str, cell_id: str, line: int | None = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"unknown {kind} {cell_id!r}{where}")
        self.kind = kind
        self.cell_id = cell_id
        self.line = line


class DuplicateIdentifierError(AngledError):
    def __init__(self, kind: str, cell_id: str, line: int | None = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"duplicate {kind} identifier {cell_id!r}{where}")
        self.kind = kind
        self.cell_id = cell_id
        self.line = line


class AngleSumError(AngledError):
    """Collects every face whose corner angles do not sum to (n-2)*pi."""

    def __init__(self, faces: list[str]):
        super().__init__("angle-sum violation: " + "; ".join(faces))
        self.faces = faces


class NonPositiveAngleError(AngledError):
    def __init__(self, face_id: str, value: Any, line: int | None = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"face {face_id!r} has non-positive angle {value}{where}")
        self.face_id = face_id


class InvalidComplexError(AngledError):
    """Raised by operations that require validate(X).ok."""

    def __init__(self, report: "ValidationReport"):
        first = report.violations[0] if report.violations else None
        summary = f"{first.rule}: {first.message}" if first else "invalid complex"
        extra = len(report.violations) - 1
        if extra > 0:
            summary += f" (+{extra} more)"
        super().__init__(summary)
        self.report = report


class BuilderSpecError(AngledError):
    pass


# =========================
# PROCEDURE ERRORS
# =========================

class NotADiskDiagramError(AngledError):
    def __init__(self):
        super().__init__(
            "Gauss-Bonnet check needs a planar simply connected complex; "
            "set 'meta disk_diagram true' to assert it"
        )


class StaleFreeFaceError(AngledError):
    def __init__(self, free_face: Any):
        super().__init__(f"{free_face} is not a free face of this complex")
        self.free_face = free_face


class RealizationError(AngledError):
    """No positive closure for a face polygon (or the polygon is not simple)."""

    def __init__(self, face_id: str, reason: str, directions: list[float] | None = None):
        data = ""
        if directions is not None:
            data = " directions=[" + ", ".join(f"{d:.6f}" for d in directions) + "]"
        super().__init__(f"cannot realize face {face_id!r}: {reason}{data}")
        self.face_id = face_id
        self.directions = directions


class PointNotInLinkError(AngledError):
    pass


class InvalidStartError(AngledError):
    pass


class MalformedPathError(AngledError):
    pass


class FreeEdgeHit(AngledError):
    """
    Signal: a straight continuation was requested across an edge with a single
    adjacency. The tracer catches it and terminates.
    """
    exit_code = EXIT_FAILED

    def __init__(self, edge_id: str):
        super().__init__(f"edge {edge_id!r} has a single adjacency; no straight continuation")
        self.edge_id = edge_id


# =========================
# SOLVER
# =========================

class SeparationLimitError(AngledError):
    """The separation loop hit SOLVER_MAX_ROUNDS while still finding violated cycles."""

    def __init__(self, rounds: int):
        super().__init__(f"angle search still finds violated link cycles after {rounds} rounds")
        self.rounds = rounds
