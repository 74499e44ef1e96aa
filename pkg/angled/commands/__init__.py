"""
Subcommand package initialization.
Each module exposes register(subparsers) and sets its handler as the parser default.
"""
from angled.commands import (
    build,
    check,
    collapse,
    curvature,
    homology,
    link,
    presentation,
    solve_angles,
    trace,
    validate,
)

__all__ = [
    "validate",
    "check",
    "curvature",
    "collapse",
    "homology",
    "presentation",
    "trace",
    "solve_angles",
    "build",
    "link",
]
