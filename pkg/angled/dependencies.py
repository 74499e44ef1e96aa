"""
Shared loaders and writers injected into every subcommand.
Design principles:
1. Loaders are stateless and raise AngledError subclasses (the CLI maps them to exit codes)
2. An input is either an A2C file path or a builder spec prefixed with `build:`
3. Writers never print; they return the path they wrote
"""
from __future__ import annotations

import logging
from pathlib import Path

from angled.a2c import parse_a2c, serialize_a2c
from angled.builders import build
from angled.errors import AngledError
from angled.models import Complex2
from angled.schemas import Report

logger = logging.getLogger(__name__)

BUILD_PREFIX = "build:"


# =======================================
# INPUT
# =======================================

def load_complex(path: str) -> Complex2:
    """
    Read a complex from an A2C file, or build one from `build:<spec>`.

    Failure modes:
    - unreadable file -> AngledError (exit 2)
    - syntax / reference errors -> A2CSyntaxError, UnknownCellError, ...
    - bad builder spec -> BuilderSpecError
    """
    if path.startswith(BUILD_PREFIX):
        complex_ = build(path[len(BUILD_PREFIX):])
        logger.info("built %s", complex_.source)
        return complex_
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise AngledError(f"cannot read {path}: {exc.strerror}") from None
    complex_ = parse_a2c(text, source=path)
    logger.info(
        "loaded %s: %d vertices, %d edges, %d faces",
        path, len(complex_.vertices), len(complex_.edges), len(complex_.faces),
    )
    return complex_


# =======================================
# OUTPUT
# =======================================

def _write(path: str | Path, text: str) -> Path:
    path = Path(path)
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise AngledError(f"cannot write {path}: {exc.strerror}") from None
    logger.info("wrote %s", path)
    return path


def write_complex(complex_: Complex2, path: str | Path) -> Path:
    return _write(path, serialize_a2c(complex_))


def write_report(report: Report, path: str | Path) -> Path:
    return _write(path, report.to_json() + "\n")


def write_text(text: str, path: str | Path) -> Path:
    return _write(path, text)
