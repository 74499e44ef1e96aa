"""
Command-line entry point.
Responsibilities:
1. Build the argument parser with global options (--seed, --verbose)
2. Register every subcommand module from angled.commands
3. Install the stderr log handler
4. Map AngledError to "error: <detail>" plus its exit code; anything else to exit 2
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from angled import __version__
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
from angled.config import get_settings
from angled.errors import EXIT_INVALID, AngledError

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(levelname)-5.5s [%(name)s] %(message)s"

_handler: Optional[logging.Handler] = None


# ===============================
# PARSER
# ==============================

def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(
        prog="angled",
        description="Exact toolkit for angled combinatorial 2-complexes",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--seed", type=int, default=settings.DEFAULT_SEED, help="seed for sampled procedures")
    parser.add_argument("--verbose", action="store_true", help="debug logging on stderr")

    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for module in (validate, check, curvature, collapse, homology, presentation, trace, solve_angles, build, link):
        module.register(subparsers)
    return parser


# ===============================
# LOGGING
# ==============================

def configure_logging(verbose: bool = False) -> None:
    """Install (or replace) the single stderr handler on the package logger."""
    global _handler
    package = logging.getLogger("angled")
    if _handler is not None:
        package.removeHandler(_handler)
    _handler = logging.StreamHandler(sys.stderr)
    _handler.setFormatter(logging.Formatter(LOG_FORMAT))
    package.addHandler(_handler)
    level = logging.DEBUG if verbose else get_settings().log_level
    package.setLevel(level)
    _handler.setLevel(level)


# ===============================
# RUN
# ==============================

def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID

    configure_logging(args.verbose)
    logger.info("angled %s: %s", args.command, " ".join(argv if argv is not None else sys.argv[1:]))
    try:
        code = args.handler(args)
    except AngledError as exc:
        print(f"error: {exc.detail}", file=sys.stderr)
        return exc.exit_code
    except Exception:
        logger.error("unexpected failure in %s", args.command, exc_info=True)
        return EXIT_INVALID
    logger.info("angled %s finished with exit code %d", args.command, code)
    return code


def main() -> None:
    sys.exit(run())
