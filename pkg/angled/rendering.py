"""
SVG drawing of a traced path, unfolded into the plane.

Each segment's face polygon is moved rigidly so that the segment continues
the previous one in a straight line; the result is the development of the
faces the path passes through.
"""
from __future__ import annotations

import logging
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # before pyplot
import matplotlib.pyplot as plt  # noqa: E402

from angled.geometry import SegmentalPath, Termination, Tracer  # noqa: E402

logger = logging.getLogger(__name__)

Vec = tuple[float, float]


def _rigid(origin_local: Vec, heading_local: float, origin_world: Vec, heading_world: float):
    turn = heading_world - heading_local
    c, s = math.cos(turn), math.sin(turn)

    def move(p: Vec) -> Vec:
        x, y = p[0] - origin_local[0], p[1] - origin_local[1]
        return (origin_world[0] + c * x - s * y, origin_world[1] + s * x + c * y)

    return move


def unfold(tracer: Tracer, path: SegmentalPath) -> list[tuple[str, list[Vec], Vec, Vec]]:
    """(face, placed polygon, world start, world end) per segment."""
    placed = []
    position = (path.start.x, path.start.y)
    heading = math.atan2(path.direction[1], path.direction[0])
    for segment in path.segments:
        dx, dy = segment.end[0] - segment.start[0], segment.end[1] - segment.start[1]
        length = math.hypot(dx, dy)
        local_heading = math.atan2(dy, dx) if length > 0 else heading
        move = _rigid(segment.start, local_heading, position, heading)
        polygon = [move(p) for p in tracer.realization(segment.face).points]
        end = move(segment.end)
        placed.append((segment.face, polygon, position, end))
        position = end
    return placed


def render_trace_svg(tracer: Tracer, path: SegmentalPath, termination: Termination, out_path: str | Path) -> Path:
    """Write the unfolded path as a deterministic SVG (no timestamp, fixed hash salt)."""
    out_path = Path(out_path)
    plt.rcParams["svg.hashsalt"] = "angled"
    fig, ax = plt.subplots(figsize=(6, 6))
    try:
        for face, polygon, start, end in unfold(tracer, path):
            xs = [p[0] for p in polygon] + [polygon[0][0]]
            ys = [p[1] for p in polygon] + [polygon[0][1]]
            ax.fill(xs, ys, facecolor="#e8eef7", edgecolor="#4a6fa5", linewidth=0.8)
            cx, cy = sum(xs[:-1]) / len(polygon), sum(ys[:-1]) / len(polygon)
            ax.annotate(face, (cx, cy), fontsize=7, color="#4a6fa5", ha="center")
            ax.plot([start[0], end[0]], [start[1], end[1]], color="#c0392b", linewidth=1.6)
        ax.plot([path.start.x], [path.start.y], marker="o", color="#c0392b")
        ax.set_title(f"{termination.reason.value} at {termination.location}", fontsize=9)
        ax.set_aspect("equal")
        ax.axis("off")
        fig.savefig(out_path, format="svg", bbox_inches="tight", metadata={"Date": None})
    finally:
        plt.close(fig)
    logger.info("wrote %s (%d segments)", out_path, len(path.segments))
    return out_path
