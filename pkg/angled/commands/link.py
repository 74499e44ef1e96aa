"""link FILE --vertex V | --edge E: inspect a link metric graph."""
from __future__ import annotations

import argparse

from angled.dependencies import load_complex, write_report, write_text
from angled.errors import EXIT_OK
from angled.links import build_link, link_of_edge_interior, link_report, link_to_dot


def register(subparsers) -> None:
    parser = subparsers.add_parser("link", help="link of a vertex or of an edge interior")
    parser.add_argument("file", help="A2C file or build:<spec>")
    target = parser.add_mutually_exclusive_group(required=True)
    target.add_argument("--vertex", help="vertex id")
    target.add_argument("--edge", help="edge id (link of an interior point)")
    parser.add_argument("--dot", metavar="PATH", help="write the link as Graphviz DOT")
    parser.add_argument("--json", metavar="PATH", help="write the LinkReport as JSON")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    complex_ = load_complex(args.file)
    link = build_link(complex_, args.vertex) if args.vertex else link_of_edge_interior(complex_, args.edge)
    report = link_report(link)
    print(f"Lk({report.center}): {len(report.nodes)} nodes, {len(report.arcs)} arcs, chi = {report.euler_characteristic}")
    for arc in report.arcs:
        print(f"  {arc.id}: {arc.u} -- {arc.v}  {arc.length} pi")
    if report.girth is None:
        print("girth: none (forest)")
    else:
        print(f"girth: {report.girth} pi via {' '.join(report.girth_witness)}")
    if args.dot:
        write_text(link_to_dot(link), args.dot)
    if args.json:
        write_report(report, args.json)
    return EXIT_OK
