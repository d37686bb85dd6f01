"""
Polytope Command
Vertices of the score vector polytope, their count against the factorial bound, and
the vertex characterization check.
"""

import argparse
import logging

from commands.components.graph_source import add_graph_arguments, load_graph
from commands.components.result_display import emit, emit_vectors, format_vector
from services.polytope import all_vertices, verify_vertex_characterizations, vertex_count_bounds
from utils.export_helper import export_records

logger = logging.getLogger(__name__)

ACTIONS = ("vertices", "count", "verify")


def add_parser(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("polytope", parents=[common], help="score vector polytope")
    parser.add_argument("action", choices=ACTIONS)
    add_graph_arguments(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    g, label = load_graph(args)
    if args.action == "vertices":
        vertices = all_vertices(g)
        emit_vectors(vertices, args.json)
        if args.export:
            export_records([{"graph": label, "vertex": format_vector(v)} for v in sorted(vertices)], args.export, sheet_name="Vertices")
        return 0
    if args.action == "count":
        count, bound, tight = vertex_count_bounds(g)
        emit(
            {"graph": label, "count": count, "bound": bound, "tight": tight},
            f"{count} vertices, bound {bound}, {'tight' if tight else 'not tight'}",
            args.json,
        )
        return 0
    ok = verify_vertex_characterizations(g)
    emit({"graph": label, "verified": ok}, "true" if ok else "false", args.json)
    return 0 if ok else 1
