"""
Parking Command
Lists, counts and checks weak parking functions of a graph.
"""

import argparse
import logging

from commands.components.graph_source import add_graph_arguments, load_graph
from commands.components.result_display import emit, emit_vectors, format_vector
from services.parking import (
    cone_equivalence_check,
    enumerate_weak_parking,
    maximal_weak_parking,
    parking_polytope_gap,
)
from utils.export_helper import export_records

logger = logging.getLogger(__name__)

ACTIONS = ("list", "count", "maximal", "cone-check", "gap")


def add_parser(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("parking", parents=[common], help="weak parking functions")
    parser.add_argument("action", choices=ACTIONS)
    add_graph_arguments(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    g, label = load_graph(args)
    if args.action == "count":
        count = len(enumerate_weak_parking(g))
        emit({"graph": label, "count": count}, str(count), args.json)
        return 0
    if args.action == "cone-check":
        ok = cone_equivalence_check(g)
        emit({"graph": label, "cone_equivalent": ok}, "true" if ok else "false", args.json)
        return 0 if ok else 1

    if args.action == "list":
        vectors = enumerate_weak_parking(g)
    elif args.action == "maximal":
        vectors = maximal_weak_parking(g)
    else:
        vectors = parking_polytope_gap(g)
    emit_vectors(vectors, args.json)
    if args.export:
        export_records([{"graph": label, "f": format_vector(v)} for v in sorted(vectors)], args.export, sheet_name="Parking")
    return 0
