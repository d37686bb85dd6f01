"""
Graph source options shared by the sub-commands: --graph FILE or --family NAME:N.
"""

import argparse
import logging
from typing import Tuple

from services.graph_io import parse_family_spec, read_graph_file
from services.multigraph import MultiGraph

logger = logging.getLogger(__name__)


def add_graph_arguments(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--graph", metavar="FILE", help="graph file ('p n m' header, 1-indexed 'e u v' lines)")
    source.add_argument("--family", metavar="NAME:N", help="complete:N, loops:N, cycle:N, path:N, star:N, empty:N or petersen")


def load_graph(args: argparse.Namespace) -> Tuple[MultiGraph, str]:
    """The graph named on the command line and the label used for it in output."""
    if args.graph:
        g = read_graph_file(args.graph)
        label = args.graph
    else:
        g = parse_family_spec(args.family)
        label = args.family
    logger.debug(f"Loaded {label}: n={g.n}, m={g.m}")
    return g, label
