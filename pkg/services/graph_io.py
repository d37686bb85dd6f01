"""
Graph I/O
Reads and writes the plain-text graph format and parses family specs.

    # comment
    p <n> <m>
    e <u> <v>      (1-indexed; u = v is a loop; repeat a line for multiplicity)
"""

import logging
from pathlib import Path
from typing import List, Tuple, Union

from services.errors import GraphParseError, InvalidGraphError
from services.multigraph import FAMILIES, MultiGraph, generate_family

logger = logging.getLogger(__name__)


def parse_graph_text(text: str, source: str = "<text>") -> MultiGraph:
    header = None
    edges: List[Tuple[int, int]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        where = f"{source}:{number}"
        if fields[0] == "p":
            if header is not None:
                raise GraphParseError(f"{where}: duplicate header")
            if len(fields) != 3:
                raise GraphParseError(f"{where}: header must be 'p <n> <m>'")
            header = (_parse_int(fields[1], where), _parse_int(fields[2], where))
        elif fields[0] == "e":
            if header is None:
                raise GraphParseError(f"{where}: edge line before the 'p' header")
            if len(fields) != 3:
                raise GraphParseError(f"{where}: edge line must be 'e <u> <v>'")
            u, v = _parse_int(fields[1], where), _parse_int(fields[2], where)
            if not (1 <= u <= header[0] and 1 <= v <= header[0]):
                raise GraphParseError(f"{where}: endpoint outside 1..{header[0]}")
            edges.append((u - 1, v - 1))
        else:
            raise GraphParseError(f"{where}: unknown line type {fields[0]!r}")
    if header is None:
        raise GraphParseError(f"{source}: missing 'p <n> <m>' header")
    n, m = header
    if m != len(edges):
        raise GraphParseError(f"{source}: header declares {m} edges, found {len(edges)}")
    return MultiGraph.from_edges(n, edges)


def _parse_int(token: str, where: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise GraphParseError(f"{where}: {token!r} is not an integer")
    if value < 0:
        raise GraphParseError(f"{where}: {token!r} is negative")
    return value


def read_graph_file(path: Union[str, Path]) -> MultiGraph:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        logger.error(f"Cannot read graph file {path}: {e}")
        raise GraphParseError(f"Cannot read graph file {path}: {e}")
    return parse_graph_text(text, source=str(path))


def format_graph(g: MultiGraph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def write_graph_file(g: MultiGraph, path: Union[str, Path]) -> None:
    Path(path).write_text(format_graph(g), encoding="utf-8")


def parse_family_spec(spec: str) -> MultiGraph:
    """'complete:5', 'loops:3', 'petersen' and so on."""
    name, _, count = spec.partition(":")
    if name not in FAMILIES:
        raise GraphParseError(f"Unknown family {name!r}; expected one of {', '.join(FAMILIES)}")
    if name != "petersen" and not count:
        raise GraphParseError(f"Family {name!r} needs a size, e.g. {name}:4")
    n = _parse_int(count, spec) if count else 0
    try:
        return generate_family(name, n)
    except InvalidGraphError as e:
        raise GraphParseError(str(e))
