"""
Corpus Service
Graph collections the verification suites and tests run over: seeded random
multigraphs with loops, all small multigraphs up to isomorphism, the four two-vertex
example graphs and the named families.
"""

import itertools
import logging
import random
from typing import Dict, List, Optional

from services.multigraph import MultiGraph, canonical_form, generate_family
from services.settings import get_settings

logger = logging.getLogger(__name__)


def random_multigraph_corpus(
    count: int = 50,
    max_n: int = 6,
    max_edges: int = 10,
    seed: Optional[int] = None,
) -> List[MultiGraph]:
    """
    Seeded random multigraphs with 1..max_n vertices and 0..max_edges edges. Roughly
    one edge in six is a loop; endpoints are uniform, so parallel edges occur.
    """
    seed = get_settings().seed if seed is None else seed
    rng = random.Random(seed)
    graphs = []
    for _ in range(count):
        n = rng.randint(1, max_n)
        edges = []
        for _ in range(rng.randint(0, max_edges)):
            u = rng.randrange(n)
            v = u if n == 1 or rng.random() < 1 / 6 else rng.randrange(n)
            edges.append((u, v))
        graphs.append(MultiGraph.from_edges(n, edges))
    logger.debug(f"Random corpus: {count} graphs, seed {seed}")
    return graphs


def small_multigraphs(max_n: int, max_edges: int) -> List[MultiGraph]:
    """Every multigraph with loops on 1..max_n vertices and at most max_edges edges, one per isomorphism class."""
    found: Dict[bytes, MultiGraph] = {}
    for n in range(1, max_n + 1):
        slots = [(u, v) for u in range(n) for v in range(u, n)]
        for m in range(max_edges + 1):
            for edges in itertools.combinations_with_replacement(slots, m):
                g = MultiGraph(n, edges)
                found.setdefault(canonical_form(g), g)
    return list(found.values())


def example_graphs() -> Dict[str, MultiGraph]:
    """The four two-vertex graphs: edge, loop beside an isolated vertex, edge plus loop, double edge."""
    return {
        "G1": MultiGraph(2, ((0, 1),)),
        "G2": MultiGraph(2, ((1, 1),)),
        "G3": MultiGraph(2, ((0, 1), (1, 1))),
        "G4": MultiGraph(2, ((0, 1), (0, 1))),
    }


def family_corpus(max_complete: int = 6, max_loops: int = 5) -> List[MultiGraph]:
    graphs = [generate_family("complete", n) for n in range(1, max_complete + 1)]
    graphs += [generate_family("loops", n) for n in range(1, max_loops + 1)]
    graphs += [generate_family("cycle", n) for n in range(1, 6)]
    graphs += [generate_family("path", n) for n in range(2, 6)]
    return graphs


def full_corpus(seed: Optional[int] = None) -> List[MultiGraph]:
    """Random corpus plus families."""
    return random_multigraph_corpus(seed=seed) + family_corpus()


def oracle_corpus(seed: Optional[int] = None, count: int = 25) -> List[MultiGraph]:
    """Graphs small enough for orientation enumeration: n <= 4, |E| <= 6."""
    graphs = random_multigraph_corpus(count=count, max_n=4, max_edges=6, seed=seed)
    graphs += list(example_graphs().values())
    graphs += [generate_family("complete", n) for n in range(1, 5)]
    graphs += [generate_family("loops", n) for n in range(1, 4)]
    return graphs
