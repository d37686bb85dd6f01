"""
Multigraph Module
Undirected multigraphs with loops: the subset degree kappa, deletion, loopy
contraction, delooped cones, canonical forms, named families and spanning
structure counts.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import sympy

from services.errors import BudgetExceededError, InvalidGraphError
from services.settings import get_settings
from utils.cache_helper import get_table

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]
CanonicalForm = bytes

FAMILIES = ("complete", "loops", "cycle", "path", "star", "empty", "petersen")


@dataclass(frozen=True)
class MultiGraph:
    """
    Vertices are 0..n-1. Each edge is an unordered pair stored as (min, max);
    u == v is a loop and repetition is multiplicity. Instances are immutable.
    """

    n: int
    edges: Tuple[Edge, ...] = field(default=())

    def __post_init__(self):
        if self.n < 0:
            raise InvalidGraphError(f"Vertex count must be nonnegative, got {self.n}")
        normalized = []
        for edge in self.edges:
            u, v = edge
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidGraphError(f"Edge {edge} has an endpoint outside [0, {self.n})")
            normalized.append((u, v) if u <= v else (v, u))
        object.__setattr__(self, "edges", tuple(normalized))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "MultiGraph":
        """Build from any iterable of endpoint pairs, such as parsed lists."""
        return cls(n, tuple((int(u), int(v)) for u, v in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def all_vertices(self) -> int:
        """Bitmask of the full vertex set."""
        return (1 << self.n) - 1

    @cached_property
    def loop_counts(self) -> Tuple[int, ...]:
        counts = [0] * self.n
        for u, v in self.edges:
            if u == v:
                counts[u] += 1
        return tuple(counts)

    @cached_property
    def nonloop_degrees(self) -> Tuple[int, ...]:
        counts = [0] * self.n
        for u, v in self.edges:
            if u != v:
                counts[u] += 1
                counts[v] += 1
        return tuple(counts)

    @cached_property
    def multiplicity_matrix(self) -> Tuple[Tuple[int, ...], ...]:
        """Symmetric matrix of edge multiplicities with loop counts on the diagonal."""
        mat = [[0] * self.n for _ in range(self.n)]
        for u, v in self.edges:
            mat[u][v] += 1
            if u != v:
                mat[v][u] += 1
        return tuple(tuple(row) for row in mat)

    @cached_property
    def kappa_table(self) -> np.ndarray:
        """kappa for every vertex bitmask, indexed by the mask."""
        limit = get_settings().max_subset_vertices
        if self.n > limit:
            logger.error(f"Subset table for n={self.n} exceeds max_subset_vertices={limit}")
            raise BudgetExceededError(f"Subset table needs 2^{self.n} entries; max_subset_vertices is {limit}")
        masks = np.arange(1 << self.n, dtype=np.int64)
        table = np.zeros(1 << self.n, dtype=np.int64)
        for u, v in self.edges:
            table += (masks & ((1 << u) | (1 << v))) != 0
        return table

    def loops(self, v: int) -> int:
        return self.loop_counts[v]

    def degree_d(self, v: int) -> int:
        """d(v): number of non-loop edges at v."""
        return self.nonloop_degrees[v]

    def multiplicity(self, u: int, v: int) -> int:
        return self.multiplicity_matrix[u][v]

    @property
    def loop_total(self) -> int:
        return sum(self.loop_counts)

    @property
    def is_loopless(self) -> bool:
        return self.loop_total == 0

    @property
    def is_simple(self) -> bool:
        return self.is_loopless and len(set(self.edges)) == len(self.edges)

    def nonloop_edge_indices(self) -> List[int]:
        return [i for i, (u, v) in enumerate(self.edges) if u != v]

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph

    def components(self) -> List[List[int]]:
        """Vertex lists of the connected components, each sorted, ordered by smallest vertex."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from((u, v) for u, v in self.edges if u != v)
        return sorted((sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0])

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def induced(self, vertices: Sequence[int]) -> "MultiGraph":
        """Subgraph induced on the given vertices, relabeled 0..k-1 in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = tuple(
            (index[u], index[v]) for u, v in self.edges if u in index and v in index
        )
        return MultiGraph(len(vertices), edges)

    def __str__(self) -> str:
        return f"MultiGraph(n={self.n}, edges={list(self.edges)})"


def kappa(g: MultiGraph, s: int) -> int:
    """
    Degree of a vertex subset: the number of edges with an endpoint in s.
    Loops count once. kappa(g, 0) == 0.
    """
    if s < 0 or s > g.all_vertices:
        raise InvalidGraphError(f"Subset mask {s} is outside the vertex range of {g}")
    return int(g.kappa_table[s])


def kappa_vertex(g: MultiGraph, v: int) -> int:
    """kappa of a single vertex, without building the subset table."""
    if not 0 <= v < g.n:
        raise InvalidGraphError(f"Vertex {v} is outside [0, {g.n})")
    return g.degree_d(v) + g.loops(v)


def delta_g(g: MultiGraph) -> Optional[int]:
    """Smallest kappa_v over the vertices; None for the empty graph."""
    if g.n == 0:
        return None
    return min(kappa_vertex(g, v) for v in range(g.n))


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def delete_edge(g: MultiGraph, index: int) -> MultiGraph:
    """Remove the edge at position index; the vertex set is unchanged."""
    if not 0 <= index < g.m:
        raise InvalidGraphError(f"Edge index {index} out of range for {g.m} edges")
    return MultiGraph(g.n, g.edges[:index] + g.edges[index + 1:])


def _merge_map(n: int, keep: int, drop: int) -> List[int]:
    return [keep if x == drop else (x - 1 if x > drop else x) for x in range(n)]


def loopy_contract(g: MultiGraph, index: int) -> MultiGraph:
    """
    Identify the endpoints of a non-loop edge without deleting anything: the edge
    and its parallel copies become loops at the merged vertex. The merged vertex
    takes the smaller endpoint's label; edge positions are preserved.
    """
    if not 0 <= index < g.m:
        raise InvalidGraphError(f"Edge index {index} out of range for {g.m} edges")
    u, v = g.edges[index]
    if u == v:
        raise InvalidGraphError(f"Edge {index} is a loop and cannot be contracted")
    relabel = _merge_map(g.n, u, v)
    return MultiGraph(g.n - 1, tuple((relabel[a], relabel[b]) for a, b in g.edges))


def ordinary_contract(g: MultiGraph, index: int) -> MultiGraph:
    """Tutte contraction: merge the endpoints and drop every loop that results."""
    looped = loopy_contract(g, index)
    return MultiGraph(looped.n, tuple((a, b) for a, b in looped.edges if a != b))


def delooped_cone(g: MultiGraph) -> MultiGraph:
    """
    Add an apex (vertex n) joined once to every vertex and replace each loop at v
    by one more edge v-apex. The result is loopless with |E| + n edges.
    """
    apex = g.n
    kept = [(u, v) for u, v in g.edges if u != v]
    spokes = [(v, apex) for v in range(g.n)]
    delooped = [(u, apex) for u, v in g.edges if u == v]
    return MultiGraph(g.n + 1, tuple(kept + spokes + delooped))


def disjoint_union(g1: MultiGraph, g2: MultiGraph) -> MultiGraph:
    shifted = tuple((u + g1.n, v + g1.n) for u, v in g2.edges)
    return MultiGraph(g1.n + g2.n, g1.edges + shifted)


def permute(g: MultiGraph, sigma: Sequence[int]) -> MultiGraph:
    """Relabel vertex v as sigma[v]."""
    if sorted(sigma) != list(range(g.n)):
        raise InvalidGraphError(f"{list(sigma)} is not a permutation of 0..{g.n - 1}")
    return MultiGraph(g.n, tuple((sigma[u], sigma[v]) for u, v in g.edges))


# =====================================================
# CANONICAL FORMS
# =====================================================

def _refine_colors(g: MultiGraph) -> List[int]:
    """Colour refinement seeded with (loops, d(v)); colour ids come from sorted signatures."""
    mat = g.multiplicity_matrix
    signatures = [(g.loops(v), g.degree_d(v)) for v in range(g.n)]
    palette = sorted(set(signatures))
    colors = [palette.index(s) for s in signatures]
    while True:
        signatures = [
            (colors[v], tuple(sorted((colors[w], mat[v][w]) for w in range(g.n) if w != v and mat[v][w])))
            for v in range(g.n)
        ]
        palette = sorted(set(signatures))
        refined = [palette.index(s) for s in signatures]
        if len(palette) == len(set(colors)):
            return refined
        colors = refined


def _twin_classes(g: MultiGraph) -> List[int]:
    """Representative per vertex of its twin class (swapping two twins is an automorphism)."""
    mat = g.multiplicity_matrix
    rep = list(range(g.n))
    for u in range(g.n):
        if rep[u] != u:
            continue
        for v in range(u + 1, g.n):
            if rep[v] != v or mat[u][u] != mat[v][v]:
                continue
            if all(mat[u][w] == mat[v][w] for w in range(g.n) if w != u and w != v):
                rep[v] = u
    return rep


def canonical_order(g: MultiGraph) -> List[int]:
    """
    Vertex order whose step keys (colour, loops, multiplicities to earlier vertices)
    form the lexicographically smallest sequence. Backtracking with prefix pruning,
    branching on one vertex per twin class.
    """
    budget = get_settings().max_canonical_vertices
    if g.n > budget:
        raise BudgetExceededError(f"Canonical form needs n <= {budget}, got n={g.n}")
    mat = g.multiplicity_matrix
    colors = _refine_colors(g)
    twins = _twin_classes(g)
    best: Dict[str, Optional[list]] = {"keys": None, "order": None}

    def step_key(c: int, placed: List[int]) -> tuple:
        return (colors[c], mat[c][c]) + tuple(mat[c][p] for p in placed)

    def search(placed: List[int], keys: List[tuple], remaining: List[int]) -> None:
        if best["keys"] is not None and keys > best["keys"][:len(keys)]:
            return
        if not remaining:
            if best["keys"] is None or keys < best["keys"]:
                best["keys"], best["order"] = list(keys), list(placed)
            return
        tried_twins = set()
        for key, c in sorted((step_key(c, placed), c) for c in remaining):
            if twins[c] in tried_twins:
                continue
            tried_twins.add(twins[c])
            search(placed + [c], keys + [key], [v for v in remaining if v != c])

    search([], [], list(range(g.n)))
    return best["order"]


def canonical_form(g: MultiGraph) -> CanonicalForm:
    """Byte string equal for two multigraphs exactly when they are isomorphic."""
    order = canonical_order(g)
    mat = g.multiplicity_matrix
    entries = [str(g.n)]
    for i, u in enumerate(order):
        entries.append(".".join(str(mat[u][order[j]]) for j in range(i + 1)))
    return "|".join(entries).encode("ascii")


# =====================================================
# SPANNING STRUCTURES
# =====================================================

def spanning_tree_count(g: MultiGraph) -> int:
    """Matrix-Tree theorem on the reduced Laplacian; loops ignored, multiplicities kept."""
    if g.n == 0:
        return 0
    if g.n == 1:
        return 1
    laplacian = sympy.zeros(g.n, g.n)
    for u, v in g.edges:
        if u == v:
            continue
        laplacian[u, u] += 1
        laplacian[v, v] += 1
        laplacian[u, v] -= 1
        laplacian[v, u] -= 1
    return int(laplacian[1:, 1:].det(method="bareiss"))


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _forest_poly(g: MultiGraph) -> Tuple[int, ...]:
    """Coefficient k counts spanning forests with exactly k components."""
    g = MultiGraph(g.n, tuple(e for e in g.edges if e[0] != e[1]))
    if g.n == 0:
        return (1,)
    if g.m == 0:
        return (0,) * g.n + (1,)
    parts = g.components()
    if len(parts) > 1:
        result: Tuple[int, ...] = (1,)
        for part in parts:
            result = _poly_mul(result, _forest_poly(g.induced(part)))
        return result
    memo = get_table("forests")
    key = canonical_form(g) if g.n <= get_settings().max_canonical_vertices else None
    if key is not None:
        cached = memo.get(key)
        if cached is not None:
            return cached
    without = _forest_poly(delete_edge(g, 0))
    merged = _forest_poly(ordinary_contract(g, 0)) + (0,)
    result = tuple(x + y for x, y in zip(without, merged))
    if key is not None:
        memo.set(key, result)
    return result


def spanning_forest_counts(g: MultiGraph) -> List[int]:
    """
    Number of spanning forests by component count (index k = k components),
    by deletion-contraction over non-loop edges.
    """
    budget = get_settings().max_forest_edges
    nonloop = len(g.nonloop_edge_indices())
    if nonloop > budget:
        raise BudgetExceededError(f"Forest recursion needs <= {budget} non-loop edges, got {nonloop}")
    return list(_forest_poly(g))


def rooted_spanning_forest_count(g: MultiGraph) -> int:
    """Spanning forests with one marked vertex per component (trees of the delooped cone of the loopless part)."""
    loopless = MultiGraph(g.n, tuple(e for e in g.edges if e[0] != e[1]))
    return spanning_tree_count(delooped_cone(loopless))


def renyi_two_component_forests(n: int) -> int:
    """Closed form n^(n-4) (n-1)(n+6)/2 for two-component spanning forests of K_n, n >= 4."""
    if n < 4:
        raise InvalidGraphError("The closed form applies for n >= 4")
    return n ** (n - 4) * (n - 1) * (n + 6) // 2


# =====================================================
# FAMILIES
# =====================================================

def generate_family(name: str, n: int = 0) -> MultiGraph:
    """Named graph families; petersen ignores n."""
    if name == "complete":
        return MultiGraph(n, tuple(itertools.combinations(range(n), 2)))
    if name == "loops":
        return MultiGraph(1, ((0, 0),) * n)
    if name == "cycle":
        if n < 1:
            raise InvalidGraphError("cycle needs n >= 1")
        return MultiGraph(n, tuple((i, (i + 1) % n) for i in range(n)))
    if name == "path":
        return MultiGraph(n, tuple((i, i + 1) for i in range(n - 1)))
    if name == "star":
        return MultiGraph(n, tuple((0, i) for i in range(1, n)))
    if name == "empty":
        return MultiGraph(n, ())
    if name == "petersen":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        spokes = [(i, 5 + i) for i in range(5)]
        return MultiGraph(10, tuple(outer + inner + spokes))
    raise InvalidGraphError(f"Unknown family {name!r}; expected one of {', '.join(FAMILIES)}")
