"""
Polytope Service
The score vector polytope P_G = {a >= 0 : a(S) <= kappa_S for all S}: its vertices
a^J from linearly ordered vertex subsets J, vertex counts against the factorial
bounds, and three-way verification of the vertex set.
"""

import itertools
import logging
import math
from typing import Dict, Sequence, Set, Tuple

from services.counting import enumerate_basis
from services.errors import BudgetExceededError, InvalidGraphError
from services.multigraph import MultiGraph, kappa, mask_of
from services.oracle import bucket_by_score
from services.settings import get_settings

logger = logging.getLogger(__name__)

LatticePoint = Tuple[int, ...]


def vertex_from_ordered_subset(g: MultiGraph, j: Sequence[int]) -> LatticePoint:
    """
    a^J(v_i) = kappa({v_1..v_i}) - kappa({v_1..v_(i-1)}): the edges from v_i into
    V - {v_1, ..., v_(i-1)}. Vertices outside J get 0.
    """
    if len(set(j)) != len(j) or any(not 0 <= v < g.n for v in j):
        raise InvalidGraphError(f"{list(j)} is not an ordered subset of the {g.n} vertices")
    a = [0] * g.n
    prefix = 0
    for v in j:
        grown = prefix | (1 << v)
        a[v] = kappa(g, grown) - kappa(g, prefix)
        prefix = grown
    return tuple(a)


def vertex_from_ordering(g: MultiGraph, pi: Sequence[int], m: int) -> LatticePoint:
    """a^(pi, m): the ordered subset made of the first m vertices of the ordering pi."""
    if sorted(pi) != list(range(g.n)) or not 0 <= m <= g.n:
        raise InvalidGraphError(f"Bad ordering {list(pi)} or prefix length {m}")
    return vertex_from_ordered_subset(g, pi[:m])


def all_vertices(g: MultiGraph) -> Set[LatticePoint]:
    budget = get_settings().max_polytope_vertices
    if g.n > budget:
        logger.error(f"Ordered subset enumeration needs n <= {budget}, got {g.n}")
        raise BudgetExceededError(f"Ordered subset enumeration needs n <= {budget}, got {g.n}")
    return {
        vertex_from_ordered_subset(g, j)
        for size in range(g.n + 1)
        for j in itertools.permutations(range(g.n), size)
    }


def lattice_points(g: MultiGraph) -> Set[LatticePoint]:
    """Lattice points of P_G: the external basis exponents."""
    return set(enumerate_basis(g, 1))


def satisfies_inequalities(g: MultiGraph, a: Sequence[int]) -> bool:
    return all(
        sum(a[v] for v in range(g.n) if s >> v & 1) <= kappa(g, s) for s in range(1 << g.n)
    ) and all(x >= 0 for x in a)


def vertex_bound(g: MultiGraph) -> int:
    """sum_{i=1..n} n!/i! for simple graphs with n >= 1, sum_{i=0..n} n!/i! otherwise."""
    n = g.n
    start = 1 if g.is_simple and n >= 1 else 0
    return sum(math.factorial(n) // math.factorial(i) for i in range(start, n + 1))


def vertex_count_bounds(g: MultiGraph) -> Tuple[int, int, bool]:
    count = len(all_vertices(g))
    bound = vertex_bound(g)
    return count, bound, count == bound


def _midpoints(points: Set[LatticePoint]) -> Set[LatticePoint]:
    """Points that are the average of two distinct points of the set."""
    found = set()
    for a in points:
        for b in points:
            if b != a and tuple(2 * x - y for x, y in zip(a, b)) in points:
                found.add(a)
                break
    return found


def vertex_characterizations(g: MultiGraph) -> Dict[str, Set[LatticePoint]]:
    """The vertex set as computed three ways, plus the lattice points it is drawn from."""
    points = lattice_points(g)
    buckets = bucket_by_score(g)
    return {
        "ordered_subsets": all_vertices(g),
        "unique_orientation": {a for a in points if buckets.get(a, (0,))[0] == 1},
        "not_midpoint": points - _midpoints(points),
        "lattice": points,
        "scores": set(buckets),
    }


def verify_vertex_characterizations(g: MultiGraph) -> bool:
    """
    a^J over all J, lattice points realized by exactly one partial orientation, and
    lattice points that are not midpoints must all agree; the lattice points must be
    exactly the score vectors.
    """
    sets = vertex_characterizations(g)
    if sets["lattice"] != sets["scores"]:
        logger.info(f"Lattice points and score vectors differ for {g}")
        return False
    vertices = sets["ordered_subsets"]
    for name in ("unique_orientation", "not_midpoint"):
        if sets[name] != vertices:
            logger.info(f"Vertex set by {name} differs for {g}: {sorted(sets[name] ^ vertices)}")
            return False
    return True
