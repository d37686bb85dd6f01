"""
Parking Service
Weak G-parking functions: f >= 0 such that every nonempty S contains a vertex v
with f(v) <= dhat_S(v), the number of edges from v leaving S plus the loops at v.
"""

import itertools
import logging
import math
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from services.counting import enumerate_basis
from services.errors import BudgetExceededError, InvalidGraphError
from services.multigraph import MultiGraph, delooped_cone, kappa_vertex, mask_of
from services.oracle import enumerate_partial_orientations, is_acyclic, is_total, score_vector
from services.settings import get_settings

logger = logging.getLogger(__name__)

ParkingVector = Tuple[int, ...]


def dhat(g: MultiGraph, s: int, v: int) -> int:
    """d_S(v) + loops(v) for a vertex v of the subset mask s."""
    if not s >> v & 1:
        raise InvalidGraphError(f"Vertex {v} is not in the subset {s:b}")
    row = g.multiplicity_matrix[v]
    return g.loops(v) + sum(row[w] for w in range(g.n) if w != v and not s >> w & 1)


def _validate(g: MultiGraph, f: Sequence[int]) -> None:
    if len(f) != g.n or any(x < 0 for x in f):
        raise InvalidGraphError(f"{tuple(f)} is not a nonnegative vector on {g.n} vertices")


def burning_order(g: MultiGraph, f: Sequence[int]) -> Optional[List[int]]:
    """
    Burn vertices one at a time, always taking the smallest v of the remaining set S
    with f(v) <= dhat_S(v). Returns the burning order, or None if the fire stalls.
    """
    _validate(g, f)
    remaining = g.all_vertices
    order = []
    while remaining:
        for v in range(g.n):
            if remaining >> v & 1 and f[v] <= dhat(g, remaining, v):
                order.append(v)
                remaining &= ~(1 << v)
                break
        else:
            return None
    return order


def is_weak_parking(g: MultiGraph, f: Sequence[int]) -> bool:
    return burning_order(g, f) is not None


def is_weak_parking_by_definition(g: MultiGraph, f: Sequence[int]) -> bool:
    """Reference test over every nonempty subset."""
    _validate(g, f)
    for s in range(1, 1 << g.n):
        if not any(s >> v & 1 and f[v] <= dhat(g, s, v) for v in range(g.n)):
            return False
    return True


def _box(g: MultiGraph) -> Iterable[ParkingVector]:
    # f(v) <= kappa_v for every weak parking function
    ranges = [kappa_vertex(g, v) + 1 for v in range(g.n)]
    size = math.prod(ranges)
    budget = get_settings().max_box
    if size > budget:
        logger.error(f"Parking enumeration box {size} exceeds max_box={budget}")
        raise BudgetExceededError(f"Parking enumeration box {size} exceeds {budget}")
    return itertools.product(*(range(x) for x in ranges))


def enumerate_weak_parking(g: MultiGraph) -> Set[ParkingVector]:
    return {f for f in _box(g) if is_weak_parking(g, f)}


def f_pi(g: MultiGraph, pi: Sequence[int]) -> ParkingVector:
    """f(v_i) = dhat({v_i, ..., v_n}, v_i) for the ordering pi = (v_1, ..., v_n)."""
    if sorted(pi) != list(range(g.n)):
        raise InvalidGraphError(f"{list(pi)} is not an ordering of the {g.n} vertices")
    f = [0] * g.n
    for i, v in enumerate(pi):
        f[v] = dhat(g, mask_of(pi[i:]), v)
    return tuple(f)


def maximal_weak_parking(g: MultiGraph) -> Set[ParkingVector]:
    """All f^pi, deduplicated."""
    budget = get_settings().max_polytope_vertices
    if g.n > budget:
        raise BudgetExceededError(f"Ordering enumeration needs n <= {budget}, got {g.n}")
    return {f_pi(g, pi) for pi in itertools.permutations(range(g.n))}


def is_cone_parking(g: MultiGraph, f: Sequence[int]) -> bool:
    """
    Parking on the delooped cone relative to its apex: every nonempty S of original
    vertices has some v with f(v) < d_S(v), counted in the cone.
    """
    cone = delooped_cone(g)
    mat = cone.multiplicity_matrix
    for s in range(1, 1 << g.n):
        members = [v for v in range(g.n) if s >> v & 1]
        if not any(f[v] < sum(mat[v][w] for w in range(cone.n) if not s >> w & 1) for v in members):
            return False
    return True


def cone_equivalence_check(g: MultiGraph) -> bool:
    weak = enumerate_weak_parking(g)
    cone = {f for f in _box(g) if is_cone_parking(g, f)}
    if weak != cone:
        logger.info(f"Cone parking mismatch for {g}: {sorted(weak ^ cone)}")
    return weak == cone


def parking_vs_acyclic(g: MultiGraph) -> bool:
    """
    Parking vectors against score vectors of acyclic partial orientations, and
    maximal ones against acyclic total orientations.
    """
    acyclic_partial = set()
    acyclic_total = set()
    for sigma in enumerate_partial_orientations(g):
        if is_acyclic(g, sigma):
            a = score_vector(g, sigma)
            acyclic_partial.add(a)
            if is_total(g, sigma):
                acyclic_total.add(a)
    return enumerate_weak_parking(g) == acyclic_partial and maximal_weak_parking(g) == acyclic_total


def parking_polytope_gap(g: MultiGraph) -> List[ParkingVector]:
    """Lattice points of the score vector polytope that are not weak parking functions."""
    parking = enumerate_weak_parking(g)
    return sorted(a for a in enumerate_basis(g, 1) if a not in parking)
