"""
Deletion-Contraction Service
Loopy deletion-contraction h_G = h_{G/e} + t h_{G-e} for the external (r=1) and
central (r=0) algebras, with multiplicativity over components and the one-vertex
loop graphs as base cases. Also checks the relation for any r against direct counts.
"""

import logging
import random
from typing import Iterable, List, Optional, Tuple

from services.counting import HilbertPolynomial, hilbert_direct
from services.errors import BizonError, BudgetExceededError, InvalidGraphError, RParameterError
from services.multigraph import MultiGraph, canonical_form, delete_edge, loopy_contract
from services.settings import get_settings
from utils.cache_helper import MemoTable, get_table

logger = logging.getLogger(__name__)

PIVOTS = ("first", "random")


def _base_case(loops: int, r: int) -> HilbertPolynomial:
    # L_n: 1 + ... + t^(n-1) when r = 0, 1 + ... + t^n when r = 1
    return HilbertPolynomial.geometric(loops + r)


class _Recursion:
    def __init__(self, r: int, memo: MemoTable, pivot: str, rng: random.Random):
        self.r = r
        self.memo = memo
        self.pivot = pivot
        self.rng = rng
        settings = get_settings()
        self.max_vertices = settings.max_canonical_vertices
        self.max_edges = settings.max_delcon_edges

    def choose_edge(self, g: MultiGraph) -> int:
        candidates = g.nonloop_edge_indices()
        if self.pivot == "random":
            return self.rng.choice(candidates)
        return candidates[0]

    def solve(self, g: MultiGraph) -> HilbertPolynomial:
        if g.n == 0:
            return HilbertPolynomial.one()
        parts = g.components()
        if len(parts) > 1:
            result = HilbertPolynomial.one()
            for part in parts:
                result = result * self.solve(g.induced(part))
            return result
        if g.n == 1:
            return _base_case(g.m, self.r)
        if g.n <= self.max_vertices:
            return self.memo.get_or_compute((canonical_form(g), self.r), lambda: self.split(g))
        self.check_budget(g)
        return self.split(g)

    def split(self, g: MultiGraph) -> HilbertPolynomial:
        e = self.choose_edge(g)
        return self.solve(loopy_contract(g, e)) + self.solve(delete_edge(g, e)).shift(1)

    def check_budget(self, g: MultiGraph) -> None:
        # without memoization the recursion tree has up to 2^(non-loop edges) leaves
        edges = len(g.nonloop_edge_indices())
        if edges > self.max_edges:
            logger.error(f"Unmemoized deletion-contraction on {edges} edges exceeds max_delcon_edges={self.max_edges}")
            raise BudgetExceededError(
                f"Component with {g.n} vertices and {edges} non-loop edges exceeds max_delcon_edges={self.max_edges}"
            )


def hilbert_delcon(
    g: MultiGraph,
    r: int,
    memo: Optional[MemoTable] = None,
    pivot: str = "first",
    seed: Optional[int] = None,
) -> HilbertPolynomial:
    """
    Hilbert polynomial of B^(r)_G for r in {0, 1} by loopy deletion-contraction.

    Args:
        g: the multigraph
        r: 0 (central) or 1 (external)
        memo: table keyed by (canonical form, r); the shared "delcon" table by default
        pivot: "first" non-loop edge in stored order, or "random"
        seed: seed for the random pivot

    Returns:
        HilbertPolynomial: the exact coefficients
    """
    if r not in (0, 1):
        raise InvalidGraphError(f"Deletion-contraction computes r in {{0, 1}} only, got r={r}")
    if pivot not in PIVOTS:
        raise InvalidGraphError(f"Unknown pivot strategy {pivot!r}")
    rng = random.Random(seed if seed is not None else get_settings().seed)
    recursion = _Recursion(r, memo if memo is not None else get_table("delcon"), pivot, rng)
    result = recursion.solve(g)
    logger.debug(f"hilbert_delcon r={r} {g}: dim={result.dimension}")
    return result


def relation_sides(g: MultiGraph, r: int, index: int) -> Tuple[HilbertPolynomial, HilbertPolynomial]:
    """(h_G, h_{G/e} + t h_{G-e}), both computed directly."""
    if g.edges[index][0] == g.edges[index][1]:
        raise InvalidGraphError(f"Edge {index} is a loop")
    lhs = hilbert_direct(g, r)
    rhs = hilbert_direct(loopy_contract(g, index), r) + hilbert_direct(delete_edge(g, index), r).shift(1)
    return lhs, rhs


def verify_delcon_relation(g: MultiGraph, r: int, index: int) -> bool:
    lhs, rhs = relation_sides(g, r, index)
    if lhs != rhs:
        logger.info(f"Deletion-contraction fails for {g}, edge {index}, r={r}: {lhs} != {rhs}")
    return lhs == rhs


def find_relation_counterexample(graphs: Iterable[MultiGraph], r: int) -> Optional[Tuple[MultiGraph, int]]:
    """
    First (graph, edge) for which the relation fails at this r. Graphs where one of
    the three algebras is undefined at r are skipped.
    """
    for g in graphs:
        for index in g.nonloop_edge_indices():
            try:
                if not verify_delcon_relation(g, r, index):
                    return g, index
            except RParameterError:
                break
    return None


def relation_failures(graphs: Iterable[MultiGraph], rs: Iterable[int]) -> List[str]:
    """Descriptions of every (graph, edge, r) where the relation fails or cannot be evaluated."""
    failures = []
    rs = list(rs)
    for g in graphs:
        for r in rs:
            for index in g.nonloop_edge_indices():
                try:
                    if not verify_delcon_relation(g, r, index):
                        failures.append(f"{g} edge {index} r={r}")
                except BizonError as e:
                    failures.append(f"{g} edge {index} r={r}: {e}")
    return failures
