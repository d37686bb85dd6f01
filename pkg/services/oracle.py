"""
Oracle Service
Brute-force ground truth built on the partial orientation algebra of a multigraph:
one generator per arc, x_e^2 = x_e x_e' = 0, and y_v the sum of the arcs leaving v.
Its central and internal quotients, the derivation delta_e and the maps gamma_e
and rho_e are evaluated on sparse integer combinations of partial orientations.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import sympy

from services.counting import HilbertPolynomial, check_r, enumerate_basis, hilbert_direct
from services.errors import BudgetExceededError, InvalidGraphError, RParameterError
from services.multigraph import MultiGraph, delete_edge, kappa_vertex, loopy_contract
from services.settings import get_settings

logger = logging.getLogger(__name__)

# (edge index, direction); direction 0 leaves the first stored endpoint, 1 the second.
# Loops only have direction 0.
Arc = Tuple[int, int]
PartialOrientation = FrozenSet[Arc]

VARIANTS = {1: "external", 0: "central", -1: "internal"}


@dataclass
class OracleElement:
    """Integer combination of monomials x_Sigma; zero coefficients are never stored."""

    terms: Dict[PartialOrientation, int] = field(default_factory=dict)

    @classmethod
    def unit(cls) -> "OracleElement":
        return cls({frozenset(): 1})

    @classmethod
    def monomial(cls, sigma: PartialOrientation, coefficient: int = 1) -> "OracleElement":
        return cls({frozenset(sigma): coefficient} if coefficient else {})

    def is_zero(self) -> bool:
        return not self.terms

    def _combine(self, other: "OracleElement", sign: int) -> "OracleElement":
        out = dict(self.terms)
        for sigma, c in other.terms.items():
            total = out.get(sigma, 0) + sign * c
            if total:
                out[sigma] = total
            else:
                out.pop(sigma, None)
        return OracleElement(out)

    def __add__(self, other: "OracleElement") -> "OracleElement":
        return self._combine(other, 1)

    def __mul__(self, other: "OracleElement") -> "OracleElement":
        return multiply(self, other)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, OracleElement) and self.terms == other.terms


def _edges_of(sigma: PartialOrientation) -> FrozenSet[int]:
    return frozenset(i for i, _ in sigma)


def multiply(a: OracleElement, b: OracleElement) -> OracleElement:
    """Bilinear product; x_S1 x_S2 is x_(S1 + S2) when they use disjoint edges, else 0."""
    out: Dict[PartialOrientation, int] = {}
    for s1, c1 in a.terms.items():
        e1 = _edges_of(s1)
        for s2, c2 in b.terms.items():
            if e1 & _edges_of(s2):
                continue
            union = s1 | s2
            total = out.get(union, 0) + c1 * c2
            if total:
                out[union] = total
            else:
                out.pop(union, None)
    return OracleElement(out)


def arc_source(g: MultiGraph, arc: Arc) -> int:
    return g.edges[arc[0]][arc[1]]


def arcs_of_edge(g: MultiGraph, index: int) -> List[Arc]:
    u, v = g.edges[index]
    return [(index, 0)] if u == v else [(index, 0), (index, 1)]


def _check_budget(g: MultiGraph) -> None:
    budget = get_settings().max_oracle_edges
    if g.m > budget:
        logger.error(f"Oracle budget exceeded: {g.m} edges > {budget}")
        raise BudgetExceededError(f"Oracle needs |E| <= {budget}, got {g.m}")


def enumerate_partial_orientations(g: MultiGraph) -> Iterator[PartialOrientation]:
    """Every edge independently unoriented or given one of its orientations."""
    _check_budget(g)
    choices = [[None] + arcs_of_edge(g, i) for i in range(g.m)]
    for combo in itertools.product(*choices):
        yield frozenset(arc for arc in combo if arc is not None)


def score_vector(g: MultiGraph, sigma: PartialOrientation) -> Tuple[int, ...]:
    """Number of arcs of sigma leaving each vertex."""
    scores = [0] * g.n
    for arc in sigma:
        scores[arc_source(g, arc)] += 1
    return tuple(scores)


def is_total(g: MultiGraph, sigma: PartialOrientation) -> bool:
    return len(sigma) == g.m


def is_acyclic(g: MultiGraph, sigma: PartialOrientation) -> bool:
    """No directed cycle among the non-loop arcs."""
    digraph = nx.MultiDiGraph()
    digraph.add_nodes_from(range(g.n))
    for arc in sigma:
        u, v = g.edges[arc[0]]
        if u != v:
            source = arc_source(g, arc)
            digraph.add_edge(source, v if source == u else u)
    return nx.is_directed_acyclic_graph(digraph)


def y_generator(g: MultiGraph, v: int) -> OracleElement:
    """y_v: sum of the arcs leaving v, loops at v included."""
    return OracleElement(
        {frozenset([arc]): 1 for i in range(g.m) for arc in arcs_of_edge(g, i) if arc_source(g, arc) == v}
    )


def y_power(g: MultiGraph, a: Sequence[int]) -> OracleElement:
    """Expansion of prod_v y_v^(a_v)."""
    _check_budget(g)
    if len(a) != g.n or any(x < 0 for x in a):
        raise InvalidGraphError(f"Exponent vector {tuple(a)} must have {g.n} nonnegative entries")
    result = OracleElement.unit()
    for v, power in enumerate(a):
        generator = y_generator(g, v)
        for _ in range(power):
            result = result * generator
            if result.is_zero():
                return result
    return result


# =====================================================
# QUOTIENTS
# =====================================================

@lru_cache(maxsize=256)
def _subset_edge_data(g: MultiGraph) -> Tuple[Tuple[int, FrozenSet[int], FrozenSet[int]], ...]:
    """For each nonempty S: (mask, edges touching S, edges with exactly one end in S)."""
    data = []
    for s in range(1, 1 << g.n):
        touching, boundary = [], []
        for i, (u, v) in enumerate(g.edges):
            inside = (s >> u & 1) + (s >> v & 1)
            if inside:
                touching.append(i)
                if u != v and inside == 1:
                    boundary.append(i)
        data.append((s, frozenset(touching), frozenset(boundary)))
    return tuple(data)


def _properly_covered(g: MultiGraph, s: int, sigma: PartialOrientation, edges: FrozenSet[int], boundary: FrozenSet[int]) -> FrozenSet[int]:
    """Edges of E_S that sigma orients acceptably: any way inside S, out of S on the boundary."""
    covered = set()
    for arc in sigma:
        i = arc[0]
        if i in edges and (i not in boundary or s >> arc_source(g, arc) & 1):
            covered.add(i)
    return frozenset(covered)


def vanishes_in_quotient(g: MultiGraph, variant: str, sigma: PartialOrientation) -> bool:
    """
    Central: some nonempty S has every edge of E_S oriented by sigma, boundary edges
    out of S. Internal: the same with one edge of E_S left free.
    """
    if variant not in ("central", "internal"):
        raise InvalidGraphError(f"Unknown quotient variant {variant!r}")
    slack = 0 if variant == "central" else 1
    for s, edges, boundary in _subset_edge_data(g):
        if variant == "internal" and not edges:
            continue
        missing = len(edges) - len(_properly_covered(g, s, sigma, edges, boundary))
        if missing <= slack:
            return True
    return False


def reduce_in_quotient(g: MultiGraph, r: int, x: OracleElement) -> OracleElement:
    """Image of x in the external (r=1), central (r=0) or internal (r=-1) algebra."""
    if r not in VARIANTS:
        raise RParameterError(f"The orientation model covers r in {{1, 0, -1}}, got r={r}")
    if r == 1:
        return x
    variant = VARIANTS[r]
    return OracleElement({s: c for s, c in x.terms.items() if not vanishes_in_quotient(g, variant, s)})


def _box(g: MultiGraph) -> Iterator[Tuple[int, ...]]:
    # y_v^k = 0 in the orientation algebra once k exceeds kappa_v
    return itertools.product(*(range(kappa_vertex(g, v) + 1) for v in range(g.n)))


def subalgebra_hilbert_via_oracle(g: MultiGraph, r: int) -> HilbertPolynomial:
    """Per weight, the number of exponent vectors a whose y^a survives in the quotient for r."""
    check_r(g, r)
    if r not in VARIANTS:
        raise RParameterError(f"The orientation model covers r in {{1, 0, -1}}, got r={r}")
    _check_budget(g)
    counts: Dict[int, int] = {}
    for a in _box(g):
        if not reduce_in_quotient(g, r, y_power(g, a)).is_zero():
            counts[sum(a)] = counts.get(sum(a), 0) + 1
    if not counts:
        return HilbertPolynomial.zero()
    return HilbertPolynomial(tuple(counts.get(k, 0) for k in range(max(counts) + 1)))


def disjoint_supports_check(g: MultiGraph) -> bool:
    """Distinct nonzero y^a never share a monomial x_Sigma."""
    seen: Dict[PartialOrientation, Tuple[int, ...]] = {}
    for a in _box(g):
        for sigma in y_power(g, a).terms:
            if sigma in seen:
                logger.warning(f"y^{a} and y^{seen[sigma]} share the monomial {sorted(sigma)}")
                return False
            seen[sigma] = a
    return True


def bucket_by_score(g: MultiGraph) -> Dict[Tuple[int, ...], Tuple[int, int, int]]:
    """Score vector -> (realizing partial orientations, acyclic ones, total ones)."""
    buckets: Dict[Tuple[int, ...], List[int]] = {}
    for sigma in enumerate_partial_orientations(g):
        entry = buckets.setdefault(score_vector(g, sigma), [0, 0, 0])
        entry[0] += 1
        entry[1] += is_acyclic(g, sigma)
        entry[2] += is_total(g, sigma)
    return {a: (c[0], c[1], c[2]) for a, c in buckets.items()}


# =====================================================
# DELETION-CONTRACTION MAPS
# =====================================================

def _require_nonloop(g: MultiGraph, e: int) -> None:
    if not 0 <= e < g.m:
        raise InvalidGraphError(f"Edge index {e} out of range for {g.m} edges")
    if g.edges[e][0] == g.edges[e][1]:
        raise InvalidGraphError(f"Edge {e} is a loop")


def _shift_down(sigma: PartialOrientation, e: int) -> PartialOrientation:
    return frozenset((i - 1 if i > e else i, d) for i, d in sigma)


def rho_projection(g: MultiGraph, e: int, x: OracleElement) -> OracleElement:
    """Set both arcs of e to zero; the result lives on G - e."""
    return OracleElement({_shift_down(s, e): c for s, c in x.terms.items() if e not in _edges_of(s)})


def delta_derivation(g: MultiGraph, e: int, x: OracleElement) -> OracleElement:
    """
    delta_e = d/dx_(e,0) - d/dx_(e,1), landing on G - e. The arc (e, 0) leaves the
    first endpoint p, so delta_e(y_p) = 1 and delta_e(y_q) = -1.
    """
    _require_nonloop(g, e)
    out = OracleElement()
    for sigma, c in x.terms.items():
        for direction, sign in ((0, 1), (1, -1)):
            if (e, direction) in sigma:
                out = out + OracleElement.monomial(_shift_down(sigma - {(e, direction)}, e), sign * c)
    return out


def gamma_embedding(g: MultiGraph, e: int, x: OracleElement) -> OracleElement:
    """
    Embed the orientation algebra of the loopy contraction G/e into that of G. Loops
    that came from edges parallel to e go to the sum of both arcs of that edge;
    other arcs keep their source vertex.
    """
    _require_nonloop(g, e)
    contracted = loopy_contract(g, e)
    p, q = g.edges[e]
    relabel = [p if w == q else (w - 1 if w > q else w) for w in range(g.n)]

    def image(arc: Arc) -> OracleElement:
        i, d = arc
        if g.edges[i] == (p, q):
            return OracleElement({frozenset([(i, 0)]): 1, frozenset([(i, 1)]): 1})
        if g.edges[i][0] == g.edges[i][1]:
            return OracleElement.monomial(frozenset([(i, 0)]))
        source = arc_source(contracted, arc)
        direction = 0 if relabel[g.edges[i][0]] == source else 1
        return OracleElement.monomial(frozenset([(i, direction)]))

    out = OracleElement()
    for sigma, c in x.terms.items():
        term = OracleElement.monomial(frozenset(), c)
        for arc in sorted(sigma):
            term = term * image(arc)
        out = out + term
    return out


def _rank(vectors: List[OracleElement]) -> int:
    columns = sorted({s for v in vectors for s in v.terms}, key=lambda s: sorted(s))
    if not vectors or not columns:
        return 0
    index = {s: j for j, s in enumerate(columns)}
    matrix = sympy.zeros(len(vectors), len(columns))
    for row, v in enumerate(vectors):
        for s, c in v.terms.items():
            matrix[row, index[s]] = c
    return matrix.rank()


def verify_ses(g: MultiGraph, e: int) -> bool:
    """
    Check 0 -> B(G/e) -> B(G) -> B(G - e)[-1] -> 0 for the external algebras:
    per-degree dimensions, delta_e mapping the degree-k basis images onto a spanning
    set of degree k-1 on G - e, and delta_e killing the image of gamma_e.
    """
    _require_nonloop(g, e)
    _check_budget(g)
    minus = delete_edge(g, e)
    contracted = loopy_contract(g, e)
    h_g, h_c, h_m = (hilbert_direct(x, 1) for x in (g, contracted, minus))
    top = max(len(h_g.coeffs), len(h_c.coeffs), len(h_m.coeffs) + 1)
    for k in range(top):
        if h_g.coefficient(k) != h_c.coefficient(k) + h_m.coefficient(k - 1):
            logger.info(f"SES dimension mismatch at degree {k} for {g}, edge {e}")
            return False

    images: Dict[int, List[OracleElement]] = {}
    for a in enumerate_basis(g, 1):
        images.setdefault(sum(a), []).append(delta_derivation(g, e, y_power(g, a)))
    targets: Dict[int, List[OracleElement]] = {}
    for b in enumerate_basis(minus, 1):
        targets.setdefault(sum(b), []).append(y_power(minus, b))
    for k, found in images.items():
        expected = h_m.coefficient(k - 1)
        rank = _rank(found)
        if rank != expected or _rank(found + targets.get(k - 1, [])) != expected:
            logger.info(f"SES image check failed at degree {k} for {g}, edge {e}: rank {rank}, expected {expected}")
            return False

    for b in enumerate_basis(contracted, 1):
        if not delta_derivation(g, e, gamma_embedding(g, e, y_power(contracted, b))).is_zero():
            logger.info(f"delta_e does not kill gamma_e(y^{b}) for {g}, edge {e}")
            return False
    return True


def oracle_hilbert_optional(g: MultiGraph, r: int, max_edges: Optional[int] = None) -> Optional[HilbertPolynomial]:
    """Oracle value when r is 1, 0 or -1 and the graph has at most max_edges edges, else None."""
    limit = get_settings().max_oracle_edges if max_edges is None else min(max_edges, get_settings().max_oracle_edges)
    if r not in VARIANTS or g.m > limit:
        return None
    return subalgebra_hilbert_via_oracle(g, r)
