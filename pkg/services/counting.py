"""
Counting Service
Hilbert functions of the r-bizonotopal algebras B^(r)_G by direct enumeration of
their monomial basis: exponent vectors a >= 0 with a(S) <= kappa_S + r - 1 for every
nonempty vertex subset S.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import sympy

from services.errors import BudgetExceededError, InvalidGraphError, RParameterError
from services.multigraph import MultiGraph, canonical_form, delta_g, kappa_vertex
from services.settings import get_settings
from utils.cache_helper import MemoTable, get_table

logger = logging.getLogger(__name__)

ExponentVector = Tuple[int, ...]


@dataclass(frozen=True)
class HilbertPolynomial:
    """
    Coefficient k is the dimension of the degree-k component. Trailing zeros are
    stripped, so the zero algebra has the empty coefficient tuple.
    """

    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def one(cls) -> "HilbertPolynomial":
        return cls((1,))

    @classmethod
    def zero(cls) -> "HilbertPolynomial":
        return cls(())

    @classmethod
    def geometric(cls, length: int) -> "HilbertPolynomial":
        """1 + t + ... + t^(length-1); length 0 gives the zero polynomial."""
        return cls((1,) * max(length, 0))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def dimension(self) -> int:
        return sum(self.coeffs)

    @property
    def top_degree(self) -> Optional[int]:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def top_dimension(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def shift(self, k: int = 1) -> "HilbertPolynomial":
        """Multiply by t^k."""
        if self.is_zero:
            return self
        return HilbertPolynomial((0,) * k + self.coeffs)

    def __add__(self, other: "HilbertPolynomial") -> "HilbertPolynomial":
        size = max(len(self.coeffs), len(other.coeffs))
        return HilbertPolynomial(tuple(self.coefficient(k) + other.coefficient(k) for k in range(size)))

    def __mul__(self, other: "HilbertPolynomial") -> "HilbertPolynomial":
        if self.is_zero or other.is_zero:
            return HilbertPolynomial.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return HilbertPolynomial(tuple(out))

    def __str__(self) -> str:
        return ", ".join(str(c) for c in self.coeffs) if self.coeffs else "0"


def check_r(g: MultiGraph, r: int) -> None:
    """Raise RParameterError when r < -delta_G."""
    delta = delta_g(g)
    if delta is not None and r < -delta:
        logger.debug(f"r={r} is below -delta_G={-delta} for {g}")
        raise RParameterError(f"r={r} is below -delta_G={-delta}")


def is_zero_algebra(g: MultiGraph, r: int) -> bool:
    """kappa_S + r = 0 for some nonempty S puts 1 in the ideal; by monotonicity S can be a vertex."""
    delta = delta_g(g)
    return delta is not None and delta + r == 0


def _validate_vector(g: MultiGraph, a: Sequence[int]) -> None:
    if len(a) != g.n or any(x < 0 for x in a):
        raise InvalidGraphError(f"Exponent vector {tuple(a)} must have {g.n} nonnegative entries")


def violates_some_subset(g: MultiGraph, r: int, a: Sequence[int], subsets: Iterator[int]) -> bool:
    table = g.kappa_table
    for s in subsets:
        if s and sum(a[v] for v in range(g.n) if s >> v & 1) > table[s] + r - 1:
            return True
    return False


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def is_basis_monomial(g: MultiGraph, r: int, a: Sequence[int]) -> bool:
    """
    True when z^a survives in B^(r)_G. Only subsets of the support are checked;
    the others follow from kappa being monotone.
    """
    check_r(g, r)
    _validate_vector(g, a)
    if is_zero_algebra(g, r):
        return False
    support = sum(1 << v for v in range(g.n) if a[v])
    return not violates_some_subset(g, r, a, _submasks(support))


def is_basis_monomial_all_subsets(g: MultiGraph, r: int, a: Sequence[int]) -> bool:
    """Reference check over every nonempty subset of V."""
    check_r(g, r)
    _validate_vector(g, a)
    return not violates_some_subset(g, r, a, iter(range(1, 1 << g.n)))


# =====================================================
# ENUMERATION CORE
# =====================================================

class _SlackWalk:
    """
    Depth-first walk over vertices in natural order. The slack table holds the
    bitmask and partial sum a(T) of every subset T of the assigned support, so the
    bound for the next coordinate is min_T (kappa[T + v] - a(T)) + r - 1.
    """

    def __init__(self, g: MultiGraph, r: int):
        self.n = g.n
        self.r = r
        self.kappa = g.kappa_table
        self.top = int(self.kappa[-1]) + max(r, 0) + 1

    def upper_bound(self, v: int, masks: np.ndarray, sums: np.ndarray) -> int:
        return int((self.kappa[masks | (1 << v)] - sums).min()) + self.r - 1

    @staticmethod
    def extend(v: int, x: int, masks: np.ndarray, sums: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        if x == 0:
            return masks, sums
        return np.concatenate((masks, masks | (1 << v))), np.concatenate((sums, sums + x))

    def initial(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64)

    def count(self, v: int, weight: int, masks: np.ndarray, sums: np.ndarray, diff: List[int]) -> None:
        """Add the surviving completions below this node into the difference array."""
        ub = self.upper_bound(v, masks, sums)
        if v == self.n - 1:
            diff[weight] += 1
            diff[weight + ub + 1] -= 1
            return
        for x in range(ub + 1):
            child_masks, child_sums = self.extend(v, x, masks, sums)
            self.count(v + 1, weight + x, child_masks, child_sums, diff)

    def walk(self, v: int, prefix: List[int], masks: np.ndarray, sums: np.ndarray) -> Iterator[ExponentVector]:
        if v == self.n:
            yield tuple(prefix)
            return
        for x in range(self.upper_bound(v, masks, sums) + 1):
            child_masks, child_sums = self.extend(v, x, masks, sums)
            prefix.append(x)
            yield from self.walk(v + 1, prefix, child_masks, child_sums)
            prefix.pop()


def _finish(diff: List[int]) -> List[int]:
    out, running = [], 0
    for d in diff:
        running += d
        out.append(running)
    return out


def _count_with_first(g: MultiGraph, r: int, first: int) -> List[int]:
    """Coefficient counts of the subtree where a_0 = first. Runs in worker processes."""
    walker = _SlackWalk(g, r)
    masks, sums = walker.extend(0, first, *walker.initial())
    diff = [0] * (walker.top + 2)
    if g.n == 1:
        diff[first] += 1
        diff[first + 1] -= 1
    else:
        walker.count(1, first, masks, sums, diff)
    return _finish(diff)


def box_bound(g: MultiGraph, r: int) -> int:
    """Product of the per-vertex ranges kappa_v + r; an upper bound for the basis size."""
    return math.prod(kappa_vertex(g, v) + r for v in range(g.n))


def _enumerate_counts(g: MultiGraph, r: int, threads: int) -> List[int]:
    settings = get_settings()
    walker = _SlackWalk(g, r)
    first_values = range(walker.upper_bound(0, *walker.initial()) + 1)
    if threads > 1 and box_bound(g, r) > settings.parallel_threshold and len(first_values) > 1:
        logger.debug(f"Splitting enumeration of {g} over {len(first_values)} tasks on {threads} workers")
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_count_with_first, [g] * len(first_values), [r] * len(first_values), first_values))
    else:
        parts = [_count_with_first(g, r, x) for x in first_values]
    total = [0] * (walker.top + 2)
    for part in parts:
        for k, c in enumerate(part):
            total[k] += c
    return total


def hilbert_direct(
    g: MultiGraph,
    r: int,
    threads: Optional[int] = None,
    memo: Optional[MemoTable] = None,
) -> HilbertPolynomial:
    """
    Hilbert polynomial of B^(r)_G by pruned enumeration of the monomial basis.

    Args:
        g: the multigraph
        r: bizonotopal parameter, at least -delta_G
        threads: worker processes; defaults to the configured value
        memo: memo table keyed by (canonical form, r); defaults to the shared one

    Returns:
        HilbertPolynomial: exact coefficients, zero polynomial for the zero algebra
    """
    check_r(g, r)
    if g.n == 0:
        return HilbertPolynomial.one()
    if is_zero_algebra(g, r):
        return HilbertPolynomial.zero()

    settings = get_settings()
    bound = box_bound(g, r)
    if bound > settings.max_basis:
        logger.error(f"Basis box bound {bound} exceeds max_basis={settings.max_basis} for {g}")
        raise BudgetExceededError(f"Basis box bound {bound} exceeds {settings.max_basis}")

    def count() -> HilbertPolynomial:
        result = HilbertPolynomial(tuple(_enumerate_counts(g, r, threads if threads is not None else settings.threads)))
        logger.debug(f"hilbert_direct r={r} {g}: dim={result.dimension}")
        return result

    if g.n > settings.memo_max_vertices:
        return count()
    memo = memo if memo is not None else get_table("hilbert")
    return memo.get_or_compute((canonical_form(g), r), count)


def enumerate_basis(g: MultiGraph, r: int) -> Iterator[ExponentVector]:
    """All basis exponent vectors of B^(r)_G in lexicographic order."""
    check_r(g, r)
    if g.n == 0:
        yield ()
        return
    if is_zero_algebra(g, r):
        return
    walker = _SlackWalk(g, r)
    yield from walker.walk(0, [], *walker.initial())


def top_component(g: MultiGraph, r: int) -> Tuple[Optional[int], int]:
    """(top degree, dimension of the top component); (None, 0) for the zero algebra."""
    h = hilbert_direct(g, r)
    return h.top_degree, h.top_dimension


# =====================================================
# CLOSED FORMS AND SHAPE
# =====================================================

def _poly_from_sympy(expr: sympy.Expr, t: sympy.Symbol) -> HilbertPolynomial:
    coeffs = sympy.Poly(sympy.expand(expr), t).all_coeffs()[::-1]
    return HilbertPolynomial(tuple(int(c) for c in coeffs))


def closed_form_internal_regular(g: MultiGraph) -> Optional[HilbertPolynomial]:
    """
    Internal Hilbert polynomial from the regular-graph closed forms: (1+t)^n for
    simple 3-regular graphs, (1+t+t^2)^n - n t^(2n-1) - t^(2n) for simple 4-regular
    4-edge-connected graphs. None when neither hypothesis holds.
    """
    if g.n == 0 or not g.is_simple:
        return None
    degrees = set(g.nonloop_degrees)
    if len(degrees) != 1:
        return None
    degree = degrees.pop()
    t = sympy.Symbol("t")
    n = g.n
    if degree == 3:
        return _poly_from_sympy((1 + t) ** n, t)
    if degree == 4 and nx.edge_connectivity(nx.Graph(list(g.edges))) >= 4:
        return _poly_from_sympy((1 + t + t**2) ** n - n * t ** (2 * n - 1) - t ** (2 * n), t)
    return None


def shape_report(h: HilbertPolynomial) -> Dict[str, bool]:
    """Empirical unimodality and log-concavity of the coefficient sequence."""
    c = h.coeffs
    peak = c.index(max(c)) if c else 0
    unimodal = all(c[i] <= c[i + 1] for i in range(peak)) and all(
        c[i] >= c[i + 1] for i in range(peak, len(c) - 1)
    )
    log_concave = all(x > 0 for x in c) and all(c[i] ** 2 >= c[i - 1] * c[i + 1] for i in range(1, len(c) - 1))
    return {"unimodal": unimodal, "log_concave": log_concave}
