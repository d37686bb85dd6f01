"""
Verification Suites
Each suite runs a family of identity checks over fixed graphs and seeded corpora and
reports one CheckResult per check. Library errors inside a check count as failures.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from services import appendix, corpus
from services.counting import (
    closed_form_internal_regular,
    hilbert_direct,
    is_basis_monomial,
    top_component,
)
from services.delcon import find_relation_counterexample, hilbert_delcon, relation_failures
from services.errors import BizonError, InvalidGraphError, RParameterError
from services.multigraph import (
    delooped_cone,
    generate_family,
    kappa_vertex,
    renyi_two_component_forests,
    spanning_forest_counts,
    spanning_tree_count,
)
from services.oracle import (
    bucket_by_score,
    disjoint_supports_check,
    enumerate_partial_orientations,
    subalgebra_hilbert_via_oracle,
    verify_ses,
    y_power,
)
from services.parking import (
    cone_equivalence_check,
    enumerate_weak_parking,
    is_weak_parking,
    is_weak_parking_by_definition,
    parking_vs_acyclic,
)
from services.polytope import (
    all_vertices,
    satisfies_inequalities,
    verify_vertex_characterizations,
    vertex_count_bounds,
)
from services.settings import get_settings
from utils.cache_helper import MemoTable

logger = logging.getLogger(__name__)

SUITES = ("appendix", "delcon", "oracle", "parking", "polytope")

# Weak parking functions of the two-vertex example graphs, vertices written 1, 2
EXAMPLE_PARKING_TABLE: Dict[str, List[Tuple[int, int]]] = {
    "G1": [(0, 0), (0, 1), (1, 0)],
    "G2": [(0, 0), (0, 1)],
    "G3": [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1)],
    "G4": [(0, 0), (0, 1), (0, 2), (1, 0), (2, 0)],
}


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""


def _run(suite: str, name: str, check: Callable[[], Tuple[bool, str]]) -> CheckResult:
    try:
        passed, detail = check()
    except BizonError as e:
        logger.error(f"[{suite}] {name} raised {type(e).__name__}: {e}")
        return CheckResult(suite, name, False, f"{type(e).__name__}: {e}")
    if not passed:
        logger.warning(f"[{suite}] {name} failed: {detail}")
    return CheckResult(suite, name, passed, detail)


def _all_match(pairs) -> Tuple[bool, str]:
    """pairs: iterable of (label, expected, actual); reports the first mismatch."""
    count = 0
    for label, expected, actual in pairs:
        count += 1
        if expected != actual:
            return False, f"{label}: expected {expected}, got {actual}"
    return True, f"{count} cases"


def _all_true(items) -> Tuple[bool, str]:
    """items: iterable of (label, ok)."""
    count = 0
    for label, ok in items:
        count += 1
        if not ok:
            return False, f"failed on {label}"
    return True, f"{count} cases"


# =====================================================
# APPENDIX
# =====================================================

def appendix_suite(max_n: int = 7, seed: Optional[int] = None) -> List[CheckResult]:
    results = []
    for kind, r in appendix.KIND_TO_R.items():
        rows = appendix.appendix_rows(kind, max_n)
        results.append(_run("appendix", f"{kind} tables K2..K{max_n}", lambda rows=rows, r=r: _all_match(
            (f"K{n}", coeffs, hilbert_direct(generate_family("complete", n), r).coeffs) for n, coeffs in rows
        )))

    def internal_top() -> Tuple[bool, str]:
        return _all_match(
            (f"K{n}", (math.comb(n, 2) - 2, math.comb(n - 2, 2) * n ** (n - 4)),
             top_component(generate_family("complete", n), -1))
            for n in range(4, min(max_n, 7) + 1)
        )

    def renyi() -> Tuple[bool, str]:
        return _all_match(
            (f"K{n}", renyi_two_component_forests(n), spanning_forest_counts(generate_family("complete", n))[2])
            for n in range(4, min(max_n, 6) + 1)
        )

    def closed_forms() -> Tuple[bool, str]:
        graphs = [generate_family("petersen"), generate_family("complete", 4), generate_family("complete", 5)]
        return _all_match(
            (str(g), closed_form_internal_regular(g), hilbert_direct(g, -1)) for g in graphs
        )

    def spanning() -> Tuple[bool, str]:
        checks = []
        for g in corpus.full_corpus(seed):
            forests = spanning_forest_counts(g)
            checks.append((f"{g} external top", sum(forests), hilbert_direct(g, 1).top_dimension))
            if g.is_connected() and g.m > 0:
                checks.append((f"{g} central top", spanning_tree_count(g), hilbert_direct(g, 0).top_dimension))
                checks.append((f"{g} trees vs forests", spanning_tree_count(g), forests[1]))
        return _all_match(checks)

    results.append(_run("appendix", "internal top component of K_n", internal_top))
    results.append(_run("appendix", "two-component forests of K_n", renyi))
    results.append(_run("appendix", "regular closed forms", closed_forms))
    results.append(_run("appendix", "spanning structure identities", spanning))
    return results


# =====================================================
# DELETION-CONTRACTION
# =====================================================

def delcon_suite(max_n: int = 7, seed: Optional[int] = None) -> List[CheckResult]:
    graphs = corpus.full_corpus(seed)
    complete = [generate_family("complete", n) for n in range(1, min(max_n, 7) + 1)]

    def agrees() -> Tuple[bool, str]:
        return _all_match(
            (f"{g} r={r}", hilbert_direct(g, r), hilbert_delcon(g, r)) for g in graphs + complete for r in (0, 1)
        )

    def relation() -> Tuple[bool, str]:
        failures = relation_failures(corpus.random_multigraph_corpus(seed=seed), range(5))
        return not failures, f"{len(failures)} failures" + (f", first: {failures[0]}" if failures else "")

    def negative_control() -> Tuple[bool, str]:
        found = find_relation_counterexample(graphs + complete, -1)
        if found is None:
            return False, "no counterexample at r=-1"
        return True, f"fails on {found[0]} edge {found[1]}"

    def random_pivot() -> Tuple[bool, str]:
        return _all_match(
            (f"{g} r={r}", hilbert_delcon(g, r, memo=MemoTable("pivot-first")),
             hilbert_delcon(g, r, memo=MemoTable("pivot-random"), pivot="random", seed=seed))
            for g in graphs for r in (0, 1)
        )

    return [
        _run("delcon", "deletion-contraction equals direct count", agrees),
        _run("delcon", "relation holds for r=0..4", relation),
        _run("delcon", "relation fails somewhere at r=-1", negative_control),
        _run("delcon", "pivot choice does not change the result", random_pivot),
    ]


# =====================================================
# ORACLE
# =====================================================

def oracle_suite(max_n: int = 4, seed: Optional[int] = None) -> List[CheckResult]:
    graphs = [g for g in corpus.oracle_corpus(seed) if g.n <= max_n]

    def orientation_count() -> Tuple[bool, str]:
        return _all_match(
            (str(g), 2 ** g.loop_total * 3 ** (g.m - g.loop_total), sum(1 for _ in enumerate_partial_orientations(g)))
            for g in graphs
        )

    def nonvanishing() -> Tuple[bool, str]:
        def cases():
            for g in graphs:
                for a in itertools.product(*(range(kappa_vertex(g, v) + 2) for v in range(g.n))):
                    yield f"{g} a={a}", is_basis_monomial(g, 1, a), not y_power(g, a).is_zero()
        return _all_match(cases())

    def hilbert() -> Tuple[bool, str]:
        def cases():
            for g in graphs:
                for r in (1, 0, -1):
                    try:
                        direct = hilbert_direct(g, r)
                    except RParameterError:
                        continue
                    yield f"{g} r={r}", direct, subalgebra_hilbert_via_oracle(g, r)
        return _all_match(cases())

    def ses() -> Tuple[bool, str]:
        return _all_true((f"{g} edge {e}", verify_ses(g, e)) for g in graphs for e in g.nonloop_edge_indices())

    def supports() -> Tuple[bool, str]:
        return _all_true((str(g), disjoint_supports_check(g)) for g in graphs)

    def total_scores() -> Tuple[bool, str]:
        return _all_match(
            (str(g), sum(spanning_forest_counts(g)), sum(1 for c in bucket_by_score(g).values() if c[2]))
            for g in graphs
        )

    return [
        _run("oracle", "partial orientation count", orientation_count),
        _run("oracle", "y^a nonzero iff a is a basis exponent", nonvanishing),
        _run("oracle", "oracle Hilbert functions for r=1,0,-1", hilbert),
        _run("oracle", "short exact sequence", ses),
        _run("oracle", "disjoint supports of y^a", supports),
        _run("oracle", "total orientation score vectors count forests", total_scores),
    ]


# =====================================================
# PARKING
# =====================================================

def parking_suite(max_n: int = 5, seed: Optional[int] = None) -> List[CheckResult]:
    examples = corpus.example_graphs()
    graphs = corpus.random_multigraph_corpus(seed=seed) + list(examples.values())
    small = [g for g in graphs if g.n <= max_n]

    def table() -> Tuple[bool, str]:
        return _all_match(
            (name, EXAMPLE_PARKING_TABLE[name], sorted(enumerate_weak_parking(g))) for name, g in examples.items()
        )

    def cone() -> Tuple[bool, str]:
        return _all_true((str(g), cone_equivalence_check(g)) for g in graphs)

    def loopless_counts() -> Tuple[bool, str]:
        return _all_match(
            (str(g), spanning_tree_count(delooped_cone(g)), len(enumerate_weak_parking(g)))
            for g in graphs if g.is_loopless
        )

    def burning() -> Tuple[bool, str]:
        def cases():
            for g in small:
                for f in itertools.product(*(range(kappa_vertex(g, v) + 2) for v in range(g.n))):
                    yield f"{g} f={f}", is_weak_parking_by_definition(g, f), is_weak_parking(g, f)
        return _all_match(cases())

    def acyclic() -> Tuple[bool, str]:
        return _all_true((str(g), parking_vs_acyclic(g)) for g in corpus.oracle_corpus(seed))

    return [
        _run("parking", "two-vertex example table", table),
        _run("parking", "delooped cone equivalence", cone),
        _run("parking", "loopless counts equal cone spanning trees", loopless_counts),
        _run("parking", "burning agrees with the definition", burning),
        _run("parking", "parking vectors are acyclic orientation scores", acyclic),
    ]


# =====================================================
# POLYTOPE
# =====================================================

def polytope_suite(max_n: int = 6, seed: Optional[int] = None) -> List[CheckResult]:
    graphs = corpus.oracle_corpus(seed)

    def complete_bounds() -> Tuple[bool, str]:
        def cases():
            for n in range(2, min(max_n, 6) + 1):
                count, bound, tight = vertex_count_bounds(generate_family("complete", n))
                yield f"K{n}", (bound, True), (count, tight)
        return _all_match(cases())

    def characterizations() -> Tuple[bool, str]:
        return _all_true((str(g), verify_vertex_characterizations(g)) for g in graphs)

    def inequalities() -> Tuple[bool, str]:
        return _all_true(
            (f"{g} a={a}", satisfies_inequalities(g, a)) for g in graphs for a in all_vertices(g)
        )

    def strict_for_simple() -> Tuple[bool, str]:
        candidates = [g for g in corpus.full_corpus(seed) if g.is_simple and g.n >= 2]
        candidates = [g for g in candidates if g.m < math.comb(g.n, 2)]
        return _all_true((str(g), not vertex_count_bounds(g)[2]) for g in candidates)

    return [
        _run("polytope", "complete graphs reach the bound", complete_bounds),
        _run("polytope", "vertex characterizations agree", characterizations),
        _run("polytope", "vertices satisfy the defining inequalities", inequalities),
        _run("polytope", "simple non-complete graphs stay below the bound", strict_for_simple),
    ]


_SUITE_FUNCTIONS = {
    "appendix": appendix_suite,
    "delcon": delcon_suite,
    "oracle": oracle_suite,
    "parking": parking_suite,
    "polytope": polytope_suite,
}


def run_suite(name: str, max_n: Optional[int] = None, seed: Optional[int] = None) -> List[CheckResult]:
    """
    Run one suite, or every suite for "all".

    Args:
        name: a suite name or "all"
        max_n: largest complete graph / vertex count the suite may use
        seed: corpus seed; the configured seed by default

    Returns:
        List[CheckResult]: one entry per check
    """
    seed = get_settings().seed if seed is None else seed
    names = SUITES if name == "all" else (name,)
    results = []
    for suite in names:
        if suite not in _SUITE_FUNCTIONS:
            raise InvalidGraphError(f"Unknown suite {suite!r}; expected one of {', '.join(SUITES)} or all")
        logger.info(f"Running suite {suite} (seed {seed})")
        function = _SUITE_FUNCTIONS[suite]
        results.extend(function(seed=seed) if max_n is None else function(max_n=max_n, seed=seed))
    return results
