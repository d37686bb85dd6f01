import itertools
import logging
import math

import pytest
from hypothesis import given, settings

from services.counting import (
    HilbertPolynomial,
    box_bound,
    closed_form_internal_regular,
    enumerate_basis,
    hilbert_direct,
    is_basis_monomial,
    is_basis_monomial_all_subsets,
    shape_report,
    top_component,
)
from services.errors import BudgetExceededError, InvalidGraphError, RParameterError
from services.multigraph import MultiGraph, disjoint_union, generate_family, spanning_forest_counts, spanning_tree_count
from services.settings import Settings, configure
from tests.strategies import multigraphs
from utils.cache_helper import MemoTable

K2 = generate_family("complete", 2)
K3 = generate_family("complete", 3)
K4 = generate_family("complete", 4)
K5 = generate_family("complete", 5)


def test_polynomial_arithmetic():
    a = HilbertPolynomial((1, 1))
    assert (a * a).coeffs == (1, 2, 1)
    assert (a + a.shift(1)).coeffs == (1, 2, 1)
    assert HilbertPolynomial((1, 2, 0, 0)).coeffs == (1, 2)
    assert (a * HilbertPolynomial.zero()).is_zero
    assert HilbertPolynomial.geometric(0).is_zero
    assert HilbertPolynomial((1, 3, 6, 7)).dimension == 17
    assert HilbertPolynomial.zero().top_degree is None


def test_is_basis_monomial_examples():
    assert not is_basis_monomial(K2, 1, (1, 1))
    assert is_basis_monomial(K2, 1, (1, 0))
    loops2 = generate_family("loops", 2)
    assert is_basis_monomial(loops2, 0, (1,))
    assert not is_basis_monomial(loops2, 0, (2,))
    assert is_basis_monomial(K4, 1, (0, 0, 0, 0))


def test_is_basis_monomial_errors():
    with pytest.raises(RParameterError):
        is_basis_monomial(K3, -3, (0, 0, 0))
    with pytest.raises(InvalidGraphError):
        is_basis_monomial(K3, 1, (0, 0))


@settings(max_examples=50, deadline=None)
@given(multigraphs(max_n=5, max_edges=7))
def test_support_subsets_suffice(g):
    for r in (1, 0):
        if g.n and r < -min(g.degree_d(v) + g.loops(v) for v in range(g.n)):
            continue
        ranges = [range(g.degree_d(v) + g.loops(v) + r + 1) for v in range(g.n)]
        for a in itertools.product(*ranges):
            assert is_basis_monomial(g, r, a) == is_basis_monomial_all_subsets(g, r, a)


@pytest.mark.parametrize(
    "n, r, expected",
    [
        (3, 1, (1, 3, 6, 7)),
        (4, 0, (1, 4, 10, 16, 19, 16)),
        (4, -1, (1, 4, 6, 4, 1)),
        (5, 1, (1, 5, 15, 35, 70, 121, 185, 255, 310, 335, 291)),
    ],
)
def test_hilbert_direct_complete_graphs(n, r, expected):
    assert hilbert_direct(generate_family("complete", n), r).coeffs == expected


def test_hilbert_direct_edge_cases():
    assert hilbert_direct(MultiGraph(0, ()), 1).coeffs == (1,)
    # kappa_v + r = 0 puts 1 into the ideal
    assert hilbert_direct(K2, -1).is_zero
    assert hilbert_direct(MultiGraph(2, ()), 0).is_zero
    with pytest.raises(RParameterError):
        hilbert_direct(K3, -3)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_loop_graphs(n):
    loops = generate_family("loops", n)
    assert hilbert_direct(loops, 0).coeffs == (1,) * n
    assert hilbert_direct(loops, 1).coeffs == (1,) * (n + 1)


def test_top_component_examples():
    assert top_component(K4, 1) == (6, 38)
    assert top_component(K5, 0) == (9, 125)
    assert top_component(K5, -1) == (8, 15)


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_n=5, max_edges=8))
def test_external_top_is_forest_count(g):
    h = hilbert_direct(g, 1)
    assert h.top_degree == g.m
    assert h.top_dimension == sum(spanning_forest_counts(g))


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_n=5, max_edges=8))
def test_central_top_is_tree_count(g):
    if not g.is_connected() or g.m == 0:
        return
    h = hilbert_direct(g, 0)
    assert h.top_degree == g.m - 1
    assert h.top_dimension == spanning_tree_count(g)


@settings(max_examples=30, deadline=None)
@given(multigraphs(max_n=3, max_edges=4), multigraphs(max_n=3, max_edges=4))
def test_multiplicativity(g1, g2):
    for r in (0, 1):
        assert hilbert_direct(disjoint_union(g1, g2), r) == hilbert_direct(g1, r) * hilbert_direct(g2, r)


@settings(deadline=None)
@given(multigraphs(max_n=5, max_edges=8))
def test_degree_one_counts_non_isolated_vertices(g):
    expected = sum(1 for v in range(g.n) if g.degree_d(v) + g.loops(v) >= 1)
    assert hilbert_direct(g, 1).coefficient(1) == expected


@settings(max_examples=30, deadline=None)
@given(multigraphs(max_n=4, max_edges=6))
def test_enumerate_basis_matches_counts(g):
    for r in (1, 2):
        basis = list(enumerate_basis(g, r))
        h = hilbert_direct(g, r)
        assert len(basis) == h.dimension
        assert all(is_basis_monomial(g, r, a) for a in basis)


def test_closed_forms():
    assert closed_form_internal_regular(K4).coeffs == (1, 4, 6, 4, 1)
    assert closed_form_internal_regular(K5).coeffs == (1, 5, 15, 30, 45, 51, 45, 30, 15)
    assert closed_form_internal_regular(generate_family("path", 4)) is None
    assert closed_form_internal_regular(MultiGraph(2, ((0, 1), (0, 1), (0, 1)))) is None


def test_petersen_internal_is_binomial():
    h = hilbert_direct(generate_family("petersen"), -1)
    assert h.coeffs == tuple(math.comb(10, k) for k in range(11))
    assert closed_form_internal_regular(generate_family("petersen")) == h


def test_budget_exceeded():
    configure(Settings(max_basis=100))
    with pytest.raises(BudgetExceededError):
        hilbert_direct(K4, 1)


def test_large_sparse_graphs_hit_a_budget_not_memory():
    cycle = generate_family("cycle", 30)
    assert box_bound(cycle, 1) == 3**30
    assert box_bound(cycle, -1) == 1
    with pytest.raises(BudgetExceededError):
        hilbert_direct(cycle, 1)
    with pytest.raises(BudgetExceededError):
        hilbert_direct(cycle, -1)


def test_rejected_r_is_logged_below_error(caplog):
    with caplog.at_level(logging.DEBUG, logger="services.counting"):
        with pytest.raises(RParameterError):
            hilbert_direct(K3, -3)
    assert any("below -delta_G" in record.getMessage() for record in caplog.records)
    assert all(record.levelno < logging.ERROR for record in caplog.records)


def test_parallel_enumeration_matches_serial():
    configure(Settings(parallel_threshold=0, memo_max_vertices=0))
    serial = hilbert_direct(K5, 1, threads=1)
    parallel = hilbert_direct(K5, 1, threads=2)
    assert serial == parallel


def test_memo_cold_and_warm_agree():
    memo = MemoTable("test")
    cold = hilbert_direct(K4, 0, memo=memo)
    assert len(memo) == 1
    warm = hilbert_direct(K4, 0, memo=memo)
    assert cold == warm
    assert memo.hits == 1


def test_shape_report():
    assert shape_report(HilbertPolynomial((1, 3, 6, 7))) == {"unimodal": True, "log_concave": True}
    assert shape_report(HilbertPolynomial((1, 0, 1)))["log_concave"] is False
    assert shape_report(HilbertPolynomial((2, 1, 2)))["unimodal"] is False
