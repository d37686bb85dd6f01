import pytest
from hypothesis import given, settings

from services.corpus import random_multigraph_corpus
from services.counting import HilbertPolynomial, hilbert_direct
from services.delcon import (
    find_relation_counterexample,
    hilbert_delcon,
    relation_failures,
    relation_sides,
    verify_delcon_relation,
)
from services.errors import BudgetExceededError, InvalidGraphError
from services.multigraph import MultiGraph, disjoint_union, generate_family
from services.settings import Settings, configure
from tests.strategies import multigraphs
from utils.cache_helper import MemoTable

K3 = generate_family("complete", 3)
K4 = generate_family("complete", 4)


def test_delcon_examples():
    assert hilbert_delcon(generate_family("complete", 2), 1).coeffs == (1, 2)
    assert hilbert_delcon(K3, 0).coeffs == (1, 3, 3)
    expected = HilbertPolynomial.geometric(6) * HilbertPolynomial.geometric(3)
    assert hilbert_delcon(disjoint_union(generate_family("loops", 5), generate_family("loops", 2)), 1) == expected


def test_isolated_vertex_kills_central_algebra():
    assert hilbert_delcon(MultiGraph(3, ((0, 1),)), 0).is_zero
    assert hilbert_delcon(MultiGraph(3, ((0, 1),)), 1).coeffs == (1, 2)


def test_delcon_rejects_other_r():
    for r in (2, -1):
        with pytest.raises(InvalidGraphError):
            hilbert_delcon(K3, r)
    with pytest.raises(InvalidGraphError):
        hilbert_delcon(K3, 1, pivot="last")


def test_delcon_budget_on_unmemoized_components():
    with pytest.raises(BudgetExceededError):
        hilbert_delcon(generate_family("cycle", 30), 1)

    path = generate_family("path", 4)
    expected = hilbert_direct(path, 1)
    configure(Settings(max_canonical_vertices=3, max_delcon_edges=3))
    assert hilbert_delcon(path, 1, memo=MemoTable("budget")) == expected
    assert hilbert_delcon(disjoint_union(K3, K3), 0, memo=MemoTable("budget")).coeffs == (1, 6, 15, 18, 9)
    with pytest.raises(BudgetExceededError):
        hilbert_delcon(generate_family("cycle", 4), 1, memo=MemoTable("budget"))


@settings(max_examples=60, deadline=None)
@given(multigraphs(max_n=6, max_edges=10))
def test_delcon_equals_direct(g):
    for r in (0, 1):
        assert hilbert_delcon(g, r) == hilbert_direct(g, r)


@pytest.mark.parametrize("n", range(1, 7))
def test_delcon_complete_graphs(n):
    g = generate_family("complete", n)
    for r in (0, 1):
        assert hilbert_delcon(g, r) == hilbert_direct(g, r)


@pytest.mark.slow
def test_delcon_k7():
    g = generate_family("complete", 7)
    assert hilbert_delcon(g, 1).dimension == 383415
    assert hilbert_delcon(g, 0).dimension == 200469


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_n=5, max_edges=8))
def test_random_pivot_gives_same_result(g):
    for r in (0, 1):
        first = hilbert_delcon(g, r, memo=MemoTable("first"))
        for seed in (1, 2):
            assert hilbert_delcon(g, r, memo=MemoTable("random"), pivot="random", seed=seed) == first


def test_memo_cold_and_warm():
    memo = MemoTable("delcon-test")
    cold = hilbert_delcon(K4, 1, memo=memo)
    warm = hilbert_delcon(K4, 1, memo=memo)
    assert cold == warm
    assert memo.hits >= 1


def test_relation_examples():
    assert all(verify_delcon_relation(K4, 2, e) for e in range(K4.m))
    assert all(verify_delcon_relation(K3, 0, e) for e in range(K3.m))
    doubled_triangle = MultiGraph(3, ((0, 1), (0, 1), (1, 2), (0, 2)))
    assert all(verify_delcon_relation(doubled_triangle, 1, e) for e in range(doubled_triangle.m))


def test_relation_rejects_loop():
    with pytest.raises(InvalidGraphError):
        verify_delcon_relation(MultiGraph(2, ((0, 1), (1, 1))), 1, 1)


def test_relation_fails_for_internal_k4():
    lhs, rhs = relation_sides(K4, -1, 0)
    assert lhs.coeffs == (1, 4, 6, 4, 1)
    assert rhs.coeffs == (1, 4, 6, 5, 3)


def test_negative_control_finds_counterexample():
    found = find_relation_counterexample(random_multigraph_corpus(count=20, max_n=4, max_edges=6) + [K4], -1)
    assert found is not None
    g, index = found
    assert not verify_delcon_relation(g, -1, index)


def test_relation_holds_on_small_corpus():
    assert relation_failures(random_multigraph_corpus(count=15, max_n=4, max_edges=6), range(5)) == []


@pytest.mark.slow
def test_relation_holds_on_full_corpus():
    assert relation_failures(random_multigraph_corpus(), range(5)) == []
