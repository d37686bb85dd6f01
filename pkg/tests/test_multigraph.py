import itertools

import networkx as nx
import pytest
from hypothesis import given, settings

from services.errors import BudgetExceededError, InvalidGraphError
from services.multigraph import (
    MultiGraph,
    canonical_form,
    delete_edge,
    delooped_cone,
    delta_g,
    disjoint_union,
    generate_family,
    kappa,
    kappa_vertex,
    loopy_contract,
    mask_of,
    ordinary_contract,
    permute,
    renyi_two_component_forests,
    rooted_spanning_forest_count,
    spanning_forest_counts,
    spanning_tree_count,
)
from services.settings import Settings, configure
from tests.strategies import multigraphs

K3 = generate_family("complete", 3)


def brute_force_forests(g):
    """Forest counts by component number over all edge subsets."""
    counts = [0] * (g.n + 1)
    for size in range(g.m + 1):
        for chosen in itertools.combinations(range(g.m), size):
            sub = nx.MultiGraph()
            sub.add_nodes_from(range(g.n))
            sub.add_edges_from(g.edges[i] for i in chosen)
            if nx.is_forest(sub):
                counts[nx.number_connected_components(sub)] += 1
    return counts


def test_kappa_examples():
    assert kappa(K3, 0b001) == 2
    assert kappa(K3, 0b011) == 3
    assert kappa(K3, 0) == 0
    assert kappa(generate_family("loops", 2), 0b1) == 2


def test_kappa_rejects_subset_outside_range():
    with pytest.raises(InvalidGraphError):
        kappa(K3, 0b1000)


def test_edge_endpoint_out_of_range():
    with pytest.raises(InvalidGraphError):
        MultiGraph(2, ((0, 2),))


def test_edges_are_normalized():
    assert MultiGraph(3, ((2, 0), (1, 1))).edges == ((0, 2), (1, 1))


def test_from_edges_accepts_lists():
    assert MultiGraph.from_edges(3, [[2, 0], ["1", 1]]) == MultiGraph(3, ((0, 2), (1, 1)))
    assert MultiGraph.from_edges(2, iter([])) == MultiGraph(2, ())
    with pytest.raises(InvalidGraphError):
        MultiGraph.from_edges(2, [[0, 2]])


@settings(deadline=None)
@given(multigraphs(max_n=5))
def test_kappa_monotone_and_submodular(g):
    full = 1 << g.n
    for a in range(full):
        for b in range(full):
            if a & b == a:
                assert kappa(g, a) <= kappa(g, b)
            assert kappa(g, a) + kappa(g, b) >= kappa(g, a | b) + kappa(g, a & b)


@settings(deadline=None)
@given(multigraphs(max_n=6, max_edges=10))
def test_kappa_of_vertex_is_degree_plus_loops(g):
    for v in range(g.n):
        assert kappa(g, 1 << v) == kappa_vertex(g, v) == g.degree_d(v) + g.loops(v)


def test_kappa_vertex_skips_the_subset_table():
    configure(Settings(max_subset_vertices=10))
    path = generate_family("path", 30)
    assert [kappa_vertex(path, v) for v in (0, 1, 29)] == [1, 2, 1]
    assert delta_g(path) == 1
    with pytest.raises(BudgetExceededError):
        kappa(path, 1)
    with pytest.raises(InvalidGraphError):
        kappa_vertex(path, 30)


def test_delta_g():
    assert delta_g(K3) == 2
    assert delta_g(MultiGraph(2, ((1, 1),))) == 0
    assert delta_g(MultiGraph(0, ())) is None


def test_delete_edge_examples():
    assert delete_edge(generate_family("complete", 2), 0) == MultiGraph(2, ())
    assert delete_edge(K3, 2) == MultiGraph(3, ((0, 1), (0, 2)))
    assert delete_edge(MultiGraph(2, ((0, 1), (0, 1))), 1) == MultiGraph(2, ((0, 1),))
    with pytest.raises(InvalidGraphError):
        delete_edge(K3, 3)


def test_loopy_contract_examples():
    assert loopy_contract(generate_family("complete", 2), 0) == MultiGraph(1, ((0, 0),))
    assert loopy_contract(MultiGraph(2, ((0, 1), (0, 1))), 0) == MultiGraph(1, ((0, 0), (0, 0)))
    triangle = loopy_contract(K3, 0)
    assert triangle.n == 2
    assert sorted(triangle.edges) == [(0, 0), (0, 1), (0, 1)]


def test_loopy_contract_rejects_loop():
    with pytest.raises(InvalidGraphError):
        loopy_contract(MultiGraph(1, ((0, 0),)), 0)


@settings(deadline=None)
@given(multigraphs(min_n=2, max_n=6, max_edges=10))
def test_loopy_contract_keeps_edges_and_total_kappa(g):
    for index in g.nonloop_edge_indices():
        h = loopy_contract(g, index)
        assert h.n == g.n - 1
        assert h.m == g.m
        assert kappa(h, h.all_vertices) == kappa(g, g.all_vertices)


def test_ordinary_contract_drops_loops():
    assert ordinary_contract(MultiGraph(2, ((0, 1), (0, 1))), 0) == MultiGraph(1, ())


def test_delooped_cone_examples(examples):
    cone = delooped_cone(examples["G2"])
    assert cone.n == 3
    assert sorted(cone.edges) == [(0, 2), (1, 2), (1, 2)]
    assert delooped_cone(MultiGraph(1, ())) == MultiGraph(2, ((0, 1),))
    assert delooped_cone(K3) == MultiGraph(4, K3.edges + ((0, 3), (1, 3), (2, 3)))


@settings(deadline=None)
@given(multigraphs(max_n=6, max_edges=10))
def test_delooped_cone_is_loopless_with_extra_edges(g):
    cone = delooped_cone(g)
    assert cone.is_loopless
    assert cone.m == g.m + g.n


def test_canonical_form_ignores_edge_order():
    assert canonical_form(MultiGraph(3, ((0, 1), (1, 2), (0, 2)))) == canonical_form(MultiGraph(3, ((1, 2), (0, 2), (0, 1))))


def test_canonical_form_star_relabelings():
    star = generate_family("star", 3)
    forms = {canonical_form(permute(star, sigma)) for sigma in itertools.permutations(range(3))}
    assert forms == {canonical_form(generate_family("path", 3))}


def test_canonical_form_distinguishes_multiplicity():
    doubled_path = MultiGraph(3, ((0, 1), (0, 1), (1, 2)))
    assert canonical_form(K3) != canonical_form(doubled_path)
    assert canonical_form(MultiGraph(1, ((0, 0),))) != canonical_form(MultiGraph(1, ()))


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_n=5, max_edges=8))
def test_canonical_form_invariant_under_all_permutations(g):
    form = canonical_form(g)
    for sigma in itertools.permutations(range(g.n)):
        assert canonical_form(permute(g, sigma)) == form


@settings(max_examples=60, deadline=None)
@given(multigraphs(max_n=4, max_edges=5), multigraphs(max_n=4, max_edges=5))
def test_canonical_form_complete(g, h):
    isomorphic = g.n == h.n and any(
        sorted(permute(g, sigma).edges) == sorted(h.edges) for sigma in itertools.permutations(range(g.n))
    )
    assert (canonical_form(g) == canonical_form(h)) == isomorphic


def test_canonical_form_budget():
    configure(Settings(max_canonical_vertices=3))
    with pytest.raises(BudgetExceededError):
        canonical_form(generate_family("path", 4))


def test_spanning_tree_count_examples():
    assert spanning_tree_count(generate_family("complete", 5)) == 125
    assert spanning_tree_count(MultiGraph(3, ((0, 1),))) == 0
    assert spanning_tree_count(MultiGraph(2, ((0, 1), (0, 1)))) == 2
    assert spanning_tree_count(MultiGraph(1, ((0, 0),))) == 1
    assert spanning_tree_count(MultiGraph(0, ())) == 0


def test_spanning_forest_counts_examples():
    assert sum(spanning_forest_counts(generate_family("complete", 4))) == 38
    assert spanning_forest_counts(generate_family("complete", 5))[2] == 110
    assert spanning_forest_counts(generate_family("path", 4))[1] == 1


def test_spanning_forests_match_brute_force():
    k5 = generate_family("complete", 5)
    assert spanning_forest_counts(k5) == brute_force_forests(k5)


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_n=5, max_edges=7))
def test_one_component_forests_are_spanning_trees(g):
    assert spanning_forest_counts(g)[1] == spanning_tree_count(g)


def test_spanning_forest_budget():
    configure(Settings(max_forest_edges=5))
    with pytest.raises(BudgetExceededError):
        spanning_forest_counts(generate_family("complete", 4))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_renyi_two_component_forests(n):
    assert spanning_forest_counts(generate_family("complete", n))[2] == renyi_two_component_forests(n)


def test_rooted_forests_of_triangle():
    # 3 trees rooted anywhere (3 each) + 3 single-edge forests (2 * 1 roots) + 1 empty forest
    assert rooted_spanning_forest_count(K3) == 16


def test_generate_family():
    k4 = generate_family("complete", 4)
    assert (k4.n, k4.m) == (4, 6)
    assert generate_family("loops", 3) == MultiGraph(1, ((0, 0),) * 3)
    petersen = generate_family("petersen")
    assert (petersen.n, petersen.m) == (10, 15)
    assert set(petersen.nonloop_degrees) == {3}
    with pytest.raises(InvalidGraphError):
        generate_family("wheel", 5)


def test_components_and_disjoint_union():
    g = disjoint_union(generate_family("loops", 2), K3)
    assert g.components() == [[0], [1, 2, 3]]
    assert g.loop_total == 2
    assert mask_of([1, 3]) == 0b1010


def test_to_networkx_keeps_multiplicity():
    g = MultiGraph(2, ((0, 1), (0, 1), (1, 1)))
    assert g.to_networkx().number_of_edges() == 3
