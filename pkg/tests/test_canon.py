import random

from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import canonical_by_permutations
from strategies import graphs
from theta_extremal.canon import are_isomorphic, canonical_form, canonical_graph, canonical_labeling
from theta_extremal.graph import Graph, complete_bipartite, cycle_graph, from_edge_list, path_graph


def relabel(g, perm):
    return from_edge_list(g.vertex_count, [(perm[u], perm[v]) for u, v in g.edges()])


@given(graphs(max_n=6), graphs(max_n=6))
def test_agrees_with_permutation_oracle(g, h):
    if g.vertex_count != h.vertex_count:
        return
    same = canonical_by_permutations(g.vertex_count, list(g.edges())) == canonical_by_permutations(
        h.vertex_count, list(h.edges())
    )
    assert (canonical_form(g) == canonical_form(h)) == same
    assert are_isomorphic(g, h) == same


@settings(max_examples=60)
@given(graphs(max_n=9), st.randoms(use_true_random=False))
def test_invariant_under_relabelling(g, r):
    perm = list(range(g.vertex_count))
    r.shuffle(perm)
    h = relabel(g, perm)
    assert canonical_form(h) == canonical_form(g)
    assert canonical_graph(h) == canonical_graph(g)


@given(graphs(max_n=8))
def test_labelling_is_a_permutation(g):
    order = canonical_labeling(g)
    assert sorted(order) == list(range(g.vertex_count))
    assert canonical_graph(g).edge_count == g.edge_count


def test_small_cases():
    assert canonical_form(Graph.empty(0)) == (0, ())
    assert are_isomorphic(cycle_graph(6), complete_bipartite(3, 3).without_edge(0, 3).without_edge(1, 4).without_edge(2, 5))
    assert not are_isomorphic(path_graph(4), from_edge_list(4, [(0, 1), (0, 2), (0, 3)]))
    assert not are_isomorphic(cycle_graph(6), from_edge_list(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]))


def test_regular_graphs_need_individualisation():
    # two 3-regular graphs on 6 vertices: the prism and K_{3,3}
    prism = from_edge_list(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
    k33 = complete_bipartite(3, 3)
    assert not are_isomorphic(prism, k33)
    r = random.Random(3)
    perm = list(range(6))
    r.shuffle(perm)
    assert are_isomorphic(prism, relabel(prism, perm))
