import random
from fractions import Fraction
from itertools import combinations
from math import ceil

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import graphs, random_graph
from theta_extremal.errors import PreconditionError
from theta_extremal.graph import (
    BipartitionTag,
    GraphView,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    from_edge_list,
    path_graph,
    star_graph,
)
from theta_extremal.proof import (
    all_labeled_trees,
    extract_disjoint_stars,
    greedy_embed_tree,
    is_tree,
    is_tree_embedding,
    peel_to_min_degree,
    regularize_degrees,
)
from theta_extremal.proof.instances import bipartite_star_instance


def core_oracle(g, ell):
    """Fixed point of deleting every low-degree vertex at once."""
    alive = set(g.vertices())
    while True:
        low = {v for v in alive if len(g.neighbor_set(v) & alive) < ell}
        if not low:
            return alive
        alive -= low


def test_peel_examples():
    assert peel_to_min_degree(complete_graph(5), 2).vertices() == tuple(range(5))
    assert peel_to_min_degree(star_graph(5), 2).is_empty()


@given(graphs(max_n=14), st.integers(0, 5))
def test_peel_is_the_core(g, ell):
    view = peel_to_min_degree(g, ell)
    assert set(view.vertices()) == core_oracle(g, ell)
    if not view.is_empty():
        assert view.min_degree() >= ell


def test_peel_nonempty_under_density(rng):
    for _ in range(300):
        ell = rng.choice([2, 3])
        g = random_graph(20, rng.randint(ell * 20, 120), rng)
        view = peel_to_min_degree(g, ell)
        assert not view.is_empty() and view.min_degree() >= ell


def test_peel_views_compose():
    g = complete_graph(6)
    sub = GraphView(g, [0, 1, 2])
    assert peel_to_min_degree(sub, 2).vertices() == (0, 1, 2)
    assert peel_to_min_degree(sub, 3).is_empty()


def test_labeled_tree_counts():
    # Cayley: n^(n-2) labelled trees
    for n in range(1, 7):
        trees = all_labeled_trees(n)
        assert len(trees) == max(1, n ** (n - 2))
        assert all(is_tree(t) for t in trees)
    assert len(set(all_labeled_trees(5))) == 125


def test_embed_examples():
    img = greedy_embed_tree(complete_graph(4), star_graph(3))
    assert is_tree_embedding(complete_graph(4), star_graph(3), img)
    host = complete_bipartite(4, 4)
    sides = BipartitionTag.from_coloring(host)
    p4 = path_graph(4)
    for side in (0, 1):
        img = greedy_embed_tree(host, p4, anchor=(0, side), sides=sides)
        assert is_tree_embedding(host, p4, img)
        assert sides.side[img[0]] == side


def test_embed_preconditions():
    with pytest.raises(PreconditionError):
        greedy_embed_tree(cycle_graph(8), path_graph(4))
    with pytest.raises(PreconditionError):
        greedy_embed_tree(complete_bipartite(3, 3), path_graph(4), anchor=(0, 0))
    with pytest.raises(ValueError):
        greedy_embed_tree(complete_graph(4), cycle_graph(3))


@pytest.mark.parametrize("ell", [1, 2, 3, 4, 5])
def test_every_tree_every_anchor(ell):
    host = complete_bipartite(ell, ell + 1)
    sides = BipartitionTag.from_coloring(host)
    for tree in all_labeled_trees(ell + 1):
        for t in range(ell + 1):
            for side in (0, 1):
                img = greedy_embed_tree(host, tree, anchor=(t, side), sides=sides)
                assert is_tree_embedding(host, tree, img)
                assert sides.side[img[t]] == side


def test_random_trees_into_cores(rng):
    trees = all_labeled_trees(5)
    done = 0
    while done < 200:
        g = random_graph(16, rng.randint(40, 80), rng)
        core = peel_to_min_degree(g, 4)
        if core.is_empty():
            continue
        tree = rng.choice(trees)
        img = greedy_embed_tree(core, tree)
        assert is_tree_embedding(core, tree, img)
        done += 1


def test_stars_private_leaves():
    g = from_edge_list(9, [(0, 3), (0, 4), (1, 5), (1, 6), (2, 7), (2, 8)])
    stars = extract_disjoint_stars(g, [0, 1, 2], range(3, 9), 2, 1)
    assert [(s.center, s.leaves) for s in stars] == [(0, (3, 4)), (1, (5, 6)), (2, (7, 8))]


def test_stars_shared_leaves():
    edges = [(0, w) for w in (3, 4, 5, 6)] + [(1, w) for w in (5, 6, 7, 8)] + [(2, w) for w in (8, 9, 10, 11)]
    g = from_edge_list(15, edges)
    stars = extract_disjoint_stars(g, [0, 1, 2], range(3, 15), 4, 2)
    # greedy by hand: 0 takes 3,4 and deletes 3..6; 1 takes 7,8; 2 takes 9,10
    assert [(s.center, s.leaves) for s in stars] == [(0, (3, 4)), (1, (7, 8)), (2, (9, 10))]


def test_stars_pool_too_small():
    with pytest.raises(PreconditionError):
        extract_disjoint_stars(complete_bipartite(2, 4), [0, 1], range(2, 6), 4, 1)


def test_stars_degree_out_of_range():
    with pytest.raises(PreconditionError):
        extract_disjoint_stars(complete_bipartite(2, 8), [0, 1], range(2, 10), 2, 2)


def test_stars_property(rng):
    for _ in range(300):
        m, d, C = rng.randint(1, 8), rng.randint(1, 5), rng.randint(1, 3)
        g, centers, pool = bipartite_star_instance(m, d, C, rng)
        if len(pool) < m * d:
            continue
        stars = extract_disjoint_stars(g, centers, pool, d, C)
        assert len(stars) >= ceil(Fraction(m, C + 1))
        used = []
        for s in stars:
            assert len(s.leaves) >= ceil(Fraction(d, C))
            assert all(g.has_edge(s.center, w) and w in pool for w in s.leaves)
            used.extend((s.center,) + s.leaves)
        assert len(used) == len(set(used))


def test_regular_graph_kept_whole():
    for g in (cycle_graph(7), complete_graph(5), complete_bipartite(3, 3)):
        view, rep = regularize_degrees(g)
        assert view.edge_count == g.edge_count
        assert rep.retained == 1


def test_star_plus_triangle():
    g = from_edge_list(13, [(0, i) for i in range(1, 10)] + [(10, 11), (11, 12), (12, 10)])
    # oracle: a ratio <= 2 induced subgraph with at least 3 edges exists
    best = 0
    for r in range(2, 14):
        for sub in combinations(range(13), r):
            view = GraphView(g, sub)
            if view.edge_count and view.min_degree() >= 1 and view.max_degree() <= 2 * view.min_degree():
                best = max(best, view.edge_count)
        if best >= 3:
            break
    assert best >= 3
    view, rep = regularize_degrees(g, 2)
    assert view.vertices() == (10, 11, 12)
    assert rep.retained == Fraction(3, 12)


def test_regularize_preconditions():
    with pytest.raises(PreconditionError):
        regularize_degrees(cycle_graph(4), 1)
    with pytest.raises(PreconditionError):
        regularize_degrees(from_edge_list(3, []))


@settings(max_examples=60)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, Fraction(5, 2)]))
def test_regularize_ratio_holds(seed, ratio):
    r = random.Random(seed)
    g = random_graph(50, r.randint(1, 300), r)
    view, rep = regularize_degrees(g, ratio)
    assert not view.is_empty()
    assert view.min_degree() >= 1
    assert view.max_degree() <= ratio * view.min_degree()
    assert rep.edges == view.edge_count and rep.retained == Fraction(view.edge_count, g.edge_count)
