import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from strategies import graphs, specs
from theta_extremal import kernels
from theta_extremal.detect import Embedding, canonical_cycle, detect_theta, enumerate_cycles, verify_embedding
from theta_extremal.errors import SpecError
from theta_extremal.graph import complete_bipartite, complete_graph, cycle_graph, from_edge_list
from theta_extremal.theta import build_theta, validate_spec

BACKENDS = kernels.available_backends()


def spec(*ks):
    return validate_spec(ks)


def all_specs(max_total):
    """Every valid spec with total length at most ``max_total``."""
    out = []

    def rec(prefix, low, total):
        if len(prefix) >= 2:
            try:
                out.append(validate_spec(prefix))
            except SpecError:
                pass
        for k in range(low, max_total - total + 1):
            if prefix and k % 2 != prefix[0] % 2:
                continue
            rec(prefix + [k], k, total + k)

    rec([], 1, 0)
    return out


def test_identity_copy():
    s = spec(3, 5, 5)
    res = detect_theta(build_theta(s).graph, s)
    assert res.status == "found"
    assert verify_embedding(build_theta(s).graph, s, res.embedding)


def test_k23():
    assert detect_theta(complete_bipartite(2, 3), spec(2, 2, 2)).found


def test_c8():
    c8 = cycle_graph(8)
    assert detect_theta(c8, spec(4, 4)).found
    assert detect_theta(c8, spec(2, 6)).found
    res = detect_theta(c8, spec(3, 5, 5))
    assert res.is_free and res.embedding is None


def test_c8_no_extra_copies():
    # a cycle is not a theta with three paths
    res = detect_theta(cycle_graph(8), spec(2, 2, 4))
    assert res.status == "exhausted" and not res.found


def test_bad_arguments():
    with pytest.raises(ValueError):
        detect_theta(cycle_graph(4), spec(2, 2), mode="some")
    with pytest.raises(ValueError):
        detect_theta(cycle_graph(4), spec(2, 2), budget=0)


def test_budget_is_inconclusive():
    res = detect_theta(complete_graph(9), spec(2, 2, 2, 2), "count", budget=5)
    assert res.status == "budget"
    assert not res.is_free


def test_counts():
    # K4 has three 4-cycles, each with two choices of pole pair
    assert detect_theta(complete_graph(4), spec(2, 2), "count").count == 6
    # K_{2,3}: one copy of theta(2,2,2)
    assert detect_theta(complete_bipartite(2, 3), spec(2, 2, 2), "count").count == 1


def test_all_mode_verified():
    g = complete_bipartite(3, 3)
    res = detect_theta(g, spec(2, 2), "all")
    assert res.status == "exhausted"
    assert len(res.embeddings) == res.count == 18
    assert all(verify_embedding(g, spec(2, 2), e) for e in res.embeddings)


@pytest.mark.parametrize("s", all_specs(20), ids=str)
def test_finds_itself(s):
    g = build_theta(s).graph
    assert detect_theta(g, s).found
    assert detect_theta(g, s, "count").count >= 1


@settings(max_examples=150)
@given(graphs(max_n=10), specs(max_paths=4, max_len=8, max_total=10))
def test_agrees_with_brute_force(g, s):
    res = detect_theta(g, s)
    assert res.status in ("found", "exhausted")
    want = oracles.has_theta(g.vertex_count, list(g.edges()), s.lengths)
    assert res.found == want
    if res.found:
        assert verify_embedding(g, s, res.embedding)


@settings(max_examples=60)
@given(graphs(max_n=7), specs(max_paths=3, max_len=5, max_total=8))
def test_count_agrees_with_brute_force(g, s):
    res = detect_theta(g, s, "count")
    assert res.status == "exhausted"
    assert res.count == oracles.count_theta(g.vertex_count, list(g.edges()), s.lengths)


@given(graphs(min_n=4, max_n=9), specs(max_paths=3, max_len=6, max_total=12))
def test_backend_parity(g, s):
    out = []
    for b in BACKENDS:
        res = detect_theta(g, s, "all", backend=b)
        out.append((res.status, res.expansions, res.count, res.embeddings))
    assert all(o == out[0] for o in out)


@given(graphs(min_n=4, max_n=9), st.integers(1, 400))
def test_backend_parity_under_budget(g, budget):
    s = spec(2, 2, 2)
    out = {(r.status, r.expansions, r.count) for r in (detect_theta(g, s, "count", budget, b) for b in BACKENDS)}
    assert len(out) == 1


def test_verify_embedding_examples():
    c4 = cycle_graph(4)
    s = spec(2, 2)
    good = Embedding((0, 2), ((0, 1, 2), (0, 3, 2)))
    assert verify_embedding(c4, s, good)
    assert not verify_embedding(c4, s, Embedding((0, 2), ((0, 1, 2), (0, 1, 2))))
    assert not verify_embedding(c4, s, Embedding((0, 2), ((0, 1, 2), (0, 3, 0, 3, 2))))
    assert not verify_embedding(c4, s, Embedding((0, 2), ((0, 1, 2),)))
    assert not verify_embedding(c4, s, Embedding((0, 0), ((0, 1, 0), (0, 3, 0))))


def test_verify_rejects_shared_inner_vertex():
    g = complete_graph(5)
    s = spec(2, 2, 2)
    assert verify_embedding(g, s, Embedding((0, 1), ((0, 2, 1), (0, 3, 1), (0, 4, 1))))
    assert not verify_embedding(g, s, Embedding((0, 1), ((0, 2, 1), (0, 3, 1), (0, 3, 1))))
    assert not verify_embedding(g, s, Embedding((0, 1), ((0, 2, 1), (0, 3, 1), (1, 4, 0))))


def test_embedding_json_round_trip():
    e = Embedding((0, 2), ((0, 1, 2), (0, 3, 2)))
    assert Embedding.from_json(e.to_json()) == e
    assert Embedding.from_json('{"poles": [0, 2], "paths": [[0, 1, 2], [0, 3, 2]]}') == e
    with pytest.raises(ValueError):
        Embedding.from_json({"poles": [0], "paths": []})


def test_cycle_examples():
    assert len(enumerate_cycles(cycle_graph(8), 8)) == 1
    assert len(enumerate_cycles(complete_graph(4), 4)) == 3
    assert len(enumerate_cycles(complete_bipartite(2, 3), 4)) == 3
    with pytest.raises(ValueError):
        enumerate_cycles(cycle_graph(4), 2)


def test_canonical_cycle():
    assert canonical_cycle([3, 1, 2, 0]) == (0, 2, 1, 3)
    assert canonical_cycle((2, 0, 1)) == (0, 1, 2)


@settings(max_examples=60)
@given(graphs(max_n=8), st.sampled_from([3, 4, 5, 6, 7, 8]))
def test_cycles_agree_with_brute_force(g, length):
    got = enumerate_cycles(g, length)
    assert set(got) == oracles.cycles(g.vertex_count, list(g.edges()), length)
    assert len(set(got)) == len(got)
    for b in BACKENDS:
        assert enumerate_cycles(g, length, backend=b).cycles == got.cycles


def test_pattern_larger_than_host():
    res = detect_theta(from_edge_list(3, [(0, 1)]), spec(3, 5, 5))
    assert res.is_free and res.expansions == 0
