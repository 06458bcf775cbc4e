import random

import pytest

from theta_extremal.detect import verify_embedding
from theta_extremal.geometry import build_incidence_graph
from theta_extremal.graph import from_edge_list
from theta_extremal.pipeline import run_prop31
from theta_extremal.proof.instances import almost_tree
from theta_extremal.theta import validate_spec

S355 = validate_spec([3, 5, 5])
S377 = validate_spec([3, 7, 7])


def stages(rep):
    return {s["stage"]: s for s in rep.stages}


def test_free_host_completes_without_embedding():
    rep = run_prop31(build_incidence_graph(3).graph, S355, 2, 2)
    assert rep.ok and rep.embedding is None
    st = stages(rep)
    assert st["bfs"]["layer_sizes"] == [1, 3, 6, 12, 12, 12, 8]
    assert st["classify"]["status"] == "skipped"
    assert st["embed"]["status"] == "skipped"
    assert st["almost_tree"]["status"] == "ok"


def test_planted_fixture_embeds():
    cert = almost_tree(3, 4, random.Random(3), 0.5)
    rep = run_prop31(cert.graph, S377, 100, 100, s=4)
    assert rep.ok
    st = stages(rep)
    assert st["classify"]["thick"] == 78 and st["classify"]["bound"] == 27
    assert st["embed"]["verified"] and st["embed"]["route"] == "thick"
    assert verify_embedding(cert.graph, S377, rep.embedding)
    assert rep.to_json()["embedding"]["poles"][0] == 0


@pytest.mark.parametrize("seed", range(5))
def test_embeddings_always_verified(seed):
    cert = almost_tree(3, 4, random.Random(seed), 0.6)
    rep = run_prop31(cert.graph, S377, 100, 100, s=4)
    assert rep.ok
    if rep.embedding is not None:
        assert verify_embedding(cert.graph, S377, rep.embedding)
    else:
        assert stages(rep)["embed"]["status"] == "skipped"


def test_layer_growth_is_exact():
    cert = almost_tree(2, 4, random.Random(0), 0.0)
    rep = run_prop31(cert.graph, S377, 100, 100, s=4)
    assert stages(rep)["prune"]["layer_growth"] == "2"


def test_pruning_reported():
    # every top vertex with >= 2 parents is bad
    cert = almost_tree(3, 4, random.Random(3), 0.5)
    rep = run_prop31(cert.graph, S377, 2, 100, s=4)
    st = stages(rep)
    assert st["badsets"]["sizes"]["5"] > 0
    assert st["prune"]["kept"] < cert.graph.vertex_count


def test_failures_name_the_stage():
    rep = run_prop31(from_edge_list(3, [(1, 2)]), S377, 2, 2, s=4)
    assert not rep.ok and rep.failed_stage == "grow"
    assert rep.stages[-1]["status"] == "failed"
    rep = run_prop31(build_incidence_graph(2).graph, S377, 2, 2, s=4)
    assert not rep.ok and rep.failed_stage in ("grow", "almost_tree")
