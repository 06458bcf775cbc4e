from itertools import combinations

import pytest

from theta_extremal.errors import NotPrimePower, SizeLimit
from theta_extremal.geometry import (
    build_incidence_graph,
    c8_pattern_holds,
    freeness_certificate,
    moment_curve,
    verify_c8_direction_pattern,
    write_vertex_table,
)
from theta_extremal.graph import degree_stats


@pytest.fixture(scope="module", params=[2, 3, 4])
def ig(request):
    return build_incidence_graph(request.param)


def test_sizes(ig):
    q = ig.q
    g = ig.graph
    assert g.vertex_count == 2 * q**4
    assert g.edge_count == q**5
    assert set(g.degrees()) == {q}
    assert ig.sides.validate(g)


def test_degree_stats_q3():
    s = degree_stats(build_incidence_graph(3).graph)
    assert (s.min, s.max, s.mean) == (3, 3, 3)


def test_incidence_matches_line_equation(ig):
    f = ig.field
    for v in range(ig.point_count, ig.graph.vertex_count):
        line = ig.line_of(v)
        assert line.base[0] == 0
        pts = ig.line_points(line)
        assert len(set(pts)) == ig.q
        assert sorted(ig.point_vertex(x) for x in pts) == list(ig.graph.neighbors(v))
        assert ig.line_vertex(line) == v


def test_one_line_per_direction(ig):
    for x in range(ig.point_count):
        dirs = sorted(ig.direction(v) for v in ig.graph.neighbors(x))
        assert dirs == list(range(ig.q))


def test_parallel_classes_partition(ig):
    q = ig.q
    classes = ig.parallel_classes
    assert len(classes) == q and all(len(c) == q**3 for c in classes)
    for cls in classes:
        covered = [x for v in cls for x in ig.graph.neighbors(v)]
        assert sorted(covered) == list(range(q**4))


def test_distinct_directions_meet_at_most_once():
    ig = build_incidence_graph(3)
    g = ig.graph
    lines = range(ig.point_count, g.vertex_count)
    for a, b in combinations(lines, 2):
        common = g.neighbor_set(a) & g.neighbor_set(b)
        if ig.direction(a) == ig.direction(b):
            assert not common
        else:
            assert len(common) <= 1


def test_coordinates_round_trip(ig):
    for v in range(0, ig.point_count, 7):
        assert ig.point_vertex(ig.point_coords(v)) == v


def test_bad_q():
    with pytest.raises(NotPrimePower):
        build_incidence_graph(6)
    with pytest.raises(SizeLimit):
        build_incidence_graph(17)


@pytest.mark.parametrize("q", [2, 3])
def test_c8_exhaustive(q):
    rep = verify_c8_direction_pattern(build_incidence_graph(q))
    assert rep.ok and rep.cycles_checked > 0
    assert rep.to_json()["violations"] == 0


def test_c8_sample_deterministic():
    ig = build_incidence_graph(3)
    a = verify_c8_direction_pattern(ig, "sample", seed=4, count=10)
    b = verify_c8_direction_pattern(ig, "sample", seed=4, count=10)
    assert a.to_json() == b.to_json()
    assert a.ok and a.starts == 10
    full = set(verify_c8_direction_pattern(ig).violations)
    assert not full
    with pytest.raises(ValueError):
        verify_c8_direction_pattern(ig, "some")


def test_parallelogram():
    ig = build_incidence_graph(3)
    f = ig.field
    v0, v1 = moment_curve(f, 0), moment_curve(f, 1)
    add = lambda a, b: tuple(f.add(x, y) for x, y in zip(a, b))
    x = (0, 1, 2, 0)
    pts = [x, add(x, v0), add(add(x, v0), v1), add(x, v1)]
    pv = [ig.point_vertex(p) for p in pts]

    def line_through(p, z):
        return next(v for v in ig.graph.neighbors(p) if ig.direction(v) == z)

    lines = [line_through(pv[0], 0), line_through(pv[1], 1), line_through(pv[2], 0), line_through(pv[3], 1)]
    assert lines[0] == line_through(pv[1], 0) and lines[2] == line_through(pv[3], 0)
    assert lines[1] == line_through(pv[2], 1) and lines[3] == line_through(pv[0], 1)
    cycle = [pv[0], lines[0], pv[1], lines[1], pv[2], lines[2], pv[3], lines[3]]
    assert len(set(cycle)) == 8
    assert all(ig.graph.has_edge(cycle[i], cycle[(i + 1) % 8]) for i in range(8))
    assert c8_pattern_holds(ig, cycle)
    assert c8_pattern_holds(ig, cycle[1:] + cycle[:1])


def test_pattern_rejects_wrong_directions():
    ig = build_incidence_graph(3)
    q4 = ig.point_count
    fake = [0, q4, 1, q4 + 27, 2, q4 + 54, 3, q4 + 1]  # directions 0, 1, 2, 0
    assert not c8_pattern_holds(ig, fake)


def test_freeness_q2():
    rep = freeness_certificate(2)
    assert rep["verdict"] == "free (exhausted)"
    assert rep["status"] == "exhausted"


def test_freeness_budget_label():
    rep = freeness_certificate(3, budget=1000)
    assert rep["verdict"] == "no copy found (budget)"


def test_vertex_table():
    ig = build_incidence_graph(2)
    rows = write_vertex_table(ig).splitlines()
    assert len(rows) == 1 + 32
    assert rows[1].split(",")[1] == "point"
    assert rows[-1].split(",")[1] == "line"
