import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import specs
from theta_extremal.errors import MultiplicityError, ParityError, SpecError
from theta_extremal.theta import ThetaSpec, build_theta, k_star, parse_spec, upper_bound_exponent, validate_spec


def test_validate_examples():
    assert validate_spec([5, 3, 5]).lengths == (3, 5, 5)
    with pytest.raises(ParityError):
        validate_spec([3, 4])
    with pytest.raises(MultiplicityError):
        validate_spec([1, 1, 3])


@pytest.mark.parametrize("bad", [[], [3], [0, 2], [-1, 1], [2.0, 2]])
def test_validate_spec_errors(bad):
    with pytest.raises(SpecError):
        validate_spec(bad)


def test_unsorted_direct_construction_rejected():
    with pytest.raises(SpecError):
        ThetaSpec((5, 3))


def test_parse():
    assert parse_spec("3, 5,5") == validate_spec([3, 5, 5])
    with pytest.raises(SpecError):
        parse_spec("3,a")


def test_k_star():
    assert k_star(validate_spec([3, 5, 5])) == 4
    assert k_star(validate_spec([2, 4, 6])) == 3
    for k in range(1 + 1, 11):
        assert k_star(validate_spec([k, k])) == k
    assert k_star(validate_spec([1, 3])) == 2


def test_exponent():
    assert upper_bound_exponent(validate_spec([3, 5, 5])) == Fraction(5, 4)
    assert upper_bound_exponent(validate_spec([2, 2])) == Fraction(3, 2)
    assert upper_bound_exponent(validate_spec([4, 4, 4])) == Fraction(5, 4)


@given(specs(), st.randoms(use_true_random=False))
def test_permutation_invariance(spec, r):
    lengths = list(spec.lengths)
    r.shuffle(lengths)
    other = validate_spec(lengths)
    assert k_star(other) == k_star(spec)
    assert upper_bound_exponent(other) == upper_bound_exponent(spec)


@pytest.mark.parametrize(
    "lengths, n, m", [([2, 2], 4, 4), ([3, 5, 5], 12, 13), ([2, 2, 2], 5, 6), ([1, 3], 4, 4)]
)
def test_build_sizes(lengths, n, m):
    th = build_theta(validate_spec(lengths))
    assert (th.graph.vertex_count, th.graph.edge_count) == (n, m)


def test_k23_shape():
    th = build_theta(validate_spec([2, 2, 2]))
    assert th.poles == (0, 1)
    assert sorted(th.graph.degrees()) == [2, 2, 2, 3, 3]


@given(specs())
def test_build_invariants(spec):
    th = build_theta(spec)
    g = th.graph
    assert th.poles == (0, 1)
    assert g.vertex_count == 2 + sum(k - 1 for k in spec.lengths)
    assert g.edge_count == sum(spec.lengths)
    assert g.is_bipartite()
    inner = [set(p[1:-1]) for p in th.paths]
    for i, p in enumerate(th.paths):
        assert (p[0], p[-1]) == (0, 1)
        assert len(p) - 1 == spec.lengths[i]
        assert all(g.has_edge(a, b) for a, b in zip(p, p[1:]))
        for j in range(i):
            assert not inner[i] & inner[j]
