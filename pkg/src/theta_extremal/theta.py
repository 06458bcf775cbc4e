"""Generalized theta graphs: validated length specs, k*, bound exponents, explicit builds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import MultiplicityError, ParityError, SpecError
from .graph import Graph, from_edge_list


@dataclass(frozen=True)
class ThetaSpec:
    """Sorted path lengths ``k1 <= ... <= kl`` of a theta graph."""

    lengths: tuple[int, ...]

    def __post_init__(self):
        ls = self.lengths
        if len(ls) < 2:
            raise SpecError("a theta graph needs at least two paths")
        if any(not isinstance(k, int) or isinstance(k, bool) or k < 1 for k in ls):
            raise SpecError(f"path lengths must be positive integers, got {ls}")
        if list(ls) != sorted(ls):
            raise SpecError("lengths must be sorted; use validate_spec")
        if len({k % 2 for k in ls}) != 1:
            raise ParityError(f"path lengths {ls} do not share parity")
        if ls.count(1) > 1:
            raise MultiplicityError("length 1 may appear at most once")

    @property
    def paths(self) -> int:
        return len(self.lengths)

    @property
    def vertex_count(self) -> int:
        return 2 + sum(k - 1 for k in self.lengths)

    @property
    def edge_count(self) -> int:
        return sum(self.lengths)

    def __str__(self) -> str:
        return ",".join(map(str, self.lengths))


def validate_spec(lengths: Iterable[int]) -> ThetaSpec:
    return ThetaSpec(tuple(sorted(lengths)))


def parse_spec(text: str) -> ThetaSpec:
    try:
        lengths = [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError:
        raise SpecError(f"cannot parse theta spec {text!r}; expected e.g. '3,5,5'") from None
    return validate_spec(lengths)


def k_star(spec: ThetaSpec) -> int:
    # sorted, so the minimum pairwise sum is k1 + k2; parity makes it even
    return (spec.lengths[0] + spec.lengths[1]) // 2


def upper_bound_exponent(spec: ThetaSpec) -> Fraction:
    return 1 + Fraction(1, k_star(spec))


@dataclass(frozen=True)
class ThetaGraph:
    graph: Graph
    poles: tuple[int, int]
    paths: tuple[tuple[int, ...], ...]
    spec: ThetaSpec


def build_theta(spec: ThetaSpec) -> ThetaGraph:
    """Poles are 0 and 1; internal vertices are numbered path by path in spec order."""
    nxt = 2
    paths = []
    edges = []
    for k in spec.lengths:
        seq = [0] + list(range(nxt, nxt + k - 1)) + [1]
        nxt += k - 1
        paths.append(tuple(seq))
        edges.extend(zip(seq, seq[1:]))
    g = from_edge_list(nxt, edges)
    return ThetaGraph(g, (0, 1), tuple(paths), spec)
