"""Exact extremal numbers at tiny n, certified lower-bound search, and the
edge-count scaling of the moment-curve family."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .canon import canonical_form, canonical_graph
from .detect import DEFAULT_BUDGET, detect_theta
from .errors import SizeLimit
from .geometry import build_incidence_graph
from .graph import Graph, complete_graph, from_edge_list
from .graph6 import encode_graph6
from .theta import ThetaSpec, k_star

MAX_EXACT_N = 9
MAX_SEARCH_N = 200


@dataclass
class ExtremalResult:
    n: int
    spec: ThetaSpec
    max_edges: int
    witness: Graph
    method: str
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "spec": str(self.spec),
            "max_edges": self.max_edges,
            "method": self.method,
            "witness_graph6": encode_graph6(self.witness),
            **self.meta,
        }


def _certify_free(g: Graph, spec: ThetaSpec, budget: int = DEFAULT_BUDGET) -> bool:
    res = detect_theta(g, spec, "first", budget)
    if res.status == "budget":
        raise RuntimeError(f"freeness of a {g.vertex_count}-vertex graph undecided within budget")
    return res.is_free


def ex_exhaustive(n: int, spec: ThetaSpec) -> ExtremalResult:
    """Exact ``ex(n, spec)`` by augmenting isomorphism classes one edge at a time.

    Level ``m`` holds one representative per isomorphism class of spec-free
    graphs with ``m`` edges; every free graph arises from a free graph with one
    edge less, so the last nonempty level gives the extremal number.
    """
    if n > MAX_EXACT_N:
        raise SizeLimit(f"exact search is limited to n <= {MAX_EXACT_N}")
    if n < 0:
        raise ValueError("n must be non-negative")
    if n < spec.vertex_count:
        return ExtremalResult(n, spec, comb(n, 2), complete_graph(n), "exhaustive", {"classes": None})
    level = {canonical_form(Graph.empty(n)): Graph.empty(n)}
    classes = 1
    while True:
        nxt = {}
        for g in level.values():
            for u in range(n):
                for v in range(u + 1, n):
                    if g.has_edge(u, v):
                        continue
                    h = canonical_graph(g.with_edge(u, v))
                    key = canonical_form(h)
                    if key in nxt:
                        continue
                    if _certify_free(h, spec):
                        nxt[key] = h
        if not nxt:
            break
        classes += len(nxt)
        level = nxt
    best = min(level.items())[1]
    return ExtremalResult(n, spec, best.edge_count, best, "exhaustive", {"classes": classes})


def _ball(adj: list[set], root: int, radius: int) -> list[int]:
    seen = {root}
    frontier = [root]
    for _ in range(radius):
        nxt = []
        for v in frontier:
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(seen)


def _contains_near(adj, u, spec, radius, budget) -> bool:
    verts = _ball(adj, u, radius)
    pos = {v: i for i, v in enumerate(verts)}
    sub = from_edge_list(len(verts), [(pos[a], pos[b]) for a in verts for b in adj[a] if b in pos and a < b])
    res = detect_theta(sub, spec, "first", budget)
    return res.status != "exhausted" or res.found


def ex_search_lower(
    n: int,
    spec: ThetaSpec,
    budget: int = 2000,
    seed: int = 0,
    remove_every: int = 25,
) -> ExtremalResult:
    """Certified lower bound for ``ex(n, spec)`` by a seeded hill climb.

    ``budget`` is the number of moves. Each move adds a random non-edge and
    keeps it only if no copy appears near the new edge; every ``remove_every``
    moves a random edge is dropped instead. The best graph seen is certified
    free by an exhaustive search before it is returned.
    """
    if n > MAX_SEARCH_N:
        raise SizeLimit(f"search is limited to n <= {MAX_SEARCH_N}")
    if n < spec.vertex_count:
        g = complete_graph(n)
        return ExtremalResult(n, spec, g.edge_count, g, "search", {"seed": seed, "budget": budget})
    rng = random.Random(seed)
    # any copy through a vertex lies within this distance of it
    lens = spec.lengths
    radius = (lens[-2] + lens[-1]) // 2
    adj = [set() for _ in range(n)]
    edges: list[tuple[int, int]] = []
    best = []
    for step in range(1, budget + 1):
        if edges and step % remove_every == 0:
            i = rng.randrange(len(edges))
            a, b = edges[i]
            edges[i] = edges[-1]
            edges.pop()
            adj[a].discard(b)
            adj[b].discard(a)
            continue
        u, v = rng.sample(range(n), 2)
        if v in adj[u]:
            continue
        adj[u].add(v)
        adj[v].add(u)
        if _contains_near(adj, u, spec, radius, DEFAULT_BUDGET):
            adj[u].discard(v)
            adj[v].discard(u)
            continue
        edges.append((min(u, v), max(u, v)))
        if len(edges) > len(best):
            best = sorted(edges)
    g = from_edge_list(n, best)
    if not _certify_free(g, spec):
        raise RuntimeError("search produced a graph containing the pattern")
    return ExtremalResult(n, spec, g.edge_count, g, "search", {"seed": seed, "budget": budget})


@dataclass(frozen=True)
class ScalingRow:
    q: int
    n: int
    edges: int
    bound: int
    ratio: Fraction

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "edges": self.edges, "bound": self.bound, "ratio": str(self.ratio)}


def _exact_root(x: int, k: int) -> int:
    r = round(x ** (1 / k))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**k == x:
            return c
    raise ValueError(f"{x} is not a perfect {k}-th power")


def scaling_report(spec: ThetaSpec, q_list) -> list[ScalingRow]:
    """Edge counts of the incidence graphs against ``(n/2)^(1 + 1/k*)``."""
    ks = k_star(spec)
    rows = []
    for q in q_list:
        ig = build_incidence_graph(q)
        n = ig.graph.vertex_count
        half = n // 2
        bound = _exact_root(half, ks) ** (ks + 1)
        rows.append(ScalingRow(q, n, ig.graph.edge_count, bound, Fraction(ig.graph.edge_count, bound)))
    return rows
