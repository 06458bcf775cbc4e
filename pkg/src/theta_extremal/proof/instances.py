"""Seeded generators for layered instances used by tests and CLI fixtures."""

from __future__ import annotations

import random
from fractions import Fraction

from ..detect import detect_theta
from ..graph import Graph, LayeredGraph, bfs_layers, from_edge_list
from ..theta import ThetaSpec
from .trees import AlmostTreeCert


def _tree_edges(d: int, s: int):
    edges, layers, block = [], [[0]], {}
    nxt = 1
    for i in range(s):
        layer = []
        for v in layers[-1]:
            for _ in range(d):
                edges.append((v, nxt))
                block[nxt] = nxt if i == 0 else block[v]
                layer.append(nxt)
                nxt += 1
        layers.append(layer)
    return edges, layers, block, nxt


def almost_tree(d: int, s: int, rng: random.Random, merge: float) -> AlmostTreeCert:
    """Regular almost-tree of type ``(d, s + 1)``.

    Every layer-s vertex gets ``d`` child slots; with probability ``merge`` a
    top vertex takes up to ``d`` slots from leaves in distinct blocks.
    """
    edges, layers, block, nxt = _tree_edges(d, s)
    slots = [x for x in layers[-1] for _ in range(d)]
    rng.shuffle(slots)
    while slots:
        group = [slots.pop()]
        if d > 1 and rng.random() < merge:
            want = rng.randint(2, d)
            for y in list(slots):
                if len(group) >= want:
                    break
                if y not in group and all(block[y] != block[z] for z in group):
                    group.append(y)
                    slots.remove(y)
        edges.extend((x, nxt) for x in group)
        nxt += 1
    g = from_edge_list(nxt, edges)
    return AlmostTreeCert(bfs_layers(g, 0), d, s + 1)


def free_almost_tree(
    spec: ThetaSpec, d: int, s: int, rng: random.Random, attempts: int = 40, budget: int = 10**7
) -> AlmostTreeCert:
    """Almost-tree grown by merging top vertices while it stays spec-free.

    Starts from the pure tree (each leaf with ``d`` private children) and tries
    ``attempts`` random merges of two top vertices whose parents lie in
    disjoint sets of blocks; a merge that creates a copy (or leaves the search
    undecided) is undone.
    """
    edges, layers, block, nxt = _tree_edges(d, s)
    parents: list[list[int]] = []
    for x in layers[-1]:
        for _ in range(d):
            parents.append([x])

    def build(ps):
        es = list(edges)
        for i, group in enumerate(ps):
            es.extend((x, nxt + i) for x in group)
        return from_edge_list(nxt + len(ps), es)

    for _ in range(attempts):
        if len(parents) < 2:
            break
        i, j = rng.sample(range(len(parents)), 2)
        a, b = parents[i], parents[j]
        if {block[x] for x in a} & {block[x] for x in b}:
            continue
        trial = [p for k, p in enumerate(parents) if k not in (i, j)] + [sorted(a + b)]
        res = detect_theta(build(trial), spec, "first", budget)
        if res.status == "exhausted" and not res.found:
            parents = trial
    g = build(parents)
    return AlmostTreeCert(bfs_layers(g, 0), d, s + 1)


def growth_instance(d: int, s: int, C0, C1, rng: random.Random, tries: int = 100) -> LayeredGraph:
    """Layered host meeting (A), (B), (C): a regular tree of type ``(d, s)``
    whose leaves draw between ``d`` and ``C0^2 d`` children from a shared pool."""
    hi = int(Fraction(C0) ** 2 * d)
    for _ in range(tries):
        edges, layers, _, nxt = _tree_edges(d, s)
        leaves = layers[-1]
        pool_size = rng.randint(d, max(d, len(leaves) * hi))
        pool = list(range(nxt, nxt + pool_size))
        top = []
        for x in leaves:
            c = rng.randint(d, min(hi, pool_size))
            for y in rng.sample(pool, c):
                top.append((x, y))
        used = sorted({y for _, y in top})
        pos = {y: nxt + i for i, y in enumerate(used)}
        top = [(x, pos[y]) for x, y in top]
        g = from_edge_list(nxt + len(used), edges + top)
        if len(top) <= Fraction(C1) * (len(leaves) + len(used)):
            return bfs_layers(g, 0)
    raise RuntimeError("could not meet condition (C); raise C1")


def bipartite_star_instance(m: int, d: int, C: int, rng: random.Random) -> tuple[Graph, list[int], list[int]]:
    """Centres ``0..m-1`` with degrees in ``[d, C d]`` into a pool of at least
    ``m d`` vertices, every pool vertex covered."""
    pool_size = rng.randint(m * d, m * d + m)
    pool = list(range(m, m + pool_size))
    nbrs = [set() for _ in range(m)]
    # cover the pool first, then top every centre up to a random target degree
    order = pool[:]
    rng.shuffle(order)
    targets = [min(rng.randint(d, C * d), pool_size) for _ in range(m)]
    for w in order:
        room = [v for v in range(m) if len(nbrs[v]) < C * d]
        if not room:
            break
        nbrs[rng.choice(room)].add(w)
    for v in range(m):
        while len(nbrs[v]) < targets[v]:
            nbrs[v].add(rng.choice(pool))
    covered = set().union(*nbrs)
    pool = [w for w in pool if w in covered]
    relabel = {w: m + i for i, w in enumerate(pool)}
    edges = [(v, relabel[w]) for v in range(m) for w in nbrs[v]]
    g = from_edge_list(m + len(pool), edges)
    return g, list(range(m)), list(range(m, m + len(pool)))
