"""Degree-side lemmas: k-core peeling, greedy tree embedding, disjoint stars,
and a degree-regularising subgraph extractor."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil
from typing import NamedTuple

from ..errors import EmbeddingError, PreconditionError
from ..graph import BipartitionTag, Graph, GraphView, from_edge_list


def _as_view(g: Graph | GraphView) -> GraphView:
    return g if isinstance(g, GraphView) else GraphView(g)


def peel_to_min_degree(g: Graph | GraphView, ell: int) -> GraphView:
    """Repeatedly delete vertices of degree < ``ell``; the result is the ell-core."""
    view = _as_view(g)
    alive = set(view.vertices())
    deg = {v: view.degree(v) for v in alive}
    queue = deque(v for v in sorted(alive) if deg[v] < ell)
    removed = set(queue)
    while queue:
        v = queue.popleft()
        alive.discard(v)
        for u in view.base.neighbors(v):
            if u in alive and u not in removed:
                deg[u] -= 1
                if deg[u] < ell:
                    removed.add(u)
                    queue.append(u)
    return GraphView(view.base, alive)


def _tree_order(tree: Graph, root: int) -> list[tuple[int, int | None]]:
    order = [(root, None)]
    seen = {root}
    i = 0
    while i < len(order):
        t = order[i][0]
        for c in tree.neighbors(t):
            if c not in seen:
                seen.add(c)
                order.append((c, t))
        i += 1
    return order


def is_tree(g: Graph) -> bool:
    if g.vertex_count == 0:
        return False
    return g.edge_count == g.vertex_count - 1 and len(_tree_order(g, 0)) == g.vertex_count


def greedy_embed_tree(
    host: Graph | GraphView,
    tree: Graph,
    anchor: tuple[int, int] | None = None,
    sides: BipartitionTag | None = None,
) -> tuple[int, ...]:
    """Embed ``tree`` into a host of minimum degree >= |V(tree)| - 1.

    Tree vertices are placed in BFS order from the anchor (or vertex 0), each
    on the least unused host neighbour of its parent's image. ``anchor`` is
    ``(tree_vertex, side)``; the anchored vertex lands on that side of ``sides``.
    Returns the image of every tree vertex.
    """
    if not is_tree(tree):
        raise ValueError("pattern is not a tree")
    view = _as_view(host)
    ell = tree.vertex_count - 1
    if view.is_empty():
        raise PreconditionError("host is empty")
    if view.min_degree() < ell:
        raise PreconditionError(f"host minimum degree {view.min_degree()} is below {ell}")
    root, side = (anchor if anchor is not None else (0, None))
    if side is not None:
        if sides is None:
            raise PreconditionError("an anchored side needs a bipartition of the host")
        starts = [v for v in view.vertices() if sides.side[v] == side]
        if not starts:
            raise PreconditionError(f"host has no vertex on side {side}")
    else:
        starts = list(view.vertices())
    image = [-1] * tree.vertex_count
    used = set()
    for t, parent in _tree_order(tree, root):
        if parent is None:
            h = starts[0]
        else:
            h = next((u for u in view.neighbors(image[parent]) if u not in used), None)
            if h is None:  # impossible under the degree precondition
                raise EmbeddingError("greedy tree embedding ran out of neighbours")
        image[t] = h
        used.add(h)
    return tuple(image)


def is_tree_embedding(host: Graph | GraphView, tree: Graph, image) -> bool:
    view = _as_view(host)
    if len(image) != tree.vertex_count or len(set(image)) != len(image):
        return False
    if any(v not in view for v in image):
        return False
    return all(view.has_edge(image[a], image[b]) for a, b in tree.edges())


def all_labeled_trees(n: int) -> list[Graph]:
    """Every labelled tree on ``n`` vertices, via Pruefer sequences."""
    if n == 1:
        return [Graph.empty(1)]
    if n == 2:
        return [from_edge_list(2, [(0, 1)])]
    out = []
    for seq in product(range(n), repeat=n - 2):
        degree = [1] * n
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = min(v for v in range(n) if degree[v] == 1)
            edges.append((leaf, x))
            degree[leaf] -= 1
            degree[x] -= 1
        u, w = [v for v in range(n) if degree[v] == 1]
        edges.append((u, w))
        out.append(from_edge_list(n, edges))
    return out


class Star(NamedTuple):
    center: int
    leaves: tuple[int, ...]


def extract_disjoint_stars(
    bg: Graph, centers, pool, d: int, C: int | Fraction
) -> list[Star]:
    """Greedy vertex-disjoint stars centred in ``centers`` with leaves in ``pool``.

    Each star gets ``ceil(d / C)`` leaves; after a star is taken its centre and
    the centre's whole pool-neighbourhood are deleted. Requires ``|pool| >= m d``,
    every centre degree in ``[d, C d]``. When every pool vertex also has a
    centre neighbour, at least ``ceil(m / (C + 1))`` stars come out.
    """
    centers = sorted(set(centers))
    pool = set(pool)
    C = Fraction(C)
    m = len(centers)
    if d < 1 or C < 1:
        raise PreconditionError("need d >= 1 and C >= 1")
    if pool & set(centers):
        raise PreconditionError("centres and pool must be disjoint")
    if len(pool) < m * d:
        raise PreconditionError(f"|pool| = {len(pool)} < m*d = {m * d}")
    nbrs = {v: [u for u in bg.neighbors(v) if u in pool] for v in centers}
    for v in centers:
        if not d <= len(nbrs[v]) <= C * d:
            raise PreconditionError(f"centre {v} has degree {len(nbrs[v])} outside [{d}, {C * d}]")
    cs = set(centers)
    covered = all(any(u in cs for u in bg.neighbors(w)) for w in pool)
    need = ceil(Fraction(d) / C)
    available = set(pool)
    stars = []
    for v in centers:
        free = [u for u in nbrs[v] if u in available]
        if len(free) >= need:
            stars.append(Star(v, tuple(free[:need])))
            available.difference_update(nbrs[v])
    # the counting argument needs every pool vertex to see some centre
    guaranteed = ceil(Fraction(m) / (C + 1)) if covered else min(m, 1)
    if len(stars) < guaranteed:
        raise EmbeddingError(f"only {len(stars)} stars, lemma promises {guaranteed}")
    return stars


@dataclass(frozen=True)
class RegularizeReport:
    retained: Fraction
    edges: int
    min_degree: int
    max_degree: int
    source: str

    def to_json(self) -> dict:
        return {
            "retained": str(self.retained),
            "edges": self.edges,
            "min_degree": self.min_degree,
            "max_degree": self.max_degree,
            "source": self.source,
        }


def _repeel(view: GraphView, ratio: Fraction) -> GraphView:
    while not view.is_empty():
        lo, hi = view.min_degree(), view.max_degree()
        if lo >= 1 and hi <= ratio * lo:
            return view
        view = peel_to_min_degree(view, max(1, ceil(hi / ratio)))
    return view


def regularize_degrees(g: Graph, ratio: int | Fraction = 2) -> tuple[GraphView, RegularizeReport]:
    """Nonempty subgraph whose max/min degree ratio is at most ``ratio``.

    Candidates are the whole graph and, for each dyadic degree class
    ``[2^j, 2^(j+1))``, the subgraph induced by that class after one peel to
    half the class floor. Each candidate is re-peeled until its degree ratio
    holds; the candidate keeping most edges wins (earliest on ties). If all
    candidates vanish, a single edge at a maximum-degree vertex is returned.
    """
    ratio = Fraction(ratio)
    if ratio < 2:
        raise PreconditionError("ratio must be at least 2")
    if g.edge_count < 1:
        raise PreconditionError("graph has no edges")
    base = GraphView(g)
    candidates = [("all", base)]
    degs = g.degrees()
    j = 0
    while (1 << j) <= max(degs):
        lo = 1 << j
        cls = [v for v in g.vertices() if lo <= degs[v] < 2 * lo]
        if cls:
            view = peel_to_min_degree(GraphView(g, cls), max(1, lo // 2))
            candidates.append((f"class[{lo},{2 * lo})", view))
        j += 1
    best_name, best = None, None
    for name, view in candidates:
        out = _repeel(view, ratio)
        if not out.is_empty() and (best is None or out.edge_count > best.edge_count):
            best_name, best = name, out
    if best is None:
        v = max(g.vertices(), key=lambda x: (degs[x], -x))
        best_name, best = "edge", GraphView(g, [v, g.neighbors(v)[0]])
    report = RegularizeReport(
        Fraction(best.edge_count, g.edge_count),
        best.edge_count,
        best.min_degree(),
        best.max_degree(),
        best_name,
    )
    return best, report
