"""Immutable simple graphs, vertex-subset views, BFS layering and edge-list I/O."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InvalidEdge, InvalidVertex, ParseError

LEFT = 0
RIGHT = 1
UNREACHED = -1

# bitset mirror is only kept for graphs this small
BITSET_LIMIT = 4096


class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    Instances are immutable; adjacency is a tuple of sorted neighbour tuples.
    Build them with :func:`from_edge_list` or :meth:`Graph.from_adjacency`.
    """

    __slots__ = ("_adj", "_sets", "_m", "_masks", "_csr")

    def __init__(self, adjacency: Sequence[Iterable[int]]):
        adj = tuple(tuple(sorted(set(nb))) for nb in adjacency)
        n = len(adj)
        total = 0
        for v, nb in enumerate(adj):
            for u in nb:
                if u == v:
                    raise InvalidEdge(f"self-loop at vertex {v}")
                if not 0 <= u < n:
                    raise InvalidEdge(f"endpoint {u} out of range for n={n}")
            total += len(nb)
        sets = tuple(frozenset(nb) for nb in adj)
        for v, nb in enumerate(adj):
            for u in nb:
                if v not in sets[u]:
                    raise InvalidEdge(f"asymmetric adjacency between {v} and {u}")
        self._adj = adj
        self._sets = sets
        self._m = total // 2
        self._masks = None
        self._csr = None

    @classmethod
    def from_adjacency(cls, adjacency: Sequence[Iterable[int]]) -> "Graph":
        return cls(adjacency)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls([()] * n)

    @property
    def vertex_count(self) -> int:
        return len(self._adj)

    n = vertex_count

    @property
    def edge_count(self) -> int:
        return self._m

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def vertices(self) -> range:
        return range(len(self._adj))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._sets[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._sets[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nb in enumerate(self._adj):
            for v in nb:
                if u < v:
                    yield (u, v)

    def masks(self) -> tuple[int, ...]:
        """Per-vertex neighbourhood bitsets (python ints)."""
        if self._masks is None:
            if len(self._adj) > BITSET_LIMIT:
                raise ValueError("bitset mirror is only available up to 4096 vertices")
            self._masks = tuple(sum(1 << u for u in nb) for nb in self._adj)
        return self._masks

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        if self._csr is None:
            indptr = np.zeros(len(self._adj) + 1, dtype=np.int32)
            np.cumsum([len(nb) for nb in self._adj], out=indptr[1:])
            indices = np.fromiter(
                (u for nb in self._adj for u in nb), dtype=np.int32, count=int(indptr[-1])
            )
            self._csr = (indptr, indices)
        return self._csr

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph relabelled to ``0..k-1``; also returns new->old ids."""
        keep = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(keep)}
        adj = [[index[u] for u in self._adj[v] if u in index] for v in keep]
        return Graph(adj), keep

    def with_edge(self, u: int, v: int) -> "Graph":
        adj = [list(nb) for nb in self._adj]
        if v not in self._sets[u]:
            adj[u].append(v)
            adj[v].append(u)
        return Graph(adj)

    def without_edge(self, u: int, v: int) -> "Graph":
        adj = [list(nb) for nb in self._adj]
        if v in self._sets[u]:
            adj[u].remove(v)
            adj[v].remove(u)
        return Graph(adj)

    def two_coloring(self) -> tuple[int, ...] | None:
        """Proper 2-colouring (least vertex of each component is LEFT), or None."""
        color = [-1] * len(self._adj)
        for s in range(len(self._adj)):
            if color[s] != -1:
                continue
            color[s] = LEFT
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for u in self._adj[v]:
                    if color[u] == -1:
                        color[u] = 1 - color[v]
                        queue.append(u)
                    elif color[u] == color[v]:
                        return None
        return tuple(color)

    def is_bipartite(self) -> bool:
        return self.two_coloring() is not None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self._adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise InvalidVertex("vertex count must be non-negative")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidEdge(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise InvalidEdge(f"self-loop at vertex {u}")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(adj)


def complete_graph(n: int) -> Graph:
    return Graph([[u for u in range(n) if u != v] for v in range(n)])


def cycle_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return from_edge_list(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(leaves: int) -> Graph:
    return complete_bipartite(1, leaves)


@dataclass(frozen=True)
class BipartitionTag:
    side: tuple[int, ...]

    def validate(self, g: Graph) -> bool:
        if len(self.side) != g.vertex_count:
            return False
        return all(self.side[u] != self.side[v] for u, v in g.edges())

    @classmethod
    def from_coloring(cls, g: Graph) -> "BipartitionTag":
        col = g.two_coloring()
        if col is None:
            raise ValueError("graph is not bipartite")
        return cls(col)

    def part(self, which: int) -> list[int]:
        return [v for v, s in enumerate(self.side) if s == which]


class GraphView:
    """Vertex-subset view of a base graph: the induced subgraph on ``vertices``.

    Vertex identities are those of the base graph.
    """

    __slots__ = ("base", "vertex_set", "_sorted")

    def __init__(self, base: Graph, vertices: Iterable[int] | None = None):
        self.base = base
        self.vertex_set = frozenset(base.vertices() if vertices is None else vertices)
        self._sorted = tuple(sorted(self.vertex_set))

    def vertices(self) -> tuple[int, ...]:
        return self._sorted

    def __contains__(self, v: int) -> bool:
        return v in self.vertex_set

    def __len__(self) -> int:
        return len(self._sorted)

    def is_empty(self) -> bool:
        return not self._sorted

    def neighbors(self, v: int) -> list[int]:
        return [u for u in self.base.neighbors(v) if u in self.vertex_set]

    def degree(self, v: int) -> int:
        return sum(1 for u in self.base.neighbors(v) if u in self.vertex_set)

    def has_edge(self, u: int, v: int) -> bool:
        return u in self.vertex_set and v in self.vertex_set and self.base.has_edge(u, v)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in self._sorted:
            for v in self.base.neighbors(u):
                if u < v and v in self.vertex_set:
                    yield (u, v)

    @property
    def edge_count(self) -> int:
        return sum(self.degree(v) for v in self._sorted) // 2

    def min_degree(self) -> int:
        return min((self.degree(v) for v in self._sorted), default=0)

    def max_degree(self) -> int:
        return max((self.degree(v) for v in self._sorted), default=0)

    def restrict(self, vertices: Iterable[int]) -> "GraphView":
        return GraphView(self.base, self.vertex_set.intersection(vertices))

    def to_graph(self) -> tuple[Graph, tuple[int, ...]]:
        return self.base.induced_subgraph(self._sorted)

    def __repr__(self) -> str:
        return f"GraphView(|V|={len(self)}, |E|={self.edge_count})"


@dataclass(frozen=True)
class LayeredGraph:
    """A graph with BFS layers ``L_0 = {root}, L_1, ...`` from a fixed root."""

    base: Graph
    root: int
    layers: tuple[tuple[int, ...], ...]
    layer_of: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.layers) - 1

    def layer(self, i: int) -> tuple[int, ...]:
        if 0 <= i < len(self.layers):
            return self.layers[i]
        return ()

    def children(self, v: int) -> list[int]:
        j = self.layer_of[v] + 1
        return [u for u in self.base.neighbors(v) if self.layer_of[u] == j]

    def parents(self, v: int) -> list[int]:
        j = self.layer_of[v] - 1
        return [u for u in self.base.neighbors(v) if self.layer_of[u] == j]

    def reached(self) -> list[int]:
        return [v for layer in self.layers for v in layer]


def bfs_layers(g: Graph, root: int, max_depth: int | None = None) -> LayeredGraph:
    if not 0 <= root < g.vertex_count:
        raise InvalidVertex(f"root {root} out of range")
    layer_of = [UNREACHED] * g.vertex_count
    layer_of[root] = 0
    layers = [[root]]
    while layers[-1] and (max_depth is None or len(layers) <= max_depth):
        nxt = []
        depth = len(layers)
        for v in layers[-1]:
            for u in g.neighbors(v):
                if layer_of[u] == UNREACHED:
                    layer_of[u] = depth
                    nxt.append(u)
        if not nxt:
            break
        layers.append(nxt)
    return LayeredGraph(g, root, tuple(tuple(sorted(l)) for l in layers), tuple(layer_of))


@dataclass(frozen=True)
class DegreeStats:
    min: int
    max: int
    mean: Fraction


def degree_stats(g: Graph | GraphView) -> DegreeStats:
    if isinstance(g, GraphView):
        degs = [g.degree(v) for v in g.vertices()]
    else:
        degs = g.degrees()
    if not degs:
        return DegreeStats(0, 0, Fraction(0))
    return DegreeStats(min(degs), max(degs), Fraction(sum(degs), len(degs)))


def parse_edge_list(text: str) -> Graph:
    tokens = text.split()
    if len(tokens) < 2:
        raise ParseError("edge list needs a header line 'n m'")
    try:
        nums = [int(t) for t in tokens]
    except ValueError as exc:
        raise ParseError(f"non-integer token in edge list: {exc}") from None
    n, m = nums[0], nums[1]
    body = nums[2:]
    if n < 0 or m < 0 or len(body) != 2 * m:
        raise ParseError(f"header announces {m} edges but body has {len(body) / 2:g}")
    return from_edge_list(n, zip(body[0::2], body[1::2]))


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.vertex_count} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"
