"""Layered tree certificates: regular (almost-)trees, tree growth by one layer,
and bad-set pruning."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from ..errors import EmbeddingError, PreconditionError
from ..graph import Graph, GraphView, LayeredGraph


@dataclass(frozen=True)
class Violation:
    vertex: int | None
    reason: str

    def to_json(self) -> dict:
        return {"vertex": self.vertex, "reason": self.reason}


def _shape(children, v, depth_left):
    if depth_left == 0:
        return ()
    return tuple(sorted(_shape(children, c, depth_left - 1) for c in children(v)))


def check_regular_almost_tree(lg: LayeredGraph, d: int, s: int) -> tuple[bool, Violation | None]:
    """Check the regular almost-tree conditions of type ``(d, s)`` on ``lg``.

    Layers ``0..s-1`` must branch exactly ``d`` ways, layers ``1..s-1`` must
    have unique parents, no edge may sit inside a layer ``<= s``, and the
    subgraph hanging below each layer-1 vertex (through layer ``s``) must be a
    tree shaped like the top of the whole structure (layers ``0..s-1``).
    """
    if s < 1 or d < 1:
        return False, Violation(None, "need d >= 1 and s >= 1")
    if lg.depth < s:
        return False, Violation(None, f"only {lg.depth} layers below the root, need {s}")
    g = lg.base
    for i in range(s + 1):
        for v in lg.layer(i):
            for u in g.neighbors(v):
                if lg.layer_of[u] == i:
                    return False, Violation(v, f"edge {v}-{u} inside layer {i}")
    for i in range(s):
        for v in lg.layer(i):
            c = len(lg.children(v))
            if c != d:
                return False, Violation(v, f"vertex {v} in layer {i} has {c} children, expected {d}")
    for i in range(1, s):
        for v in lg.layer(i):
            p = len(lg.parents(v))
            if p != 1:
                return False, Violation(v, f"vertex {v} in layer {i} has {p} parents")
    top = _shape(lg.children, lg.root, s - 1)
    for v1 in lg.layer(1):
        sub = {v1}
        frontier = [v1]
        for _ in range(s - 1):
            frontier = sorted({c for x in frontier for c in lg.children(x)})
            sub.update(frontier)
        edges = sum(1 for x in sub for u in g.neighbors(x) if u in sub) // 2
        if edges != len(sub) - 1:
            return False, Violation(v1, f"subgraph below {v1} is not a tree")
        if _shape(lg.children, v1, s - 1) != top:
            return False, Violation(v1, f"subgraph below {v1} differs in shape from the top")
    return True, None


@dataclass(frozen=True)
class AlmostTreeCert:
    """A layered host claimed to be a regular almost-tree of type ``(d, depth)``."""

    layered: LayeredGraph
    d: int
    depth: int

    @property
    def graph(self) -> Graph:
        return self.layered.base

    def validate(self) -> tuple[bool, Violation | None]:
        return check_regular_almost_tree(self.layered, self.d, self.depth)

    def block_of(self, v: int) -> int:
        """Index (in layer-1 order) of the layer-1 ancestor of ``v``."""
        lg = self.layered
        while lg.layer_of[v] > 1:
            v = lg.parents(v)[0]
        if lg.layer_of[v] != 1:
            raise ValueError(f"vertex {v} has no layer-1 ancestor")
        return lg.layer(1).index(v)


@dataclass(frozen=True)
class RegularTreeCert:
    """Root, layers ``0..depth`` and the chosen children of every non-leaf."""

    root: int
    layers: tuple[tuple[int, ...], ...]
    children: dict = field(compare=False)
    d: int

    @property
    def depth(self) -> int:
        return len(self.layers) - 1

    def edges(self):
        for v, cs in sorted(self.children.items()):
            for c in cs:
                yield (v, c)

    def to_json(self) -> dict:
        return {
            "root": self.root,
            "d": self.d,
            "layers": [list(l) for l in self.layers],
            "children": {str(v): list(cs) for v, cs in sorted(self.children.items())},
        }


def validate_regular_tree(host: Graph, cert: RegularTreeCert) -> tuple[bool, Violation | None]:
    if cert.layers[0] != (cert.root,):
        return False, Violation(cert.root, "layer 0 must be the root alone")
    parents: dict[int, int] = {}
    for i, layer in enumerate(cert.layers[:-1]):
        nxt = set(cert.layers[i + 1])
        for v in layer:
            cs = cert.children.get(v, ())
            if len(cs) != cert.d:
                return False, Violation(v, f"vertex {v} has {len(cs)} children, expected {cert.d}")
            for c in cs:
                if c not in nxt:
                    return False, Violation(c, f"child {c} of {v} is not in layer {i + 1}")
                if not host.has_edge(v, c):
                    return False, Violation(v, f"edge {v}-{c} missing from host")
                if c in parents:
                    return False, Violation(c, f"vertex {c} has two parents")
                parents[c] = v
    seen = set()
    for layer in cert.layers:
        for v in layer:
            if v in seen:
                return False, Violation(v, f"vertex {v} repeated")
            seen.add(v)
            if v != cert.root and v not in parents:
                return False, Violation(v, f"vertex {v} has no parent")
    return True, None


def appendix_constant(C0, C1, s: int) -> Fraction:
    """``K = C'_0`` from ``C'_s = C1 (C0^2 + 1)`` and ``C'_{t-1} = 2 C'_t C0^2``."""
    C0, C1 = Fraction(C0), Fraction(C1)
    c = C1 * (C0 * C0 + 1)
    for _ in range(s):
        c = 2 * c * C0 * C0
    return c


def _check_grow_preconditions(lg: LayeredGraph, d: int, s: int, C0, C1):
    if d < 1 or s < 1:
        raise PreconditionError("need d >= 1 and s >= 1")
    if lg.depth < s + 1:
        raise PreconditionError(f"need layers through {s + 1}, host has {lg.depth}")
    g = lg.base
    for i in range(s + 2):
        for v in lg.layer(i):
            if any(lg.layer_of[u] == i for u in g.neighbors(v)):
                raise PreconditionError(f"(A) edge inside layer {i} at vertex {v}")
    for i in range(s):
        for v in lg.layer(i):
            if len(lg.children(v)) != d:
                raise PreconditionError(f"(A) vertex {v} in layer {i} does not have {d} children")
    for i in range(1, s + 1):
        for v in lg.layer(i):
            if len(lg.parents(v)) != 1:
                raise PreconditionError(f"(A) vertex {v} in layer {i} has several parents")
    hi = Fraction(C0) ** 2 * d
    for v in lg.layer(s):
        c = len(lg.children(v))
        if not d <= c <= hi:
            raise PreconditionError(f"(B) vertex {v} has {c} children outside [{d}, {hi}]")
    top = set(lg.layer(s)) | set(lg.layer(s + 1))
    e = sum(len(lg.children(v)) for v in lg.layer(s))
    if e > Fraction(C1) * len(top):
        raise PreconditionError(f"(C) {e} edges on {len(top)} vertices exceeds C1 = {C1}")


def _grow_attempt(lg: LayeredGraph, s: int, b: int, private: bool):
    available = set(lg.layer(s + 1))
    chosen: dict[int, tuple[int, ...]] = {}
    alive = set()
    for c in lg.layer(s):
        kids = lg.children(c)
        free = [u for u in kids if u in available]
        if len(free) >= b:
            chosen[c] = tuple(free[:b])
            alive.add(c)
            available.difference_update(free[:b] if private else kids)
    for i in range(s - 1, -1, -1):
        up = set()
        for v in lg.layer(i):
            ok = [c for c in lg.children(v) if c in alive]
            if len(ok) >= b:
                chosen[v] = tuple(ok[:b])
                up.add(v)
        alive = up
    if lg.root not in alive:
        return None
    layers = [(lg.root,)]
    for _ in range(s + 1):
        layers.append(tuple(sorted(c for v in layers[-1] for c in chosen[v])))
    children = {v: chosen[v] for layer in layers[:-1] for v in layer}
    return RegularTreeCert(lg.root, tuple(layers), children, b)


def grow_regular_tree(lg: LayeredGraph, d: int, s: int, C0, C1) -> RegularTreeCert:
    """Extend a regular tree of type ``(d, s)`` by one layer, as a regular tree
    of type ``(d', s + 1)`` with ``d' >= ceil(d / K)``.

    Bottom-up: disjoint stars are packed from layer ``s`` into layer ``s + 1``,
    then each upper vertex keeps ``d'`` children whose subtrees survived. The
    largest ``d'`` for which the root survives is returned; packing first
    deletes whole neighbourhoods, then falls back to private leaves only.
    """
    _check_grow_preconditions(lg, d, s, C0, C1)
    K = appendix_constant(C0, C1, s)
    for b in range(d, 0, -1):
        for private in (False, True):
            cert = _grow_attempt(lg, s, b, private)
            if cert is not None:
                ok, why = validate_regular_tree(lg.base, cert)
                if not ok:
                    raise EmbeddingError(f"grown certificate invalid: {why.reason}")
                if b < ceil(Fraction(d) / K):
                    raise EmbeddingError(f"branching {b} below the promised {ceil(Fraction(d) / K)}")
                return cert
    raise EmbeddingError("no branching survived to the root")


@dataclass(frozen=True)
class BadSets:
    sets: dict = field(compare=False)
    s: int
    theta_top: int
    theta_inner: int

    def __getitem__(self, i: int) -> frozenset:
        return self.sets[i]

    def union(self) -> frozenset:
        out = frozenset()
        for b in self.sets.values():
            out |= b
        return out

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "theta_top": self.theta_top,
            "theta_inner": self.theta_inner,
            "sizes": {str(i): len(self.sets[i]) for i in sorted(self.sets)},
            "sets": {str(i): sorted(self.sets[i]) for i in sorted(self.sets)},
        }


def compute_bad_sets(lg: LayeredGraph, s: int, theta_top: int, theta_inner: int) -> BadSets:
    if theta_top < 1 or theta_inner < 1:
        raise PreconditionError("thresholds must be at least 1")
    if s < 1:
        raise PreconditionError("s must be at least 1")
    sets = {}
    top = frozenset(v for v in lg.layer(s + 1) if len(lg.parents(v)) >= theta_top)
    sets[s + 1] = top
    below = top
    for i in range(s, 0, -1):
        below = frozenset(
            v for v in lg.layer(i) if sum(1 for c in lg.children(v) if c in below) >= theta_inner
        )
        sets[i] = below
    return BadSets(sets, s, theta_top, theta_inner)


def prune_bad_sets(lg: LayeredGraph, bad: BadSets) -> GraphView:
    bad_all = bad.union()
    return GraphView(lg.base, [v for v in lg.base.vertices() if v not in bad_all])
