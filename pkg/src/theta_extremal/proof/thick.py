"""Strong/thick classification on the top two layers of a regular almost-tree
and the greedy theta embedding through thick vertices."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..detect import DEFAULT_BUDGET, Embedding, detect_theta, verify_embedding
from ..errors import EmbeddingError, PreconditionError, RangeError
from ..graph import Graph, from_edge_list
from ..theta import ThetaSpec, k_star
from .trees import AlmostTreeCert

EMBED_STEP_LIMIT = 2_000_000


def gamma_lengths(spec: ThetaSpec, s: int) -> list[int]:
    """Lengths ``k1 + k_t - 2s - 1`` for ``t = 2..l``."""
    k1 = spec.lengths[0]
    if not k1 + 1 <= s <= k_star(spec) - 1:
        raise RangeError(f"s={s} outside [{k1 + 1}, {k_star(spec) - 1}] for spec {spec}")
    taus = [k1 + k - 2 * s - 1 for k in spec.lengths[1:]]
    if min(taus) < 1:
        raise RangeError(f"nonpositive path length in {taus}")
    return taus


def build_gamma_forest(spec: ThetaSpec, s: int) -> Graph:
    taus = gamma_lengths(spec, s)
    edges, nxt = [], 0
    for tau in taus:
        edges.extend((nxt + i, nxt + i + 1) for i in range(tau))
        nxt += tau + 1
    return from_edge_list(nxt, edges)


@dataclass
class ThickThinLabels:
    strong: frozenset
    thick: frozenset
    thin: frozenset
    witnesses: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "strong": sorted(self.strong),
            "thick": sorted(self.thick),
            "thin_count": len(self.thin),
            "witnesses": {str(w): [list(p) for p in ps] for w, ps in sorted(self.witnesses.items())},
        }


class _TopLayers:
    """Adjacency of H[L_s + L_{s+1}] and the block index of each layer-s vertex."""

    def __init__(self, cert: AlmostTreeCert, s: int):
        lg = cert.layered
        if cert.depth != s + 1:
            raise PreconditionError(f"certificate has type depth {cert.depth}, expected {s + 1}")
        if lg.depth < s + 1:
            raise PreconditionError(f"certificate has no layer {s + 1}")
        self.cert = cert
        self.s = s
        self.low = lg.layer(s)
        self.high = lg.layer(s + 1)
        self.adj = {v: lg.children(v) for v in self.low}
        self.adj.update({w: lg.parents(w) for w in self.high})
        self.block = {x: cert.block_of(x) for x in self.low}

    def paths_from(self, start: int, length: int, avoid):
        """Simple paths of ``length`` edges from ``start`` in index order."""
        path = [start]
        on = set(avoid) | {start}

        def rec(x):
            if len(path) == length + 1:
                yield tuple(path)
                return
            for y in self.adj[x]:
                if y not in on:
                    on.add(y)
                    path.append(y)
                    yield from rec(y)
                    path.pop()
                    on.discard(y)

        return rec(start)

    def witness(self, w: int, taus: list[int]):
        """First system of paths from ``w`` with pairwise distinct end blocks."""
        found = []

        def rec(i, used, blocks):
            if i == len(taus):
                return True
            for p in self.paths_from(w, taus[i], used - {w}):
                b = self.block[p[-1]]
                if b in blocks:
                    continue
                found.append(p)
                if rec(i + 1, used | set(p[1:]), blocks | {b}):
                    return True
                found.pop()
            return False

        return tuple(found) if rec(0, {w}, frozenset()) else None


def classify_strong_thick(cert: AlmostTreeCert, spec: ThetaSpec, s: int) -> ThickThinLabels:
    """Label layer-(s+1) vertices strong and layer-s vertices thick or thin.

    A vertex ``w`` of layer ``s + 1`` is strong when paths of lengths
    ``k1 + k_t - 2s - 1`` (``t = 2..l``) leave it inside the top two layers,
    sharing only ``w`` and ending in pairwise distinct blocks (a block is the
    set of layer-s descendants of one layer-1 vertex).
    """
    taus = gamma_lengths(spec, s)
    top = _TopLayers(cert, s)
    witnesses = {}
    for w in top.high:
        ws = top.witness(w, taus)
        if ws is not None:
            witnesses[w] = ws
    strong = frozenset(witnesses)
    thick = frozenset(x for x in top.low if any(w in strong for w in top.adj[x]))
    thin = frozenset(top.low) - thick
    return ThickThinLabels(strong, thick, thin, witnesses)


def thick_bound(spec: ThetaSpec, d: int, s: int) -> int:
    return (spec.paths - 2) * d ** (s - 1)


def greedy_thick_embedding(
    cert: AlmostTreeCert, spec: ThetaSpec, s: int, labels: ThickThinLabels
) -> Embedding | None:
    """Theta copy routed through thick vertices, or None when no routing exists.

    Pigeonhole gives a layer-k1 vertex ``a`` whose layer-s descendants hold
    thick vertices below ``l - 1`` distinct layer-(k1+1) vertices. Path 1 runs
    down the tree from the root to ``a``; path t climbs from ``a`` to a thick
    vertex, steps to a strong neighbour, follows a top-layer path into a fresh
    block and returns to the root through that block. The greedy choices are
    backtracked over until all paths are disjoint. This needs at least
    ``l`` layer-1 vertices, so small ``d`` can leave it without a routing.
    """
    taus = gamma_lengths(spec, s)
    bound = thick_bound(spec, cert.d, s)
    if len(labels.thick) <= bound:
        raise PreconditionError(f"{len(labels.thick)} thick vertices do not exceed {bound}")
    lg = cert.layered
    top = _TopLayers(cert, s)
    k1 = spec.lengths[0]
    r = lg.root

    def up(x, layer):
        chain = [x]
        while lg.layer_of[chain[-1]] > layer:
            chain.append(lg.parents(chain[-1])[0])
        return chain  # x first, ancestor at ``layer`` last

    groups: dict[int, dict[int, list[int]]] = {}
    for x in sorted(labels.thick):
        chain = up(x, k1)
        groups.setdefault(chain[-1], {}).setdefault(chain[-2] if len(chain) > 1 else x, []).append(x)
    need = spec.paths - 1
    candidates = [a for a in sorted(groups) if len(groups[a]) >= need]
    if not candidates:
        raise PreconditionError("no layer-k1 vertex sees thick vertices under enough branches")
    steps = 0

    for a in candidates:
        trunk = up(a, 0)[::-1]  # root .. a
        home = cert.block_of(a)
        branches = groups[a]
        result = []

        def rec(i, used, blocks, used_branches):
            nonlocal steps
            if i == len(taus):
                return True
            for br in sorted(branches):
                if br in used_branches:
                    continue
                for u in branches[br]:
                    down = up(u, k1)[:-1]  # u .. child of a
                    if any(v in used for v in down):
                        continue
                    for w in top.adj[u]:
                        if w in used or w not in labels.strong:
                            continue
                        for q in top.paths_from(w, taus[i], used | set(down)):
                            steps += 1
                            if steps > EMBED_STEP_LIMIT:
                                raise EmbeddingError("embedding search limit reached")
                            x = q[-1]
                            b = top.block[x]
                            if b in blocks or b == home:
                                continue
                            climb = up(x, 0)[::-1]  # root .. x
                            path = tuple(climb + list(q[-2::-1]) + down + [a])
                            result.append(path)
                            if rec(i + 1, used | set(path[1:-1]), blocks | {b}, used_branches | {br}):
                                return True
                            result.pop()
            return False

        if rec(0, set(trunk), frozenset(), frozenset()):
            emb = Embedding((r, a), (tuple(trunk),) + tuple(result))
            if not verify_embedding(cert.graph, spec, emb):
                raise EmbeddingError("constructed embedding failed verification")
            return emb
    return None


def embed_theta_from_thick(
    cert: AlmostTreeCert,
    spec: ThetaSpec,
    s: int,
    labels: ThickThinLabels,
    budget: int = DEFAULT_BUDGET,
) -> Embedding:
    """Theta copy in a certificate with more than ``(l-2) d^(s-1)`` thick vertices.

    The routing through thick vertices is tried first; when it has no solution
    the exact detector runs on the certificate graph instead.
    """
    emb = greedy_thick_embedding(cert, spec, s, labels)
    if emb is not None:
        return emb
    res = detect_theta(cert.graph, spec, "first", budget)
    if res.embedding is None:
        raise EmbeddingError(f"no theta copy in the certificate graph (search {res.status})")
    return res.embedding


__all__ = [
    "ThickThinLabels",
    "build_gamma_forest",
    "classify_strong_thick",
    "embed_theta_from_thick",
    "gamma_lengths",
    "greedy_thick_embedding",
    "thick_bound",
]
