"""Desk-scale walk through the layered argument: prune bad sets, grow regular
trees layer by layer, close an almost-tree, classify and embed."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .detect import verify_embedding, Embedding
from .errors import EmbeddingError, PreconditionError, RangeError, ThetaExtremalError
from .graph import Graph, bfs_layers, from_edge_list
from .proof.thick import classify_strong_thick, embed_theta_from_thick, gamma_lengths, greedy_thick_embedding, thick_bound
from .proof.trees import AlmostTreeCert, RegularTreeCert, compute_bad_sets, grow_regular_tree, prune_bad_sets
from .theta import ThetaSpec, k_star


@dataclass
class PipelineReport:
    ok: bool = True
    failed_stage: str | None = None
    stages: list = field(default_factory=list)
    embedding: Embedding | None = None

    def add(self, name: str, **data):
        self.stages.append({"stage": name, **data})

    def fail(self, name: str, message: str):
        self.ok = False
        self.failed_stage = name
        self.add(name, status="failed", error=message)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "failed_stage": self.failed_stage,
            "stages": self.stages,
            "embedding": self.embedding.to_json() if self.embedding else None,
        }


def _frac(x: Fraction) -> str:
    return str(x)


def _trim(tree: RegularTreeCert, d: int) -> RegularTreeCert:
    if d == tree.d:
        return tree
    layers = [(tree.root,)]
    children = {}
    for _ in range(tree.depth):
        nxt = []
        for v in layers[-1]:
            children[v] = tree.children[v][:d]
            nxt.extend(children[v])
        layers.append(tuple(sorted(nxt)))
    return RegularTreeCert(tree.root, tuple(layers), children, d)


def _tree_vertices(tree: RegularTreeCert) -> set[int]:
    return {v for layer in tree.layers for v in layer}


def _next_children(g: Graph, layer_of, tree: RegularTreeCert) -> dict[int, list[int]]:
    s = tree.depth
    return {x: [y for y in g.neighbors(x) if layer_of[y] == s + 1] for x in tree.layers[-1]}


def _relabel(vertices, edges):
    order = sorted(vertices)
    pos = {v: i for i, v in enumerate(order)}
    return from_edge_list(len(order), [(pos[a], pos[b]) for a, b in edges]), order, pos


def _grow_step(g: Graph, layer_of, tree: RegularTreeCert, C0, C1) -> RegularTreeCert:
    kids = _next_children(g, layer_of, tree)
    cmin = min(len(c) for c in kids.values())
    if cmin == 0:
        raise PreconditionError(f"a layer-{tree.depth} vertex has no children")
    d = min(tree.d, cmin)
    tree = _trim(tree, d)
    kids = _next_children(g, layer_of, tree)
    cap = int(Fraction(C0) ** 2 * d)
    edges = list(tree.edges()) + [(x, y) for x, ys in kids.items() for y in ys[:cap]]
    verts = _tree_vertices(tree) | {y for _, y in edges}
    h, order, pos = _relabel(verts, edges)
    cert = grow_regular_tree(bfs_layers(h, pos[tree.root]), d, tree.depth, C0, C1)
    back = lambda v: order[v]
    return RegularTreeCert(
        back(cert.root),
        tuple(tuple(sorted(back(v) for v in layer)) for layer in cert.layers),
        {back(v): tuple(back(c) for c in cs) for v, cs in cert.children.items()},
        cert.d,
    )


def _close_almost_tree(g: Graph, layer_of, tree: RegularTreeCert):
    """Give every leaf ``d`` top-layer children, parents of a top vertex in distinct blocks."""
    for d in range(tree.d, 0, -1):
        t = _trim(tree, d)
        block = {}
        for j, v1 in enumerate(t.layers[1]):
            stack = [v1]
            while stack:
                v = stack.pop()
                block[v] = j
                stack.extend(t.children.get(v, ()))
        kids = _next_children(g, layer_of, t)
        seen_blocks: dict[int, set] = {}
        top_edges = []
        ok = True
        for x in t.layers[-1]:
            chosen = [y for y in kids[x] if block[x] not in seen_blocks.get(y, ())][:d]
            if len(chosen) < d:
                ok = False
                break
            for y in chosen:
                seen_blocks.setdefault(y, set()).add(block[x])
                top_edges.append((x, y))
        if not ok:
            continue
        edges = list(t.edges()) + top_edges
        verts = _tree_vertices(t) | {y for _, y in top_edges}
        h, order, pos = _relabel(verts, edges)
        cert = AlmostTreeCert(bfs_layers(h, pos[t.root]), d, t.depth + 1)
        valid, why = cert.validate()
        if valid:
            return cert, order
    raise PreconditionError("no branching admits a valid almost-tree top layer")


def run_prop31(
    host: Graph,
    spec: ThetaSpec,
    theta_top: int,
    theta_inner: int,
    C0=1,
    C1=None,
    root: int = 0,
    s: int | None = None,
) -> PipelineReport:
    """Run every stage at fixed scale and report per-stage statistics."""
    rep = PipelineReport()
    k1 = spec.lengths[0]
    s = k1 + 1 if s is None else s
    C1 = spec.vertex_count if C1 is None else C1
    stage = "bfs"
    try:
        lg = bfs_layers(host, root)
        rep.add(stage, status="ok", layer_sizes=[len(l) for l in lg.layers], k_star=k_star(spec), s=s)

        stage = "badsets"
        bad = compute_bad_sets(lg, s, theta_top, theta_inner)
        rep.add(stage, status="ok", sizes={str(i): len(bad[i]) for i in sorted(bad.sets)})

        stage = "prune"
        view = prune_bad_sets(lg, bad)
        pruned, order = view.to_graph()
        pos = {v: i for i, v in enumerate(order)}
        plg = bfs_layers(pruned, pos[root])
        sizes = [len(l) for l in plg.layers]
        growth = None
        if len(sizes) > s + 1 and sizes[s]:
            growth = Fraction(sizes[s + 1], sizes[s])
        rep.add(
            stage,
            status="ok",
            kept=len(order),
            layer_sizes=sizes,
            layer_growth=_frac(growth) if growth is not None else None,
        )

        stage = "grow"
        r = plg.root
        first = plg.children(r)
        if not first:
            raise PreconditionError("root is isolated after pruning")
        tree = RegularTreeCert(r, ((r,), tuple(first)), {r: tuple(first)}, len(first))
        steps = [{"depth": 1, "d": tree.d}]
        while tree.depth < s:
            tree = _grow_step(pruned, plg.layer_of, tree, C0, C1)
            steps.append({"depth": tree.depth, "d": tree.d})
        rep.add(stage, status="ok", steps=steps)

        stage = "almost_tree"
        cert, hmap = _close_almost_tree(pruned, plg.layer_of, tree)
        rep.add(stage, status="ok", d=cert.d, depth=cert.depth, vertices=cert.graph.vertex_count)

        stage = "classify"
        try:
            gamma_lengths(spec, s)
        except RangeError as exc:
            rep.add(stage, status="skipped", reason=str(exc))
            rep.add("embed", status="skipped", reason="no classification")
            return rep
        labels = classify_strong_thick(cert, spec, s)
        bound = thick_bound(spec, cert.d, s)
        rep.add(stage, status="ok", strong=len(labels.strong), thick=len(labels.thick), bound=bound)

        stage = "embed"
        if len(labels.thick) <= bound:
            rep.add(stage, status="skipped", reason="thick count within the bound")
            return rep
        greedy = greedy_thick_embedding(cert, spec, s, labels)
        emb = greedy if greedy is not None else embed_theta_from_thick(cert, spec, s, labels)
        to_host = lambda v: order[hmap[v]]
        mapped = Embedding(
            tuple(to_host(v) for v in emb.poles),
            tuple(tuple(to_host(v) for v in p) for p in emb.paths),
        )
        if not verify_embedding(host, spec, mapped):
            raise EmbeddingError("embedding failed verification against the host")
        rep.embedding = mapped
        rep.add(stage, status="ok", route="thick" if greedy is not None else "search", verified=True)
    except ThetaExtremalError as exc:
        rep.fail(stage, str(exc))
    return rep
