"""Canonical labelling by colour refinement and individualisation.

Meant for the tiny graphs of the exact extremal search; the search tree is
explored in full, without automorphism pruning.
"""

from __future__ import annotations

from .graph import Graph, from_edge_list


def _refine(masks, cells):
    """Equitable refinement of an ordered partition (list of vertex lists)."""
    cells = [list(c) for c in cells]
    changed = True
    while changed:
        changed = False
        for si in range(len(cells)):
            smask = 0
            for v in cells[si]:
                smask |= 1 << v
            out = []
            split = False
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                by = {}
                for v in cell:
                    by.setdefault(bin(masks[v] & smask).count("1"), []).append(v)
                if len(by) > 1:
                    split = True
                    out.extend(by[k] for k in sorted(by))
                else:
                    out.append(cell)
            if split:
                cells = out
                changed = True
                break
    return cells


def _certificate(masks, order):
    pos = {v: i for i, v in enumerate(order)}
    rows = []
    for v in order:
        m = 0
        x = masks[v]
        while x:
            low = x & -x
            m |= 1 << pos[low.bit_length() - 1]
            x ^= low
        rows.append(m)
    return tuple(rows)


def canonical_labeling(g: Graph) -> tuple[int, ...]:
    """``order[i]`` is the vertex placed at canonical position ``i``."""
    n = g.vertex_count
    if n == 0:
        return ()
    masks = g.masks()
    degs = g.degrees()
    by = {}
    for v in range(n):
        by.setdefault(degs[v], []).append(v)
    start = _refine(masks, [by[k] for k in sorted(by)])
    best = [None, None]

    def search(cells):
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            cert = _certificate(masks, order)
            if best[0] is None or cert < best[0]:
                best[0], best[1] = cert, order
            return
        for v in cells[target]:
            rest = [x for x in cells[target] if x != v]
            nxt = cells[:target] + [[v], rest] + cells[target + 1 :]
            search(_refine(masks, nxt))

    search(start)
    return tuple(best[1])


def canonical_form(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Isomorphism invariant: vertex count plus adjacency rows in canonical order."""
    order = canonical_labeling(g)
    return (g.vertex_count, _certificate(g.masks(), order))


def canonical_graph(g: Graph) -> Graph:
    order = canonical_labeling(g)
    pos = {v: i for i, v in enumerate(order)}
    return from_edge_list(g.vertex_count, [(pos[u], pos[v]) for u, v in g.edges()])


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.vertex_count != h.vertex_count or g.edge_count != h.edge_count:
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)
