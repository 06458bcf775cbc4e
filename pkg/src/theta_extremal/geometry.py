"""Point-line incidence graphs from the moment curve over GF(q)^4.

Points are all of GF(q)^4. For every direction ``v_z = (1, z, z^2, z^3)`` the
lines ``{x + y v_z}`` form a parallel class of ``q^3`` lines; each line is
stored by its unique point with first coordinate 0.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .detect import DEFAULT_BUDGET, canonical_cycle, detect_theta, enumerate_cycles, verify_embedding
from .errors import SizeLimit
from .field import Field, is_prime, make_field
from .graph import LEFT, RIGHT, BipartitionTag, Graph
from .theta import validate_spec

MAX_INCIDENCE_Q = 16

Vec4 = tuple[int, int, int, int]


def moment_curve(f: Field, z: int) -> Vec4:
    z2 = f.mul(z, z)
    return (1, z, z2, f.mul(z2, z))


def moment_independence(f: Field, zs) -> bool:
    """Whether the moment-curve vectors of the four parameters are independent."""
    zs = list(zs)
    if len(zs) != 4:
        raise ValueError("exactly four parameters are required")
    return f.rank([list(moment_curve(f, z)) for z in zs]) == 4


@dataclass(frozen=True)
class Line:
    direction: int
    base: Vec4


@dataclass(frozen=True)
class IncidenceGraph:
    """Bipartite point-line graph; points are vertices ``0..q^4-1``, lines follow."""

    q: int
    field: Field
    graph: Graph
    sides: BipartitionTag

    @property
    def point_count(self) -> int:
        return self.q**4

    def is_point(self, v: int) -> bool:
        return v < self.q**4

    def point_vertex(self, x: Vec4) -> int:
        q = self.q
        return ((x[0] * q + x[1]) * q + x[2]) * q + x[3]

    def point_coords(self, v: int) -> Vec4:
        q = self.q
        v, c3 = divmod(v, q)
        v, c2 = divmod(v, q)
        c0, c1 = divmod(v, q)
        return (c0, c1, c2, c3)

    def line_vertex(self, line: Line) -> int:
        q = self.q
        b = line.base
        if b[0] != 0:
            raise ValueError("line base points have first coordinate 0")
        return q**4 + line.direction * q**3 + (b[1] * q + b[2]) * q + b[3]

    def line_of(self, v: int) -> Line:
        q = self.q
        r = v - q**4
        if not 0 <= r < q**4:
            raise ValueError(f"vertex {v} is not a line")
        z, rest = divmod(r, q**3)
        rest, b3 = divmod(rest, q)
        b1, b2 = divmod(rest, q)
        return Line(z, (0, b1, b2, b3))

    def direction(self, v: int) -> int:
        return (v - self.q**4) // self.q**3

    def line_points(self, line: Line) -> list[Vec4]:
        f = self.field
        vz = moment_curve(f, line.direction)
        return [
            tuple(f.add(b, f.mul(y, c)) for b, c in zip(line.base, vz))
            for y in f.elements()
        ]

    @cached_property
    def parallel_classes(self) -> list[list[int]]:
        q = self.q
        base = q**4
        return [list(range(base + z * q**3, base + (z + 1) * q**3)) for z in range(q)]


def build_incidence_graph(q: int) -> IncidenceGraph:
    if q > MAX_INCIDENCE_Q:
        raise SizeLimit(f"q={q} would give {2 * q**4} vertices; limit is q <= {MAX_INCIDENCE_Q}")
    f = make_field(q)
    npts = q**4
    idx = np.arange(npts)
    c = [idx // q**3, (idx // q**2) % q, (idx // q) % q, idx % q]
    mul, add, neg = f.mul_table, f.add_table, f.neg_table
    line_ids = np.empty((npts, q), dtype=np.int64)
    for z in range(q):
        vz = moment_curve(f, z)
        # base = x - x0 * v_z, which has first coordinate 0
        b = [add[c[k], neg[mul[c[0], vz[k]]]] for k in range(1, 4)]
        line_ids[:, z] = npts + z * q**3 + (b[0] * q + b[1]) * q + b[2]
    point_adj = [tuple(int(x) for x in row) for row in line_ids]
    flat_lines = line_ids.ravel()
    order = np.argsort(flat_lines, kind="stable")
    pts_sorted = (order // q).reshape(npts, q)
    line_adj = [tuple(int(x) for x in row) for row in pts_sorted]
    g = Graph(point_adj + line_adj)
    sides = BipartitionTag(tuple([LEFT] * npts + [RIGHT] * npts))
    return IncidenceGraph(q, f, g, sides)


@dataclass
class C8Report:
    q: int
    mode: str
    cycles_checked: int
    violations: list[tuple[int, ...]]
    starts: int | None = None
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        out = {
            "q": self.q,
            "mode": self.mode,
            "cycles_checked": self.cycles_checked,
            "violations": len(self.violations),
            "violating_cycles": [list(c) for c in self.violations],
        }
        if self.mode == "sample":
            out["starts"] = self.starts
            out["seed"] = self.seed
        return out


def c8_pattern_holds(ig: IncidenceGraph, cycle) -> bool:
    """Directions of consecutive lines read d1, d2, d1, d2 with d1 != d2."""
    cyc = list(cycle)
    if not ig.is_point(cyc[0]):
        cyc = cyc[1:] + cyc[:1]
    dirs = [ig.direction(v) for v in cyc[1::2]]
    return dirs[0] == dirs[2] and dirs[1] == dirs[3] and dirs[0] != dirs[1]


def cycles_through(g: Graph, v: int, length: int) -> list[tuple[int, ...]]:
    """Canonical forms of all ``length``-cycles through ``v``."""
    out = set()
    path = [v]
    on = {v}

    def rec(x):
        if len(path) == length:
            if g.has_edge(x, v):
                out.add(canonical_cycle(path))
            return
        for w in g.neighbors(x):
            if w not in on:
                path.append(w)
                on.add(w)
                rec(w)
                on.discard(w)
                path.pop()

    rec(v)
    return sorted(out)


def verify_c8_direction_pattern(
    ig: IncidenceGraph, mode: str = "exhaustive", seed: int = 0, count: int = 100
) -> C8Report:
    if mode == "exhaustive":
        cycles = enumerate_cycles(ig.graph, 8).cycles
        bad = [c for c in cycles if not c8_pattern_holds(ig, c)]
        return C8Report(ig.q, mode, len(cycles), bad)
    if mode != "sample":
        raise ValueError("mode must be 'exhaustive' or 'sample'")
    rng = random.Random(seed)
    starts = sorted(rng.sample(range(ig.point_count), min(count, ig.point_count)))
    seen = set()
    for s in starts:
        seen.update(cycles_through(ig.graph, s, 8))
    cycles = sorted(seen)
    bad = [c for c in cycles if not c8_pattern_holds(ig, c)]
    return C8Report(ig.q, mode, len(cycles), bad, starts=len(starts), seed=seed)


THETA_335 = validate_spec([3, 5, 5])


def freeness_certificate(q: int, budget: int = DEFAULT_BUDGET, backend: str | None = None) -> dict:
    ig = build_incidence_graph(q)
    res = detect_theta(ig.graph, THETA_335, "first", budget, backend)
    if res.status == "exhausted":
        verdict = "free (exhausted)"
    elif res.status == "budget":
        verdict = "no copy found (budget)"
    else:
        verdict = "copy found"
    report = {
        "q": q,
        "spec": str(THETA_335),
        "vertices": ig.graph.vertex_count,
        "edges": ig.graph.edge_count,
        "verdict": verdict,
        "status": res.status,
        "expansions": res.expansions,
        "budget": budget,
    }
    if res.embedding is not None:
        report["embedding"] = res.embedding.to_json()
        report["embedding_valid"] = verify_embedding(ig.graph, THETA_335, res.embedding)
    return report


def find_prime_in_range(n: int) -> int:
    """Least prime strictly between ``n`` and ``2n``."""
    if n <= 1:
        raise ValueError("n must exceed 1")
    for p in range(n + 1, 2 * n):
        if is_prime(p):
            return p
    raise AssertionError("Bertrand's postulate guarantees a prime")


def write_vertex_table(ig: IncidenceGraph) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "kind", "z", "c0", "c1", "c2", "c3"])
    for v in range(ig.point_count):
        w.writerow([v, "point", "", *ig.point_coords(v)])
    for v in range(ig.point_count, 2 * ig.point_count):
        line = ig.line_of(v)
        w.writerow([v, "line", line.direction, *line.base])
    return buf.getvalue()

