"""Exact theta-subgraph detection, fixed-length cycle enumeration, embedding checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Literal

from . import kernels
from .graph import Graph
from .theta import ThetaSpec

Mode = Literal["first", "count", "all"]
_MODES = {"first": kernels.FIRST, "count": kernels.COUNT, "all": kernels.ALL}

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class Embedding:
    """Poles plus one full vertex sequence (pole to pole) per path, in spec order."""

    poles: tuple[int, int]
    paths: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"poles": list(self.poles), "paths": [list(p) for p in self.paths]}

    @classmethod
    def from_json(cls, data: dict | str) -> "Embedding":
        if isinstance(data, str):
            data = json.loads(data)
        poles = tuple(int(x) for x in data["poles"])
        if len(poles) != 2:
            raise ValueError("an embedding certificate needs exactly two poles")
        return cls(poles, tuple(tuple(int(x) for x in p) for p in data["paths"]))

    def vertices(self) -> set[int]:
        return {x for p in self.paths for x in p}


@dataclass
class DetectResult:
    """Outcome of :func:`detect_theta`.

    ``status`` is ``"found"`` (first mode stopped on a copy), ``"exhausted"``
    (the search tree was completed, so counts are exact and an empty result
    proves freeness) or ``"budget"`` (inconclusive).
    """

    status: str
    mode: str
    expansions: int
    count: int
    embeddings: list[Embedding] = field(default_factory=list)

    @property
    def embedding(self) -> Embedding | None:
        return self.embeddings[0] if self.embeddings else None

    @property
    def found(self) -> bool:
        return self.count > 0

    @property
    def is_free(self) -> bool:
        """True only when freeness is proven."""
        return self.status == "exhausted" and self.count == 0

    def to_json(self) -> dict:
        out = {
            "status": self.status,
            "mode": self.mode,
            "expansions": self.expansions,
            "count": self.count,
        }
        if self.mode == "all":
            out["embeddings"] = [e.to_json() for e in self.embeddings]
        else:
            out["embedding"] = self.embedding.to_json() if self.embedding else None
        return out


def detect_theta(
    host: Graph,
    spec: ThetaSpec,
    mode: Mode = "first",
    budget: int = DEFAULT_BUDGET,
    backend: str | None = None,
) -> DetectResult:
    """Search ``host`` for copies of the theta graph described by ``spec``.

    Pole pairs ``u < v`` are taken from the endpoints of simple ``k1``-paths out
    of ``u``; for each pair every path length is joined meet-in-the-middle from
    half-paths grown at both poles, then the paths are chosen by backtracking
    with internal disjointness. Equal-length paths are taken in increasing
    candidate order, so ``count`` counts copies up to swapping the poles and
    permuting equal-length paths.

    ``budget`` bounds node expansions (half-path steps, join candidates and
    backtracking candidates), which makes an inconclusive stop reproducible.
    """
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {sorted(_MODES)}")
    if budget <= 0:
        raise ValueError("budget must be positive")
    if spec.vertex_count > host.vertex_count or spec.edge_count > host.edge_count:
        return DetectResult("exhausted", mode, 0, 0)
    reason, expansions, count, raw = kernels.theta_search(
        host, spec.lengths, _MODES[mode], budget, backend
    )
    embeddings = [Embedding((u, v), paths) for u, v, paths in raw]
    if reason == kernels.BUDGET:
        status = "budget"
    elif reason == kernels.STOPPED:
        status = "found"
    else:
        status = "exhausted"
    return DetectResult(status, mode, expansions, count, embeddings)


def verify_embedding(host: Graph, spec: ThetaSpec, emb: Embedding) -> bool:
    """Independent check of every embedding invariant against ``host``'s edges."""
    p, q = emb.poles
    n = host.vertex_count
    if p == q or not (0 <= p < n and 0 <= q < n):
        return False
    if len(emb.paths) != len(spec.lengths):
        return False
    seen_internal: set[int] = set()
    for path, k in zip(emb.paths, spec.lengths):
        if len(path) != k + 1 or path[0] != p or path[-1] != q:
            return False
        if len(set(path)) != len(path):
            return False
        if any(not 0 <= x < n for x in path):
            return False
        if any(not host.has_edge(a, b) for a, b in zip(path, path[1:])):
            return False
        inner = set(path[1:-1])
        if inner & seen_internal:
            return False
        seen_internal |= inner
    return True


@dataclass(frozen=True)
class CycleList:
    length: int
    cycles: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)


def canonical_cycle(seq) -> tuple[int, ...]:
    """Least rotation of the lesser of the two orientations."""
    seq = list(seq)
    best = None
    for s in (seq, seq[::-1]):
        for i in range(len(s)):
            rot = tuple(s[i:] + s[:i])
            if best is None or rot < best:
                best = rot
    return best


def enumerate_cycles(host: Graph, length: int, backend: str | None = None) -> CycleList:
    if length < 3:
        raise ValueError("cycle length must be at least 3")
    cycles = kernels.cycle_search(host, length, backend)
    return CycleList(length, tuple(cycles))
