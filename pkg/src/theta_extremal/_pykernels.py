"""Pure-Python search kernels.

Reference implementation and import-time fallback for ``_kernels.pyx``. Both
backends visit the search tree in the same order and count node expansions at
the same points, so budgets and results agree exactly.
"""

from __future__ import annotations

FIRST, COUNT, ALL = 0, 1, 2
EXHAUSTED, STOPPED, BUDGET = 0, 1, 2


class _Abort(Exception):
    pass


class _ThetaSearch:
    def __init__(self, adj, lengths, mode, budget):
        self.adj = adj
        self.lengths = lengths
        self.mode = mode
        self.budget = budget
        self.expansions = 0
        self.count = 0
        self.found = []
        self.stopped = False

    def tick(self):
        self.expansions += 1
        if self.expansions > self.budget:
            raise _Abort

    def simple_paths(self, start, length):
        """All simple paths with ``length`` edges from ``start``, in DFS order."""
        if length == 0:
            return [(start,)]
        adj = self.adj
        out = []
        path = [start]
        on = {start}

        def rec(v, depth):
            for w in adj[v]:
                if w in on:
                    continue
                self.tick()
                if depth + 1 == length:
                    out.append(tuple(path) + (w,))
                    continue
                path.append(w)
                on.add(w)
                rec(w, depth + 1)
                on.discard(w)
                path.pop()

        rec(start, 0)
        return out

    def run(self, n):
        lengths = self.lengths
        ks = sorted(set(lengths))
        a_vals = sorted({(k + 1) // 2 for k in ks})
        b_vals = sorted({k // 2 for k in ks})
        k1 = lengths[0]
        try:
            for u in range(n):
                ends = sorted({p[-1] for p in self.simple_paths(u, k1) if p[-1] > u})
                if not ends:
                    continue
                uhalves = {}
                for a in a_vals:
                    groups = {}
                    for p in self.simple_paths(u, a):
                        groups.setdefault(p[-1], []).append(p)
                    uhalves[a] = groups
                for v in ends:
                    vhalves = {b: self.simple_paths(v, b) for b in b_vals}
                    by_len = {}
                    for k in ks:
                        a, b = (k + 1) // 2, k // 2
                        res = []
                        groups = uhalves[a]
                        for hv in vhalves[b]:
                            for hu in groups.get(hv[-1], ()):
                                self.tick()
                                full = hu + hv[-2::-1]
                                if len(set(full)) == k + 1:
                                    res.append(full)
                        if not res:
                            break
                        by_len[k] = res
                    else:
                        self.backtrack(u, v, by_len)
                        if self.stopped:
                            return STOPPED
        except _Abort:
            return BUDGET
        return EXHAUSTED

    def backtrack(self, u, v, by_len):
        lengths = self.lengths
        nl = len(lengths)
        used = set()
        chosen = [None] * nl
        idx = [0] * nl

        def rec(i):
            if i == nl:
                self.count += 1
                if self.mode != COUNT:
                    self.found.append((u, v, tuple(chosen)))
                if self.mode == FIRST:
                    self.stopped = True
                return
            k = lengths[i]
            cands = by_len[k]
            start = idx[i - 1] + 1 if i > 0 and lengths[i - 1] == k else 0
            for j in range(start, len(cands)):
                self.tick()
                p = cands[j]
                inner = p[1:-1]
                if any(x in used for x in inner):
                    continue
                used.update(inner)
                chosen[i] = p
                idx[i] = j
                rec(i + 1)
                used.difference_update(inner)
                if self.stopped:
                    return

        rec(0)


def theta_search(n, adj, lengths, mode, budget):
    """Backtracking search for theta copies with the given sorted path lengths.

    Returns ``(reason, expansions, count, embeddings)``; each embedding is
    ``(u, v, paths)`` with ``u < v`` and paths listed in ``lengths`` order.
    """
    s = _ThetaSearch(adj, tuple(lengths), mode, budget)
    reason = s.run(n)
    return reason, s.expansions, s.count, s.found


def cycle_search(n, adj, length):
    """Every cycle with ``length`` vertices once, in canonical form.

    A cycle is reported starting at its least vertex, oriented so that the
    second vertex is smaller than the last.
    """
    adj_sets = [frozenset(nb) for nb in adj]
    out = []
    for s in range(n):
        path = [s]
        on = {s}

        def rec(v):
            if len(path) == length:
                if s in adj_sets[v] and path[1] < path[-1]:
                    out.append(tuple(path))
                return
            for w in adj[v]:
                if w > s and w not in on:
                    path.append(w)
                    on.add(w)
                    rec(w)
                    on.discard(w)
                    path.pop()

        rec(s)
    return out
