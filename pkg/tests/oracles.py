"""Slow, obviously-correct reference implementations used as test oracles.

Nothing here calls into the package's search code.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations, permutations, product
from math import factorial

INF = float("inf")


def adjacency(n, edges):
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def floyd_warshall(n, edges):
    dist = [[INF] * n for _ in range(n)]
    for i in range(n):
        dist[i][i] = 0
    for u, v in edges:
        dist[u][v] = dist[v][u] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if dist[i][k] + dist[k][j] < dist[i][j]:
                    dist[i][j] = dist[i][k] + dist[k][j]
    return dist


def has_theta(n, edges, lengths) -> bool:
    """Try every injective assignment of pole and internal vertices."""
    adj = adjacency(n, edges)
    lengths = sorted(lengths)

    def paths(i, p, q, used):
        if i == len(lengths):
            return True
        k = lengths[i]
        free = [x for x in range(n) if x not in used]
        for inner in permutations(free, k - 1):
            seq = (p,) + inner + (q,)
            if all(seq[j + 1] in adj[seq[j]] for j in range(k)):
                if paths(i + 1, p, q, used | set(inner)):
                    return True
        return False

    for p, q in permutations(range(n), 2):
        if paths(0, p, q, {p, q}):
            return True
    return False


def canon_cycle(seq):
    seq = list(seq)
    forms = []
    for s in (seq, seq[::-1]):
        for i in range(len(s)):
            forms.append(tuple(s[i:] + s[:i]))
    return min(forms)


def cycles(n, edges, length):
    """All ``length``-cycles as canonical tuples, from vertex subsets and orderings."""
    adj = adjacency(n, edges)
    out = set()
    for sub in combinations(range(n), length):
        first = sub[0]
        for rest in permutations(sub[1:]):
            seq = (first,) + rest
            if all(seq[(i + 1) % length] in adj[seq[i]] for i in range(length)):
                out.add(canon_cycle(seq))
    return out


def labeled_ex(n, contains):
    """max |E| over all 2^C(n,2) labelled graphs on n vertices avoiding the pattern."""
    pairs = list(combinations(range(n), 2))
    best = 0
    for bits in product((0, 1), repeat=len(pairs)):
        m = sum(bits)
        if m <= best:
            continue
        edges = [e for e, b in zip(pairs, bits) if b]
        if not contains(n, edges):
            best = m
    return best


def common_neighbour_pattern(t):
    """Contains K_{2,t} iff some pair of vertices has t common neighbours."""

    def contains(n, edges):
        adj = adjacency(n, edges)
        return any(len(adj[u] & adj[v]) >= t for u, v in combinations(range(n), 2))

    return contains


def contains_c6(n, edges):
    return bool(cycles(n, edges, 6)) if len(edges) >= 6 else False


def simple_paths(adj, start, length):
    out = []

    def rec(path):
        if len(path) == length + 1:
            out.append(tuple(path))
            return
        for y in sorted(adj[path[-1]]):
            if y not in path:
                rec(path + [y])

    rec([start])
    return out


def strong_vertices(adj, high, block, taus):
    """Top vertices with a system of paths (lengths ``taus``) sharing only the
    start and ending in distinct blocks, by trying every combination."""
    strong = set()
    for w in high:
        options = [simple_paths(adj, w, t) for t in taus]
        for combo in product(*options):
            ends = [p[-1] for p in combo]
            if any(e not in block for e in ends):
                continue
            if len({block[e] for e in ends}) != len(ends):
                continue
            inner = [set(p[1:]) for p in combo]
            if all(not (a & b) for a, b in combinations(inner, 2)):
                strong.add(w)
                break
    return strong


def canonical_by_permutations(n, edges):
    """Least sorted edge list over all relabellings."""
    best = None
    for perm in permutations(range(n)):
        form = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or form < best:
            best = form
    return best


def rank_mod_p(rows, p):
    """Rank over GF(p) via the largest nonzero minor (Leibniz determinants)."""
    n = len(rows)
    m = len(rows[0])

    def det(mat):
        k = len(mat)
        total = 0
        for perm in permutations(range(k)):
            sign = 1
            for i in range(k):
                for j in range(i + 1, k):
                    if perm[i] > perm[j]:
                        sign = -sign
            prod = 1
            for i in range(k):
                prod *= mat[i][perm[i]]
            total += sign * prod
        return total % p

    for r in range(min(n, m), 0, -1):
        for rs in combinations(range(n), r):
            for cs in combinations(range(m), r):
                if det([[rows[i][j] for j in cs] for i in rs]):
                    return r
    return 0


def primes_below(n):
    sieve = [True] * n
    sieve[:2] = [False] * min(2, n)
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = [False] * len(sieve[i * i :: i])
    return [i for i, ok in enumerate(sieve) if ok]


def count_theta(n, edges, lengths):
    """Copies as (unordered pole pair, set of paths): ordered assignments
    divided by pole swaps and permutations of equal lengths."""
    adj = adjacency(n, edges)
    lengths = sorted(lengths)
    total = 0

    def rec(i, p, q, used):
        if i == len(lengths):
            return 1
        k = lengths[i]
        free = [x for x in range(n) if x not in used]
        c = 0
        for inner in permutations(free, k - 1):
            seq = (p,) + inner + (q,)
            if all(seq[j + 1] in adj[seq[j]] for j in range(k)):
                c += rec(i + 1, p, q, used | set(inner))
        return c

    for p, q in permutations(range(n), 2):
        total += rec(0, p, q, {p, q})
    sym = 2
    for mult in Counter(lengths).values():
        sym *= factorial(mult)
    assert total % sym == 0
    return total // sym
