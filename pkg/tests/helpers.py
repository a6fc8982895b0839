"""Shared brute-force oracles and small builders for the test suite.

These stay deliberately independent of the library's own algorithms:
sigma by scanning all C(n,k) subsets, minimum leaf count by checking
every labeled tree (via Pruefer sequences) for containment.
"""

from __future__ import annotations

import random
from itertools import combinations, product

from fourleaf import Graph


def brute_sigma(g: Graph, k: int) -> tuple[int | None, tuple[int, ...] | None]:
    best = None
    best_set = None
    for sub in combinations(range(g.n), k):
        if any(g.has_edge(a, b) for a, b in combinations(sub, 2)):
            continue
        total = sum(g.degree(v) for v in sub)
        if best is None or total < best:
            best, best_set = total, sub
    return best, best_set


def brute_has_induced_star(g: Graph, r: int) -> bool:
    for c in range(g.n):
        nbrs = g.neighbors(c)
        if len(nbrs) < r:
            continue
        for sub in combinations(nbrs, r):
            if not any(g.has_edge(a, b) for a, b in combinations(sub, 2)):
                return True
    return False


def prufer_edges(seq: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    leaves = sorted(v for v in range(n) if degree[v] == 1)
    import heapq

    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def all_labeled_trees(n: int):
    """Yield the edge list of every labeled tree on n vertices."""
    if n == 1:
        yield []
        return
    if n == 2:
        yield [(0, 1)]
        return
    for seq in product(range(n), repeat=n - 2):
        yield prufer_edges(seq, n)


def leaf_count(n: int, edges: list[tuple[int, int]]) -> int:
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return sum(1 for d in deg if d == 1)


def brute_min_leaves(g: Graph) -> int | None:
    """Exact minimum leaf count over spanning trees, by scanning every
    labeled tree for containment in g. None when g is disconnected."""
    if g.n == 1:
        return 0
    best = None
    for edges in all_labeled_trees(g.n):
        if all(g.has_edge(u, v) for u, v in edges):
            lc = leaf_count(g.n, edges)
            if best is None or lc < best:
                best = lc
                if best == 2:
                    return best
    return best


def random_connected_graph(rng: random.Random, n: int, p: float) -> Graph:
    while True:
        edges = [
            (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p
        ]
        g = Graph(n, edges)
        from fourleaf import is_connected

        if n == 1 or is_connected(g)[0]:
            return g


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(r: int) -> Graph:
    """K_{1,r} with center 0."""
    return Graph(r + 1, [(0, i) for i in range(1, r + 1)])
