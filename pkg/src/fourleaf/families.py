"""Instance generators: the tight family showing the degree-sum floor
cannot be lowered, and post-verified random instances meeting all solver
preconditions for fuzzing sweeps.
"""

from __future__ import annotations

import random

from .conditions import find_induced_star, hypotheses_hold, sigma_k
from .graph import Graph, is_connected


class GenerationFailed(Exception):
    """Bounded generate-and-repair attempts ran out; retry with a new seed."""


def sharpness_graph(m: int) -> Graph:
    """Five disjoint K_m blocks plus an edge xy; x covers the first three
    blocks, y the last two. Connected, K_{1,5}-free, sigma_5 = 5m = n-2,
    yet every spanning tree has at least 5 leaves.

    Vertices: blocks D1..D5 at [i*m, (i+1)*m), then x = 5m, y = 5m+1.
    """
    if m < 1:
        raise ValueError("block size m must be >= 1")
    x, y = 5 * m, 5 * m + 1
    edges: list[tuple[int, int]] = []
    for b in range(5):
        base = b * m
        for i in range(m):
            for j in range(i + 1, m):
                edges.append((base + i, base + j))
    for v in range(3 * m):
        edges.append((x, v))
    for v in range(3 * m, 5 * m):
        edges.append((y, v))
    edges.append((x, y))
    return Graph(5 * m + 2, edges)


def random_theorem_instance(
    n: int,
    seed: int,
    *,
    max_attempts: int = 64,
    max_repairs: int = 400,
) -> Graph:
    """A connected K_{1,5}-free graph with sigma_5 >= n-1, by sample-and-repair:
    kill induced stars by joining two of their leaves, lift cheap independent
    5-sets by adding edges at their lowest-degree member. The result is
    re-verified before it is returned. Deterministic for a fixed (n, seed).
    """
    if n < 6:
        raise ValueError("need n >= 6")
    rng = random.Random(seed)
    density = 0.75
    for _ in range(max_attempts):
        g = _sample(rng, n, density)
        ok, _ = is_connected(g)
        if not ok:
            density = min(0.95, density + 0.02)
            continue
        g = _repair(rng, g, max_repairs)
        if g is not None and hypotheses_hold(g) is None:
            return g
        density = min(0.95, density + 0.02)
    raise GenerationFailed(f"no instance for n={n}, seed={seed}")


def _sample(rng: random.Random, n: int, density: float) -> Graph:
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < density
    ]
    return Graph(n, edges)


def _repair(rng: random.Random, g: Graph, max_repairs: int) -> Graph | None:
    n = g.n
    for _ in range(max_repairs + 1):
        star = find_induced_star(g, 5)
        if star is not None:
            # joining two star leaves destroys this star, cannot disconnect,
            # and only raises degrees
            a, b = rng.sample(star.leaves, 2)
            g = g.with_edge(a, b)
            continue
        rep = sigma_k(g, 5)
        if rep.meets(n - 1):
            return g
        assert rep.witness is not None
        cheap = min(rep.witness, key=lambda v: (g.degree(v), v))
        non_nbrs = [
            v for v in range(n)
            if v != cheap and not g.has_edge(cheap, v)
        ]
        if not non_nbrs:
            return None
        g = g.with_edge(cheap, rng.choice(non_nbrs))
    return None
