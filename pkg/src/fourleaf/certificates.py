"""Machine-checkable evidence that a graph misses one of the solver's
preconditions: an induced K_{1,r}, a cheap independent 5-set, or a
disconnection witness. Every certificate re-verifies against the host
graph independently of how it was found.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph


@dataclass(frozen=True)
class InducedStar:
    """An induced K_{1,r}: center adjacent to r pairwise non-adjacent leaves."""

    center: int
    leaves: tuple[int, ...]

    def verify(self, g: Graph) -> bool:
        c = self.center
        ls = self.leaves
        if not (0 <= c < g.n):
            return False
        if len(set(ls)) != len(ls) or c in ls:
            return False
        for x in ls:
            if not (0 <= x < g.n) or not g.has_edge(c, x):
                return False
        for i, x in enumerate(ls):
            for y in ls[i + 1:]:
                if g.has_edge(x, y):
                    return False
        return True


@dataclass(frozen=True)
class InducedStarFound:
    star: InducedStar


@dataclass(frozen=True)
class LowSigmaWitness:
    """Independent 5-set with total degree <= n-2, so sigma_5(G) < n-1."""

    vertices: tuple[int, ...]
    degree_sum: int


@dataclass(frozen=True)
class Disconnected:
    witness: frozenset[int]


Certificate = InducedStarFound | LowSigmaWitness | Disconnected


def verify_certificate(g: Graph, cert: Certificate) -> bool:
    if isinstance(cert, InducedStarFound):
        return len(cert.star.leaves) == 5 and cert.star.verify(g)
    if isinstance(cert, LowSigmaWitness):
        vs = cert.vertices
        if len(vs) != 5 or len(set(vs)) != 5:
            return False
        if any(not (0 <= v < g.n) for v in vs):
            return False
        for i, x in enumerate(vs):
            for y in vs[i + 1:]:
                if g.has_edge(x, y):
                    return False
        if cert.degree_sum != sum(g.degree(v) for v in vs):
            return False
        return cert.degree_sum <= g.n - 2
    if isinstance(cert, Disconnected):
        w = cert.witness
        if not w or len(w) >= g.n:
            return False
        wmask = 0
        for v in w:
            if not (0 <= v < g.n):
                return False
            wmask |= 1 << v
        outside = g.full_mask & ~wmask
        return all(not (g.adj[v] & outside) for v in w)
    return False
