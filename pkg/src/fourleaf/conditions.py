"""Precondition checks: K_{1,5}-freeness and the degree-sum floor sigma_5.

The guarantee the solver implements applies to connected K_{1,5}-free
graphs with sigma_5(G) >= n-1; this module decides those conditions
exactly and produces verifiable witnesses when they fail.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certificates import (
    Certificate,
    Disconnected,
    InducedStar,
    InducedStarFound,
    LowSigmaWitness,
)
from .graph import Graph, bits, is_connected


@dataclass(frozen=True)
class SigmaReport:
    """Minimum degree sum over independent k-sets; None when alpha(G) < k.

    An infinite value satisfies any threshold: no independent k-set exists,
    so every degree-sum condition over such sets holds vacuously.
    """

    k: int
    value: int | None
    witness: tuple[int, ...] | None

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def meets(self, threshold: int) -> bool:
        return self.value is None or self.value >= threshold


def find_induced_star(g: Graph, r: int) -> InducedStar | None:
    """First induced K_{1,r} in lexicographic (center, leaves) order."""
    if r < 1:
        raise ValueError("r must be >= 1")
    for c in range(g.n):
        nbrs_mask = g.adj[c]
        if nbrs_mask.bit_count() < r:
            continue
        leaves = _lex_independent_subset(g, nbrs_mask, r)
        if leaves is not None:
            return InducedStar(center=c, leaves=leaves)
    return None


def _lex_independent_subset(
    g: Graph, cand_mask: int, r: int
) -> tuple[int, ...] | None:
    """Lexicographically smallest independent r-subset of cand_mask, if any."""
    chosen: list[int] = []

    def extend(pool: int) -> bool:
        if len(chosen) == r:
            return True
        if pool.bit_count() < r - len(chosen):
            return False
        for v in bits(pool):
            chosen.append(v)
            if extend(pool & ~g.adj[v] & ~((1 << (v + 1)) - 1)):
                return True
            chosen.pop()
        return False

    if extend(cand_mask):
        return tuple(chosen)
    return None


def sigma_k(g: Graph, k: int) -> SigmaReport:
    """Exact minimum degree sum over independent k-sets, by branch and bound.

    Vertices are explored in ascending-degree order (ties by index) with a
    partial-sum lower bound for pruning.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if g.n < 1:
        raise ValueError("graph must be nonempty")
    order = sorted(range(g.n), key=lambda v: (g.degree(v), v))
    degs = [g.degree(v) for v in order]
    n = g.n
    best_sum: int | None = None
    best_set: tuple[int, ...] | None = None

    # degs is nondecreasing, so the next `need` entries from position i are
    # the cheapest possible completion regardless of independence.
    def lower_bound(i: int, need: int) -> int | None:
        if i + need > n:
            return None
        return sum(degs[i : i + need])

    chosen: list[int] = []

    def rec(i: int, cur_sum: int, blocked: int) -> None:
        nonlocal best_sum, best_set
        need = k - len(chosen)
        if need == 0:
            if best_sum is None or cur_sum < best_sum:
                best_sum = cur_sum
                best_set = tuple(sorted(chosen))
            return
        for idx in range(i, n):
            if n - idx < need:
                break
            lb = lower_bound(idx, need)
            if lb is None or (best_sum is not None and cur_sum + lb >= best_sum):
                break
            v = order[idx]
            if (blocked >> v) & 1:
                continue
            chosen.append(v)
            rec(idx + 1, cur_sum + degs[idx], blocked | g.adj[v] | (1 << v))
            chosen.pop()
        return

    rec(0, 0, 0)
    return SigmaReport(k=k, value=best_sum, witness=best_set)


def hypotheses_hold(g: Graph) -> Certificate | None:
    """None when the graph satisfies all solver preconditions; otherwise a
    verifiable certificate of the first failing one (connectivity, then
    K_{1,5}-freeness, then sigma_5 >= n-1).
    """
    ok, witness = is_connected(g)
    if not ok:
        assert witness is not None
        return Disconnected(witness=witness)
    star = find_induced_star(g, 5)
    if star is not None:
        return InducedStarFound(star=star)
    rep = sigma_k(g, 5)
    if not rep.meets(g.n - 1):
        assert rep.value is not None and rep.witness is not None
        return LowSigmaWitness(vertices=rep.witness, degree_sum=rep.value)
    return None
