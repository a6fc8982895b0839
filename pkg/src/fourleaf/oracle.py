"""Ground truth at desk scale.

``min_leaf_spanning_tree`` enumerates spanning trees (grow-by-edge with
bridge-aware pruning of the exclude branch) to find the exact minimum
leaf count, with early exit and a tree budget. The sweeps run the full
solver dichotomy over every labeled graph of a small order, or over
random precondition-satisfying instances, and record violations as
replayable graph6 strings.
"""

from __future__ import annotations

import json
import multiprocessing
import os
from dataclasses import dataclass, field

from .certificates import verify_certificate
from .conditions import hypotheses_hold
from .families import GenerationFailed, random_theorem_instance
from .graph import Graph, bits, component_mask, encode_graph6, from_adj_masks
from .solver import Refuted, Solved, solve
from .tree import SpanningTree


@dataclass(frozen=True)
class OracleReport:
    min_leaves: int
    witness: SpanningTree
    trees_enumerated: int
    exact: bool


class _Stop(Exception):
    pass


class _Budget(Exception):
    pass


DEFAULT_BUDGET = 10_000_000


def min_leaf_spanning_tree(
    g: Graph, budget: int = DEFAULT_BUDGET, *, stop_at: int | None = 2
) -> OracleReport:
    """Exact minimum-leaf spanning tree by enumeration.

    ``stop_at`` ends the search once a tree with that few leaves is found
    (2 is the global minimum for n >= 2, so the default stays exact);
    ``None`` forces full enumeration. A blown budget reports the best tree
    seen so far with ``exact=False``.
    """
    n = g.n
    if n < 1:
        raise ValueError("graph must be nonempty")
    comp = component_mask(g.adj, 0)
    if comp != g.full_mask:
        raise ValueError("oracle requires a connected graph")
    if n == 1:
        return OracleReport(0, SpanningTree.single_vertex(g, 0), 1, True)

    edges = list(g.edges())
    m = len(edges)
    inc: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for eid, (a, b) in enumerate(edges):
        inc[a].append((eid, b))
        inc[b].append((eid, a))

    removed = bytearray(m)
    deg = [0] * n
    tree_eids: list[int] = []
    order = [0]
    in_tree = 1
    count = 0
    best_leaves = n + 1
    best_edges: list[int] = []

    def remaining_connected() -> bool:
        seen = 1
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for eid, y in inc[x]:
                if not removed[eid] and not (seen >> y) & 1:
                    seen |= 1 << y
                    frontier.append(y)
        return seen == g.full_mask

    def rec() -> None:
        nonlocal count, best_leaves, best_edges, in_tree
        if len(tree_eids) == n - 1:
            count += 1
            leaves = sum(1 for v in range(n) if deg[v] == 1)
            if leaves < best_leaves:
                best_leaves = leaves
                best_edges = list(tree_eids)
                if stop_at is not None and best_leaves <= stop_at:
                    raise _Stop
            if count >= budget:
                raise _Budget
            return
        pick = None
        for v in reversed(order):
            for eid, w in inc[v]:
                if not removed[eid] and not (in_tree >> w) & 1:
                    pick = (eid, v, w)
                    break
            if pick:
                break
        assert pick is not None, "connected remainder must have a frontier edge"
        eid, v, w = pick
        tree_eids.append(eid)
        deg[v] += 1
        deg[w] += 1
        in_tree |= 1 << w
        order.append(w)
        rec()
        order.pop()
        in_tree &= ~(1 << w)
        deg[v] -= 1
        deg[w] -= 1
        tree_eids.pop()
        removed[eid] = 1
        if remaining_connected():
            rec()
        removed[eid] = 0

    exact = True
    try:
        rec()
    except _Stop:
        # min 2 is globally minimal; any other early stop leaves an upper bound
        exact = best_leaves <= 2
    except _Budget:
        exact = False
    witness = SpanningTree(g, range(n), [edges[eid] for eid in best_edges])
    assert witness.leaf_count == best_leaves
    return OracleReport(best_leaves, witness, count, exact)


@dataclass(frozen=True)
class Violation:
    graph6: str
    kind: str
    detail: str


@dataclass
class SweepSummary:
    n: int
    graphs_scanned: int = 0
    connected: int = 0
    hypotheses_held: int = 0
    solver_trees: int = 0
    solver_refutations: int = 0
    bonus_trees: int = 0
    oracle_checked: int = 0
    violations: list[Violation] = field(default_factory=list)

    def merge(self, other: "SweepSummary") -> None:
        self.graphs_scanned += other.graphs_scanned
        self.connected += other.connected
        self.hypotheses_held += other.hypotheses_held
        self.solver_trees += other.solver_trees
        self.solver_refutations += other.solver_refutations
        self.bonus_trees += other.bonus_trees
        self.oracle_checked += other.oracle_checked
        self.violations.extend(other.violations)

    def to_records(self) -> str:
        rows = [
            json.dumps(
                {
                    "type": "summary",
                    "n": self.n,
                    "graphs_scanned": self.graphs_scanned,
                    "connected": self.connected,
                    "hypotheses_held": self.hypotheses_held,
                    "solver_trees": self.solver_trees,
                    "solver_refutations": self.solver_refutations,
                    "bonus_trees": self.bonus_trees,
                    "oracle_checked": self.oracle_checked,
                    "violations": len(self.violations),
                }
            )
        ]
        rows.extend(
            json.dumps(
                {"type": "violation", "graph6": v.graph6,
                 "kind": v.kind, "detail": v.detail}
            )
            for v in self.violations
        )
        return "\n".join(rows) + "\n"


def check_one(
    g: Graph,
    summary: SweepSummary,
    *,
    oracle_check: bool,
    oracle_budget: int = 100_000,
) -> None:
    """Run the dichotomy plus verification on one connected graph and fold
    the outcome into the summary."""
    cert = hypotheses_hold(g)
    held = cert is None
    if held:
        summary.hypotheses_held += 1

    def flag(kind: str, detail: str) -> None:
        summary.violations.append(Violation(encode_graph6(g), kind, detail))

    try:
        res = solve(g)
    except Exception as exc:  # guard trips and invariant breaches are data here
        flag("solver-error", repr(exc))
        return

    if isinstance(res, Solved):
        t = res.tree
        if not t.is_spanning:
            flag("bad-tree", "tree does not span")
        elif t.leaf_count > 4:
            flag("bad-tree", f"{t.leaf_count} leaves")
        elif len(t.branch_vertices()) > 2:
            flag("bad-tree", "more than 2 branch vertices")
        if held:
            summary.solver_trees += 1
        else:
            summary.bonus_trees += 1
    else:
        summary.solver_refutations += 1
        if held:
            flag("refuted-held", repr(res.certificate))
        if not verify_certificate(g, res.certificate):
            flag("bad-certificate", repr(res.certificate))

    if oracle_check:
        summary.oracle_checked += 1
        rep = min_leaf_spanning_tree(g, budget=oracle_budget, stop_at=2)
        feasible = rep.min_leaves <= 4
        if isinstance(res, Solved):
            if rep.exact and res.tree.leaf_count < rep.min_leaves:
                flag("below-oracle-min",
                     f"solver {res.tree.leaf_count} < oracle {rep.min_leaves}")
            if not feasible and rep.exact:
                flag("oracle-mismatch", "verified tree but oracle finds none")
        if held and rep.exact and not feasible:
            flag("theorem-violation",
                 f"preconditions hold but min leaves = {rep.min_leaves}")


_EDGE_BITS: dict[int, list[tuple[int, int]]] = {}


def _edge_bits(n: int) -> list[tuple[int, int]]:
    if n not in _EDGE_BITS:
        _EDGE_BITS[n] = [(i, j) for j in range(1, n) for i in range(j)]
    return _EDGE_BITS[n]


def graph_from_mask(n: int, mask: int) -> Graph:
    """Labeled graph whose upper-triangle edge set is the given bitmask
    (bit order matches graph6's column-major upper triangle)."""
    table = _edge_bits(n)
    adj = [0] * n
    for k in bits(mask):
        i, j = table[k]
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return from_adj_masks(adj)


def _sweep_range(args) -> SweepSummary:
    n, start, end, oracle_check, oracle_budget = args
    summary = SweepSummary(n=n)
    table = _edge_bits(n)
    full = (1 << n) - 1
    for mask in range(start, end):
        summary.graphs_scanned += 1
        adj = [0] * n
        mm = mask
        while mm:
            low = mm & -mm
            i, j = table[low.bit_length() - 1]
            adj[i] |= 1 << j
            adj[j] |= 1 << i
            mm ^= low
        if component_mask(adj, 0) != full:
            continue
        summary.connected += 1
        check_one(
            from_adj_masks(adj), summary,
            oracle_check=oracle_check, oracle_budget=oracle_budget,
        )
    return summary


def exhaustive_sweep(
    n: int,
    *,
    workers: int | None = None,
    oracle_check: bool | None = None,
    oracle_budget: int = 100_000,
) -> SweepSummary:
    """Run the dichotomy over all 2^(n(n-1)/2) labeled n-vertex graphs.

    Oracle cross-checks default to on for n <= 7. Shards across processes;
    the summary is a commutative merge of per-shard counters.
    """
    if not (1 <= n <= 8):
        raise ValueError("exhaustive sweep supports 1 <= n <= 8")
    if oracle_check is None:
        oracle_check = n <= 7
    total = 1 << (n * (n - 1) // 2)
    if workers is None:
        workers = os.cpu_count() or 1
    if workers <= 1 or total < (1 << 14):
        return _sweep_range((n, 0, total, oracle_check, oracle_budget))
    shards = workers * 8
    step = (total + shards - 1) // shards
    jobs = [
        (n, lo, min(lo + step, total), oracle_check, oracle_budget)
        for lo in range(0, total, step)
    ]
    summary = SweepSummary(n=n)
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(workers) as pool:
        for part in pool.imap_unordered(_sweep_range, jobs):
            summary.merge(part)
    return summary


def _instance_seed(seed: int, idx: int) -> int:
    return (seed * 0x9E3779B97F4A7C15 + idx * 0x100000001B3 + 0x2545F4914F6CDD1D) % (1 << 62)


def _random_range(args) -> SweepSummary:
    n, seed, lo, hi, oracle_check, oracle_budget = args
    summary = SweepSummary(n=n)
    for idx in range(lo, hi):
        summary.graphs_scanned += 1
        try:
            g = random_theorem_instance(n, _instance_seed(seed, idx))
        except GenerationFailed as exc:
            summary.violations.append(Violation("", "generation-failed", repr(exc)))
            continue
        summary.connected += 1
        check_one(
            g, summary, oracle_check=oracle_check, oracle_budget=oracle_budget
        )
    return summary


def random_sweep(
    n: int,
    samples: int,
    seed: int,
    *,
    workers: int | None = None,
    oracle_check: bool | None = None,
    oracle_budget: int = 100_000,
) -> SweepSummary:
    """Sample precondition-satisfying instances and run the same checks as
    the exhaustive sweep (oracle cross-checks only for n <= 12).
    Deterministic for fixed (n, samples, seed): instances are seeded per
    sample index, so sharding does not change the outcome."""
    if n > 200:
        raise ValueError("random sweep supports n <= 200")
    if oracle_check is None:
        oracle_check = n <= 12
    if workers is None:
        workers = os.cpu_count() or 1
    if workers <= 1 or samples < 64:
        return _random_range((n, seed, 0, samples, oracle_check, oracle_budget))
    shards = workers * 4
    step = (samples + shards - 1) // shards
    jobs = [
        (n, seed, lo, min(lo + step, samples), oracle_check, oracle_budget)
        for lo in range(0, samples, step)
    ]
    summary = SweepSummary(n=n)
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(workers) as pool:
        for part in pool.imap_unordered(_random_range, jobs):
            summary.merge(part)
    return summary
