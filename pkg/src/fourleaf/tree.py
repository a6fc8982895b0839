"""Spanning-tree values, edge exchanges, and the 5-leaf skeleton split.

Trees are immutable; ``apply_exchange`` is persistent and always returns a
validated tree. A 5-leaf tree decomposes into one of three skeletons by
its branch-degree multiset: two branch vertices (degrees 4+3), a single
degree-5 hub, or three degree-3 branch vertices in a row.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, bits, component_mask, mask_of


class ExchangeInvalid(Exception):
    """The exchange does not produce a tree with the declared properties."""


class NotFiveLeaves(Exception):
    """Decomposition requires a tree with exactly five leaves."""


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Outcome(enum.Enum):
    """What an exchange is declared to achieve; verified after applying."""

    FOUR_LEAF = "four_leaf"
    GROW = "grow"
    SPINE_SHRINK = "spine_shrink"    # same skeleton, strictly shorter spine
    LEG_GROWTH = "leg_growth"        # same spine, heavier legs on the big side
    SHAPE_SHIFT = "shape_shift"      # skeleton drops in rank (hub/triple -> pair)


@dataclass(frozen=True)
class Exchange:
    removed: frozenset[tuple[int, int]]
    added: frozenset[tuple[int, int]]
    justification: str = ""
    declared_outcome: Outcome | None = None


class SpanningTree:
    """A tree on a subset of the host's vertices, edges all host edges."""

    __slots__ = ("host", "vmask", "edges", "tadj", "leaf_count", "_hash")

    def __init__(
        self,
        host: Graph,
        vertices: Iterable[int],
        edges: Iterable[tuple[int, int]],
    ):
        vmask = mask_of(vertices)
        eset = frozenset(edge_key(u, v) for u, v in edges)
        tadj = [0] * host.n
        for u, v in eset:
            if not host.has_edge(u, v):
                raise ExchangeInvalid(f"edge ({u},{v}) not in host graph")
            tadj[u] |= 1 << v
            tadj[v] |= 1 << u
        nv = vmask.bit_count()
        if nv == 0:
            raise ExchangeInvalid("tree must have at least one vertex")
        for u, v in eset:
            if not ((vmask >> u) & 1 and (vmask >> v) & 1):
                raise ExchangeInvalid(f"edge ({u},{v}) leaves the vertex set")
        if len(eset) != nv - 1:
            raise ExchangeInvalid(f"{len(eset)} edges on {nv} vertices is not a tree")
        start = (vmask & -vmask).bit_length() - 1
        if component_mask(tadj, start) != vmask:
            raise ExchangeInvalid("edge set does not connect the vertex set")
        self.host = host
        self.vmask = vmask
        self.edges = eset
        self.tadj = tuple(tadj)
        self.leaf_count = sum(1 for m in tadj if m.bit_count() == 1)
        self._hash = hash((host.n, vmask, eset))

    @classmethod
    def single_vertex(cls, host: Graph, v: int) -> "SpanningTree":
        return cls(host, (v,), ())

    def _pendant(self, v: int, w: int) -> "SpanningTree":
        """Attach outside vertex w at tree vertex v. Pendant growth keeps
        tree-ness by construction, so this skips revalidation (hot path)."""
        host = self.host
        if not self.has_vertex(v) or self.has_vertex(w) or not host.has_edge(v, w):
            raise ExchangeInvalid(f"({v},{w}) is not a pendant extension")
        t = SpanningTree.__new__(SpanningTree)
        tadj = list(self.tadj)
        was_leaf = tadj[v].bit_count() == 1
        tadj[v] |= 1 << w
        tadj[w] = 1 << v
        t.host = host
        t.vmask = self.vmask | (1 << w)
        t.edges = self.edges | {edge_key(v, w)}
        t.tadj = tuple(tadj)
        lone = self.vmask.bit_count() == 1
        t.leaf_count = self.leaf_count + (0 if was_leaf else 1) + (1 if lone else 0)
        t._hash = hash((host.n, t.vmask, t.edges))
        return t

    @property
    def is_spanning(self) -> bool:
        return self.vmask == self.host.full_mask

    @property
    def vertex_count(self) -> int:
        return self.vmask.bit_count()

    def vertices(self) -> tuple[int, ...]:
        return tuple(bits(self.vmask))

    def tree_degree(self, v: int) -> int:
        return self.tadj[v].bit_count()

    def leaves(self) -> tuple[int, ...]:
        return tuple(v for v in bits(self.vmask) if self.tadj[v].bit_count() == 1)

    def branch_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in bits(self.vmask) if self.tadj[v].bit_count() >= 3)

    def has_vertex(self, v: int) -> bool:
        return bool((self.vmask >> v) & 1)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SpanningTree)
            and self.host.n == other.host.n
            and self.vmask == other.vmask
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"SpanningTree({self.vertex_count} vertices, {self.leaf_count} leaves)"


def tree_path(tree: SpanningTree, u: int, v: int) -> tuple[int, ...]:
    """The unique u..v path in the tree, ordered from u."""
    if not (tree.has_vertex(u) and tree.has_vertex(v)):
        raise ValueError("endpoints must belong to the tree")
    if u == v:
        return (u,)
    parent = {u: -1}
    stack = [u]
    while stack:
        x = stack.pop()
        if x == v:
            break
        for y in bits(tree.tadj[x]):
            if y not in parent:
                parent[y] = x
                stack.append(y)
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    path.reverse()
    return tuple(path)


def apply_exchange(tree: SpanningTree, ex: Exchange) -> SpanningTree:
    """Persistent edge exchange; validates the result is a tree and that the
    declared outcome's leaf/vertex arithmetic holds."""
    removed = frozenset(edge_key(*e) for e in ex.removed)
    added = frozenset(edge_key(*e) for e in ex.added)
    if not removed <= tree.edges:
        raise ExchangeInvalid(f"removed edges {removed - tree.edges} not in tree")
    for u, v in added:
        if not tree.host.has_edge(u, v):
            raise ExchangeInvalid(f"added edge ({u},{v}) not in host graph")
    if added & tree.edges:
        raise ExchangeInvalid(f"added edges {added & tree.edges} already in tree")
    new_edges = (tree.edges - removed) | added
    vmask = tree.vmask
    for u, v in added:
        vmask |= (1 << u) | (1 << v)
    result = SpanningTree(tree.host, bits(vmask), new_edges)
    out = ex.declared_outcome
    if out is Outcome.FOUR_LEAF and result.leaf_count != 4:
        raise ExchangeInvalid(
            f"declared four leaves, got {result.leaf_count}"
        )
    if out is Outcome.GROW and result.vertex_count != tree.vertex_count + 1:
        raise ExchangeInvalid("declared grow, vertex count did not rise by one")
    if out in (Outcome.SPINE_SHRINK, Outcome.LEG_GROWTH, Outcome.SHAPE_SHIFT):
        if result.leaf_count != 5 or result.vertex_count != tree.vertex_count:
            raise ExchangeInvalid(f"declared {out.value} must keep a 5-leaf tree")
    return result


class Shape(enum.Enum):
    """Branch-vertex skeleton of a 5-leaf tree, ranked by distance from the
    two-branch shape the improvement moves steer toward."""

    TWO_BRANCH = 0    # degrees {4,3}
    ONE_BRANCH = 1    # single degree-5 hub
    THREE_BRANCH = 2  # degrees {3,3,3} on a path

    @property
    def rank(self) -> int:
        return self.value


@dataclass(frozen=True)
class CaseDecomposition:
    """Named parts of a 5-leaf tree: leaves u1..u5, their legs B1..B5 with
    anchors v1..v5, the branch vertices, and the spine between the extreme
    branch vertices. Index layout:

    - TWO_BRANCH: legs 0-2 anchored at s (degree 4), legs 3-4 at t (degree 3).
    - ONE_BRANCH: all five legs at the hub r.
    - THREE_BRANCH: legs 0-1 at s, legs 2-3 at t, leg 4 at w (the middle);
      s is the lower-indexed end.

    ``pred``/``succ`` orient every leg from its branch vertex toward its
    leaf (the anchor's predecessor is the branch vertex; the leaf has no
    successor). ``s_plus``/``t_minus`` are the spine neighbors of s and t;
    with an empty spine they collapse to the opposite branch vertex.
    """

    tree: SpanningTree
    shape: Shape
    leaves: tuple[int, ...]
    anchors: tuple[int, ...]
    legs: tuple[tuple[int, ...], ...]
    branch_sets: tuple[frozenset[int], ...]
    s: int | None
    t: int | None
    w: int | None
    r: int | None
    spine: tuple[int, ...]
    pred: dict[int, int]
    succ: dict[int, int | None]
    s_plus: int | None
    t_minus: int | None

    def leg_index_of(self, x: int) -> int | None:
        for i, bset in enumerate(self.branch_sets):
            if x in bset:
                return i
        return None


def decompose(tree: SpanningTree) -> CaseDecomposition:
    if tree.leaf_count != 5:
        raise NotFiveLeaves(f"tree has {tree.leaf_count} leaves")
    branch = tree.branch_vertices()
    branch_mask = mask_of(branch)
    degs = sorted((tree.tree_degree(b) for b in branch), reverse=True)

    # Walk from each leaf to the first branch vertex: that path is the leg,
    # its last inner vertex the anchor.
    legs_raw: list[tuple[tuple[int, ...], int]] = []  # (leg leaf->anchor, branch)
    for leaf in tree.leaves():
        path = [leaf]
        prev = -1
        cur = leaf
        while not (branch_mask >> cur) & 1:
            nxt = next(y for y in bits(tree.tadj[cur]) if y != prev)
            prev, cur = cur, nxt
            if (branch_mask >> cur) & 1:
                break
            path.append(cur)
        legs_raw.append((tuple(path), cur))

    def leg_entry(leaf_path: tuple[int, ...], anchor_branch: int):
        # reorder anchor -> leaf
        ordered = tuple(reversed(leaf_path))
        return {
            "leg": ordered,
            "anchor": ordered[0],
            "leaf": ordered[-1],
            "branch": anchor_branch,
        }

    entries = [leg_entry(p, b) for p, b in legs_raw]

    if degs == [5]:
        r = branch[0]
        chosen = sorted(entries, key=lambda e: e["anchor"])
        shape = Shape.ONE_BRANCH
        s = t = w = None
        spine: tuple[int, ...] = ()
        s_plus = t_minus = None
    elif degs == [4, 3]:
        s = next(b for b in branch if tree.tree_degree(b) == 4)
        t = next(b for b in branch if tree.tree_degree(b) == 3)
        at_s = sorted((e for e in entries if e["branch"] == s), key=lambda e: e["anchor"])
        at_t = sorted((e for e in entries if e["branch"] == t), key=lambda e: e["anchor"])
        if len(at_s) != 3 or len(at_t) != 2:
            raise AssertionError("two-branch split must be 3 legs at s, 2 at t")
        chosen = at_s + at_t
        shape = Shape.TWO_BRANCH
        r = w = None
        st_path = tree_path(tree, s, t)
        spine = st_path[1:-1]
        s_plus = st_path[1]
        t_minus = st_path[-2]
    elif degs == [3, 3, 3]:
        b0, b1, b2 = branch
        # middle vertex lies on the path between the other two
        if b1 in tree_path(tree, b0, b2):
            w, ends = b1, (b0, b2)
        elif b0 in tree_path(tree, b1, b2):
            w, ends = b0, (b1, b2)
        else:
            w, ends = b2, (b0, b1)
        s, t = min(ends), max(ends)
        at_s = sorted((e for e in entries if e["branch"] == s), key=lambda e: e["anchor"])
        at_t = sorted((e for e in entries if e["branch"] == t), key=lambda e: e["anchor"])
        at_w = [e for e in entries if e["branch"] == w]
        if len(at_s) != 2 or len(at_t) != 2 or len(at_w) != 1:
            raise AssertionError("three-branch split must be 2+2+1 legs")
        chosen = at_s + at_t + at_w
        shape = Shape.THREE_BRANCH
        r = None
        st_path = tree_path(tree, s, t)
        spine = tuple(x for x in st_path[1:-1] if x != w)
        s_plus = st_path[1]
        t_minus = st_path[-2]
    else:
        raise AssertionError(f"impossible branch degrees {degs} for 5 leaves")

    pred: dict[int, int] = {}
    succ: dict[int, int | None] = {}
    for e in chosen:
        leg = e["leg"]
        prev = e["branch"]
        for x in leg:
            pred[x] = prev
            prev = x
        for a, b in zip(leg, leg[1:]):
            succ[a] = b
        succ[leg[-1]] = None

    return CaseDecomposition(
        tree=tree,
        shape=shape,
        leaves=tuple(e["leaf"] for e in chosen),
        anchors=tuple(e["anchor"] for e in chosen),
        legs=tuple(e["leg"] for e in chosen),
        branch_sets=tuple(frozenset(e["leg"]) for e in chosen),
        s=s,
        t=t,
        w=w,
        r=r,
        spine=spine,
        pred=pred,
        succ=succ,
        s_plus=s_plus,
        t_minus=t_minus,
    )
