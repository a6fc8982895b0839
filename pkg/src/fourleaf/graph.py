"""Undirected simple graphs over dense vertex indices 0..n-1.

Adjacency is stored as one integer bitmask per vertex, so pair lookup,
neighborhood iteration and |N(v) & X| popcounts are all O(n/word).
Graphs are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

from typing import Iterable, Iterator


class FormatError(ValueError):
    """Raised for malformed edge-list or graph6 input."""


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    __slots__ = ("n", "adj", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be >= 0")
        adj = [0] * n
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (adj[u] >> v) & 1:
                m += 1
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.adj = tuple(adj)
        self._m = m

    @property
    def m(self) -> int:
        return self._m

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(bits(self.adj[v]))

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            rest = self.adj[u] >> (u + 1)
            for k in bits(rest):
                yield (u, u + 1 + k)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def with_edge(self, u: int, v: int) -> "Graph":
        """New graph with one extra edge (no-op if already present)."""
        g = Graph.__new__(Graph)
        adj = list(self.adj)
        extra = 0 if (adj[u] >> v) & 1 else 1
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        g.n = self.n
        g.adj = tuple(adj)
        g._m = self._m + extra
        return g

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self._m})"


def from_adj_masks(masks: list[int]) -> Graph:
    """Build a Graph directly from adjacency bitmasks (trusted, hot path)."""
    g = Graph.__new__(Graph)
    g.n = len(masks)
    g.adj = tuple(masks)
    g._m = sum(m.bit_count() for m in masks) // 2
    return g


def parse_edge_list(text: str) -> Graph:
    """Parse ``n`` on the first line then whitespace-separated ``u v`` pairs.

    Duplicate edges are ignored; vertex range and self-loops are checked.
    """
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise FormatError("empty input")
    try:
        n = int(lines[0])
    except ValueError:
        raise FormatError(f"bad vertex count line: {lines[0]!r}") from None
    if n < 0:
        raise FormatError("vertex count must be >= 0")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError(f"bad edge line: {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"bad edge line: {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"vertex out of range in line: {ln!r}")
        if u == v:
            raise FormatError(f"self-loop in line: {ln!r}")
        edges.append((u, v))
    return Graph(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


_G6_MAX_SHORT = 62
_G6_MAX_LONG = 258047


def _g6_encode_n(n: int) -> str:
    if n <= _G6_MAX_SHORT:
        return chr(n + 63)
    if n <= _G6_MAX_LONG:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise ValueError(f"graph6 encoding limited to n <= {_G6_MAX_LONG}, got {n}")


def encode_graph6(g: Graph) -> str:
    """Standard graph6: upper-triangle bits, column-major, 6-bit chunks + 63."""
    n = g.n
    out = [_g6_encode_n(n)]
    buf = 0
    filled = 0
    for j in range(1, n):
        col = g.adj[j]
        for i in range(j):
            buf = (buf << 1) | ((col >> i) & 1)
            filled += 1
            if filled == 6:
                out.append(chr(buf + 63))
                buf = 0
                filled = 0
    if filled:
        out.append(chr((buf << (6 - filled)) + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise FormatError("empty graph6 string")
    data = []
    for ch in s:
        b = ord(ch)
        if not (63 <= b <= 126):
            raise FormatError(f"graph6 byte out of range: {ch!r}")
        data.append(b - 63)
    pos = 0
    if data[0] == 63:
        if len(data) >= 2 and data[1] == 63:
            if len(data) < 8:
                raise FormatError("truncated graph6 vertex count")
            n = 0
            for k in range(2, 8):
                n = (n << 6) | data[k]
            pos = 8
        else:
            if len(data) < 4:
                raise FormatError("truncated graph6 vertex count")
            n = (data[1] << 12) | (data[2] << 6) | data[3]
            pos = 4
    else:
        n = data[0]
        pos = 1
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos != nbytes:
        raise FormatError(
            f"graph6 body length {len(data) - pos} != expected {nbytes} for n={n}"
        )
    adj = [0] * n
    bit = 0
    for j in range(1, n):
        for i in range(j):
            chunk = data[pos + bit // 6]
            if (chunk >> (5 - bit % 6)) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            bit += 1
    return from_adj_masks(adj)


def neighbor_multiplicity(
    g: Graph, members: Iterable[int], k: int
) -> tuple[frozenset[int], frozenset[int]]:
    """Split vertices by how many neighbors they have inside ``members``.

    Returns ``(exactly_k, at_least_k)``; membership of x in ``members`` is
    not excluded.
    """
    xmask = mask_of(members)
    exact = []
    atleast = []
    for v in range(g.n):
        c = (g.adj[v] & xmask).bit_count()
        if c == k:
            exact.append(v)
        if c >= k:
            atleast.append(v)
    return frozenset(exact), frozenset(atleast)


def component_mask(adj: tuple[int, ...] | list[int], start: int) -> int:
    """Bitmask of the connected component containing ``start``."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def is_connected(g: Graph) -> tuple[bool, frozenset[int] | None]:
    """Connectivity test; on failure the witness is one proper component."""
    if g.n == 0:
        raise ValueError("connectivity undefined for the empty graph")
    comp = component_mask(g.adj, 0)
    if comp == g.full_mask:
        return True, None
    return False, frozenset(bits(comp))
