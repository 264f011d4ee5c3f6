"""Immutable simple graphs, multigraphs, and the edge-list text format.

Vertices are dense integers 0..n-1.  Adjacency is stored as sorted tuples
so every iteration order in the package is deterministic.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass, field


class GraphParseError(ValueError):
    """Malformed edge-list input; message names the offending line."""


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    duplicate_edges_dropped: int = 0

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise ValueError("adjacency length must equal n")
        for v, nbrs in enumerate(self.adjacency):
            if len(set(nbrs)) != len(nbrs):
                raise ValueError(f"parallel edges at vertex {v}")
            for u in nbrs:
                if u == v:
                    raise ValueError(f"loop at vertex {v}")
                if not 0 <= u < self.n:
                    raise ValueError(f"vertex {u} out of range")
                if v not in self.adjacency[u]:
                    raise ValueError(f"asymmetric edge ({v},{u})")

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def to_text(self) -> str:
        lines = [f"{self.n} {self.edge_count}"]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.to_text().encode("utf-8")).hexdigest()[:16]


def graph_from_edges(n: int, edges, *, dedupe: bool = False) -> Graph:
    """Build a Graph from (u, v) pairs.

    With dedupe=True repeated edges are dropped and counted instead of
    rejected; loops are always an error.
    """
    adj: list[set[int]] = [set() for _ in range(n)]
    dropped = 0
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        if v in adj[u]:
            if not dedupe:
                raise ValueError(f"duplicate edge ({u},{v})")
            dropped += 1
            continue
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in adj), dropped)


def parse_graph(text: str) -> Graph:
    """Parse the interchange edge-list format: 'n m' then m lines 'u v'.

    Duplicate edges are deduplicated (counted on the returned Graph);
    loops and out-of-range vertices are errors naming the line number.
    """
    lines = text.splitlines()
    if not lines:
        raise GraphParseError("empty input")
    header = lines[0].split()
    if len(header) != 2:
        raise GraphParseError(f"bad header at line 1: {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphParseError(f"bad header at line 1: {lines[0]!r}") from None
    if n < 0 or m < 0:
        raise GraphParseError("negative n or m at line 1")
    if len(lines) < m + 1:
        raise GraphParseError(f"expected {m} edge lines, found {len(lines) - 1}")

    adj: list[set[int]] = [set() for _ in range(n)]
    dropped = 0
    for lineno in range(2, m + 2):
        raw = lines[lineno - 1]
        parts = raw.split()
        if len(parts) != 2:
            raise GraphParseError(f"malformed edge at line {lineno}: {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"malformed edge at line {lineno}: {raw!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"vertex out of range at line {lineno}")
        if u == v:
            raise GraphParseError(f"loop at line {lineno}")
        if v in adj[u]:
            dropped += 1
            continue
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in adj), dropped)


@dataclass
class Profile:
    n: int
    edge_count: int
    min_degree: int
    max_degree: int
    regular_degree: int | None
    connected: bool


def basic_profile(g: Graph) -> Profile:
    degs = [g.degree(v) for v in range(g.n)] or [0]
    lo, hi = min(degs), max(degs)
    return Profile(
        n=g.n,
        edge_count=g.edge_count,
        min_degree=lo,
        max_degree=hi,
        regular_degree=lo if lo == hi else None,
        connected=is_connected(g),
    )


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    seen = [False] * g.n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        v = queue.popleft()
        for u in g.adjacency[v]:
            if not seen[u]:
                seen[u] = True
                count += 1
                queue.append(u)
    return count == g.n


def distance_capped(g: Graph, u: int, v: int, cap: int) -> int:
    """BFS distance between u and v, or cap if the distance is >= cap."""
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        d = dist[x] + 1
        if d >= cap:
            return cap
        for y in g.adjacency[x]:
            if y not in dist:
                if y == v:
                    return d
                dist[y] = d
                queue.append(y)
    return cap


def common_neighbors(g: Graph, u: int, v: int) -> tuple[int, ...]:
    if u == v:
        raise ValueError("common_neighbors requires u != v")
    nv = set(g.adjacency[v])
    return tuple(x for x in g.adjacency[u] if x in nv)


@dataclass
class Multigraph:
    """Edge list with multiplicities; loops allowed (configuration model output)."""

    n: int
    edges: list[tuple[int, int]] = field(default_factory=list)  # (u, v) with u <= v

    def __post_init__(self):
        for u, v in self.edges:
            if not (0 <= u <= v < self.n):
                raise ValueError(f"edge ({u},{v}) invalid for n={self.n}")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def loop_count(self) -> int:
        return sum(1 for u, v in self.edges if u == v)

    def multi_edge_count(self) -> int:
        """Number of edge slots beyond the first between each vertex pair (loops excluded)."""
        seen: dict[tuple[int, int], int] = {}
        for u, v in self.edges:
            if u != v:
                seen[(u, v)] = seen.get((u, v), 0) + 1
        return sum(c - 1 for c in seen.values() if c > 1)

    def is_simple(self) -> bool:
        if self.loop_count():
            return False
        return self.multi_edge_count() == 0

    def simple_support(self) -> Graph:
        """Underlying simple graph: drop loops, collapse multiplicities."""
        return graph_from_edges(
            self.n, ((u, v) for u, v in self.edges if u != v), dedupe=True
        )
