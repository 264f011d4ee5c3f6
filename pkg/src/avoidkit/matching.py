"""Compatibility relation, cmp sets, and the integer transportation solver.

The multiset bipartite matchings behind both coupling laws are collapsed
into integer transportation problems (row sums = supplies, column sums =
demands, support restricted to compatible cells) and solved by Dinic max
flow with deterministic augmentation order.  Feasibility is equivalent to
the original perfect-matching problem by flow integrality.
"""

from __future__ import annotations

from collections import OrderedDict, deque
from dataclasses import dataclass


@dataclass(frozen=True)
class MoverPair:
    """Mover's two-step plan: (first_step, second_step) with second in N(first)."""

    first_step: int
    second_step: int


@dataclass(frozen=True)
class OtherPair:
    """Other walker's plan: one step plus the next excluded vertex."""

    step: int
    next_excluded: int


def compatible(g, mover: MoverPair, other: OtherPair) -> bool:
    """True iff b' avoids {a', a''} and, when a'' neighbors b', e' = a''."""
    ap, app = mover.first_step, mover.second_step
    bp, ep = other.step, other.next_excluded
    if bp == ap or bp == app:
        return False
    if g.has_edge(app, bp) and ep != app:
        return False
    return True


def mover_pairs(g, a: int, e: int) -> list[MoverPair]:
    """The set A: first step in N(a)\\{e}, second step any neighbor of the first."""
    return [
        MoverPair(ap, app)
        for ap in g.adjacency[a]
        if ap != e
        for app in g.adjacency[ap]
    ]


def other_pairs(g, b: int) -> list[OtherPair]:
    """The set B: step in N(b), next exclusion any neighbor of the step."""
    return [OtherPair(bp, ep) for bp in g.adjacency[b] for ep in g.adjacency[bp]]


def _check_regular_triple(g, a: int, b: int, e: int) -> None:
    if b == a:
        raise ValueError("requires b != a")
    if e not in g.adjacency[a]:
        raise ValueError("requires e in N(a)")
    if g.has_edge(a, b) and e != b:
        raise ValueError("requires e = b when b in N(a)")


def cmp_regular(g, a: int, b: int, e: int, mover_set) -> set[OtherPair]:
    """Other-pairs compatible with at least one mover-pair in mover_set."""
    _check_regular_triple(g, a, b, e)
    return {
        op
        for op in other_pairs(g, b)
        if any(compatible(g, mp, op) for mp in mover_set)
    }


def cmp_squarefree(g, a: int, b: int, first_steps) -> set[int]:
    """Steps b' in N(b) with b' outside {a'} u N(a') for some a' in first_steps."""
    if b == a or g.has_edge(a, b):
        raise ValueError("requires b not in {a} u N(a)")
    na = set(g.adjacency[a])
    if not set(first_steps) <= na:
        raise ValueError("first_steps must be a subset of N(a)")
    out = set()
    for bp in g.adjacency[b]:
        for ap in first_steps:
            if bp != ap and not g.has_edge(ap, bp):
                out.add(bp)
                break
    return out


class TransportInfeasible(RuntimeError):
    """Raised when no integer matrix meets the supplies/demands on the
    allowed support; carries a violated-Hall-set certificate (min cut)."""

    def __init__(self, message: str, hall_rows: list[int], hall_cols: list[int]):
        super().__init__(f"{message}; Hall violator rows={hall_rows} reach only cols={hall_cols}")
        self.hall_rows = hall_rows
        self.hall_cols = hall_cols


class _Dinic:
    """Deterministic Dinic max flow (arcs scanned in insertion order)."""

    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_edge(self, u: int, v: int, c: int) -> int:
        idx = len(self.to)
        self.head[u].append(idx)
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(idx + 1)
        self.to.append(u)
        self.cap.append(0)
        return idx

    def _bfs(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for idx in self.head[u]:
                v = self.to[idx]
                if self.cap[idx] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[t] >= 0 else None

    def _dfs(self, u: int, t: int, f: int, level: list[int], it: list[int]) -> int:
        if u == t:
            return f
        while it[u] < len(self.head[u]):
            idx = self.head[u][it[u]]
            v = self.to[idx]
            if self.cap[idx] > 0 and level[v] == level[u] + 1:
                pushed = self._dfs(v, t, min(f, self.cap[idx]), level, it)
                if pushed:
                    self.cap[idx] -= pushed
                    self.cap[idx ^ 1] += pushed
                    return pushed
            it[u] += 1
        return 0

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = self._bfs(s, t)
            if level is None:
                return flow
            it = [0] * self.n
            while True:
                pushed = self._dfs(s, t, 1 << 60, level, it)
                if not pushed:
                    break
                flow += pushed

    def reachable_from(self, s: int) -> set[int]:
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for idx in self.head[u]:
                v = self.to[idx]
                if self.cap[idx] > 0 and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen


def solve_transport(
    supplies: list[int], demands: list[int], allowed: list[list[bool]]
) -> list[list[int]]:
    """Integer matrix m >= 0 with row sums = supplies, column sums = demands,
    supported on allowed cells.  Raises TransportInfeasible with the min-cut
    Hall certificate when no such matrix exists."""
    nr, nc = len(supplies), len(demands)
    total = sum(supplies)
    if total != sum(demands):
        raise ValueError("total supply must equal total demand")
    src, snk = nr + nc, nr + nc + 1
    net = _Dinic(nr + nc + 2)
    row_arcs = [net.add_edge(src, i, supplies[i]) for i in range(nr)]
    cell_arcs: dict[tuple[int, int], int] = {}
    for i in range(nr):
        for j in range(nc):
            if allowed[i][j]:
                cell_arcs[(i, j)] = net.add_edge(i, nr + j, total)
    for j in range(nc):
        net.add_edge(nr + j, snk, demands[j])
    flow = net.max_flow(src, snk)
    if flow < total:
        cut = net.reachable_from(src)
        hall_rows = [i for i in range(nr) if i in cut]
        hall_cols = [j for j in range(nc) if nr + j in cut]
        raise TransportInfeasible(
            f"max flow {flow} < required {total}", hall_rows, hall_cols
        )
    m = [[0] * nc for _ in range(nr)]
    for (i, j), idx in cell_arcs.items():
        m[i][j] = net.cap[idx ^ 1]  # flow on the cell arc
    del row_arcs
    return m


@dataclass(frozen=True)
class TransportMatrix:
    """Coupling joint-count matrix: entries[r][c] over row/column label lists."""

    kind: str  # "regular" or "squarefree"
    row_labels: tuple
    col_labels: tuple
    entries: tuple[tuple[int, ...], ...]
    row_sum: int
    col_sum: int
    swapped: bool = False  # squarefree only: roles of a and b were exchanged

    @property
    def total(self) -> int:
        return self.row_sum * len(self.row_labels)

    def check_sums(self) -> None:
        for r, row in enumerate(self.entries):
            if sum(row) != self.row_sum:
                raise AssertionError(f"row {r} sums to {sum(row)}, expected {self.row_sum}")
        for c in range(len(self.col_labels)):
            s = sum(row[c] for row in self.entries)
            if s != self.col_sum:
                raise AssertionError(f"column {c} sums to {s}, expected {self.col_sum}")


class LruCache:
    """Bounded memo for transport matrices, keyed per state triple/pair."""

    def __init__(self, capacity: int = 4096):
        self.capacity = capacity
        self._data: OrderedDict = OrderedDict()
        self.hits = 0
        self.misses = 0

    def get(self, key):
        if key in self._data:
            self.hits += 1
            self._data.move_to_end(key)
            return self._data[key]
        self.misses += 1
        return None

    def put(self, key, value) -> None:
        self._data[key] = value
        self._data.move_to_end(key)
        while len(self._data) > self.capacity:
            self._data.popitem(last=False)

    @property
    def hit_rate(self) -> float:
        lookups = self.hits + self.misses
        return self.hits / lookups if lookups else 0.0


def build_regular_transport(g, a: int, b: int, e: int, cache: LruCache | None = None) -> TransportMatrix:
    """Transport matrix m(i,j,k,l) for the d-regular protocol at (a, b, e):
    row sums d over mover-pairs, column sums d-1 over other-pairs."""
    _check_regular_triple(g, a, b, e)
    key = ("reg", a, b, e)
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    d = g.degree(a)
    rows = tuple(mover_pairs(g, a, e))
    cols = tuple(other_pairs(g, b))
    allowed = [[compatible(g, mp, op) for op in cols] for mp in rows]
    try:
        m = solve_transport([d] * len(rows), [d - 1] * len(cols), allowed)
    except TransportInfeasible as err:
        raise TransportInfeasible(
            f"hypothesis violated (H_{d} present?) at (a={a}, b={b}, e={e})",
            err.hall_rows,
            err.hall_cols,
        ) from err
    tm = TransportMatrix(
        kind="regular",
        row_labels=rows,
        col_labels=cols,
        entries=tuple(tuple(row) for row in m),
        row_sum=d,
        col_sum=d - 1,
    )
    tm.check_sums()
    if cache is not None:
        cache.put(key, tm)
    return tm


def build_squarefree_transport(g, a: int, b: int, cache: LruCache | None = None) -> TransportMatrix:
    """Transport matrix m(i,j) for the square-free one-step coupling.

    Roles are swapped internally so rows index the higher-degree side
    (k rows with row sum l, l columns with column sum k)."""
    if b == a or g.has_edge(a, b):
        raise ValueError("requires b not in {a} u N(a)")
    if min(g.degree(a), g.degree(b)) < 3:
        raise ValueError("requires min degree >= 3 at both positions")
    key = ("sqf", a, b)
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    swapped = g.degree(a) < g.degree(b)
    u, v = (b, a) if swapped else (a, b)
    rows = g.adjacency[u]  # k vertices
    cols = g.adjacency[v]  # l vertices, l <= k
    k, l = len(rows), len(cols)
    allowed = [[cj != ri and not g.has_edge(ri, cj) for cj in cols] for ri in rows]
    try:
        m = solve_transport([l] * k, [k] * l, allowed)
    except TransportInfeasible as err:
        raise TransportInfeasible(
            f"hypothesis violated (square present?) at (a={a}, b={b})",
            err.hall_rows,
            err.hall_cols,
        ) from err
    tm = TransportMatrix(
        kind="squarefree",
        row_labels=rows,
        col_labels=cols,
        entries=tuple(tuple(row) for row in m),
        row_sum=l,
        col_sum=k,
        swapped=swapped,
    )
    tm.check_sums()
    if cache is not None:
        cache.put(key, tm)
    return tm
