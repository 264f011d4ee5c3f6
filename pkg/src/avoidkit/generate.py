"""Graph constructors: deterministic families and the configuration model.

The configuration model pairs half-edges via a Fisher-Yates shuffle, which
is uniform over perfect matchings of the n*d half-edge slots.  Simple
regular graphs are produced by rejection sampling on top of it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import Graph, Multigraph, graph_from_edges, is_connected
from .rng import Xoshiro256

DETERMINISTIC_FAMILIES = ("cycle", "complete", "complete_bipartite", "petersen", "circulant")
RANDOM_FAMILIES = ("configuration_model", "random_regular")

DEFAULT_REJECTION_BUDGET = 10**5


class RejectionBudgetExceeded(RuntimeError):
    def __init__(self, budget: int):
        super().__init__(f"rejection budget of {budget} attempts exceeded")
        self.budget = budget


@dataclass
class GenSpec:
    family: str
    params: dict[str, int] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.family not in DETERMINISTIC_FAMILIES + RANDOM_FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle requires n >= 3")
    return graph_from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete(n: int) -> Graph:
    if n < 2:
        raise ValueError("complete requires n >= 2")
    return graph_from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite(p: int, q: int) -> Graph:
    if p < 1 or q < 1:
        raise ValueError("complete_bipartite requires p, q >= 1")
    return graph_from_edges(p + q, ((i, p + j) for i in range(p) for j in range(q)))


def petersen() -> Graph:
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))          # outer pentagon
        edges.append((5 + i, 5 + (i + 2) % 5))  # inner pentagram
        edges.append((i, 5 + i))                # spokes
    return graph_from_edges(10, edges)


def circulant(n: int, offsets) -> Graph:
    offs = sorted(set(offsets))
    if n < 3 or not offs:
        raise ValueError("circulant requires n >= 3 and a nonempty offset set")
    for s in offs:
        if not 1 <= s <= n // 2:
            raise ValueError(f"circulant offset {s} outside [1, n/2]")
    edges = set()
    for i in range(n):
        for s in offs:
            u, v = i, (i + s) % n
            if u != v:
                edges.add((min(u, v), max(u, v)))
    return graph_from_edges(n, edges)


def heawood() -> Graph:
    """The Heawood graph: 3-regular, girth 6 (bipartite point-line incidence of the Fano plane)."""
    edges = [(i, (i + 1) % 14) for i in range(14)]
    for i in range(0, 14, 2):
        edges.append((i, (i + 5) % 14))
    return graph_from_edges(14, edges)


def generate_deterministic(spec: GenSpec) -> Graph:
    p = spec.params
    if spec.family == "cycle":
        return cycle(p["n"])
    if spec.family == "complete":
        return complete(p["n"])
    if spec.family == "complete_bipartite":
        return complete_bipartite(p["p"], p["q"])
    if spec.family == "petersen":
        return petersen()
    if spec.family == "circulant":
        return circulant(p["n"], p["offsets"])
    raise ValueError(f"{spec.family!r} is not a deterministic family")


def configuration_model(n: int, d: int, seed: int) -> Multigraph:
    """Uniform perfect matching of the n*d half-edges {0..n-1} x {0..d-1}.

    Each matched pair of half-edges contributes one edge slot, so the
    output always has exactly n*d/2 edges counted with multiplicity.
    """
    if d < 1:
        raise ValueError("configuration_model requires d >= 1")
    if (n * d) % 2 != 0:
        raise ValueError("configuration_model requires n*d even")
    rng = Xoshiro256(seed)
    stubs = [v for v in range(n) for _ in range(d)]
    rng.shuffle(stubs)
    edges = []
    for i in range(0, len(stubs), 2):
        u, v = stubs[i], stubs[i + 1]
        edges.append((min(u, v), max(u, v)))
    return Multigraph(n, edges)


def random_regular_simple(
    n: int,
    d: int,
    seed: int,
    connected_required: bool = False,
    budget: int = DEFAULT_REJECTION_BUDGET,
) -> tuple[Graph, int]:
    """Rejection-sample configuration_model until simple (and connected, if asked).

    Returns (graph, rejections).  Raises RejectionBudgetExceeded past `budget`.
    """
    if (n * d) % 2 != 0:
        raise ValueError("random_regular_simple requires n*d even")
    if not 0 < d < n:
        raise ValueError("random_regular_simple requires 0 < d < n")
    rng = Xoshiro256(seed)
    rejections = 0
    for _ in range(budget):
        mg = configuration_model(n, d, rng.next_u64())
        if not mg.is_simple():
            rejections += 1
            continue
        g = mg.simple_support()
        if connected_required and not is_connected(g):
            rejections += 1
            continue
        return g, rejections
    raise RejectionBudgetExceeded(budget)
