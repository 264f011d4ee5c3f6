"""Exact and statistical verification of coupling runs.

Exact checks (fractions, zero tolerance): first-step marginals of the
cubic engine, the four index laws of the regular protocol, and the
transport sum identities.  Statistical checks: Pearson chi-square of
empirical transition counts against the uniform neighbor law, with a
Bonferroni family-wise verdict.  Brute-force oracles sweep all subsets to
confirm the two Hall-condition inequalities the constructions rest on.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from scipy.stats import chi2

from .couplers import Trajectory, k22_context, one_step_matching, s3b_rows
from .graphs import Graph, distance_capped
from .matching import (
    TransportMatrix,
    compatible,
    mover_pairs,
    other_pairs,
)
from .structure import classify_scenario, closed_neighborhood_duplicates, contains_Hd


class CertificationError(ValueError):
    """An exact (zero-tolerance) identity failed."""


# ---------------------------------------------------------------------------
# avoidance checking


@dataclass
class Violation:
    tick: int
    kind: str  # collision_same_tick | collision_swap | adjacency_at_block_end | non_edge_step
    detail: tuple


def check_avoidance(g: Graph, traj: Trajectory) -> list[Violation]:
    """All avoidance/consistency violations in a trajectory.

    Checks per tick: every step is an edge; no two walkers share a vertex;
    for two-walker runs, B_t != A_{t+1}; for block engines, distance >= 2
    at each block marker.
    """
    if traj.graph_digest != g.digest():
        raise ValueError("trajectory/graph digest mismatch")
    out: list[Violation] = []
    pos = traj.positions
    for t in range(len(pos)):
        cur = pos[t]
        for i in range(len(cur)):
            for j in range(i + 1, len(cur)):
                if cur[i] == cur[j]:
                    out.append(Violation(t, "collision_same_tick", (i, j, cur[i])))
        if t + 1 < len(pos):
            nxt = pos[t + 1]
            for w in range(len(cur)):
                # staying put is never a simple-random-walk step either
                if not g.has_edge(cur[w], nxt[w]):
                    out.append(Violation(t, "non_edge_step", (w, cur[w], nxt[w])))
            if len(cur) == 2 and cur[1] == nxt[0]:
                out.append(Violation(t, "collision_swap", (cur[1],)))
    if traj.engine in ("cubic", "squarefree"):
        for t in traj.block_marks:
            if t < len(pos):
                a, b = pos[t][0], pos[t][1]
                if distance_capped(g, a, b, 2) < 2:
                    out.append(Violation(t, "adjacency_at_block_end", (a, b)))
    return out


# ---------------------------------------------------------------------------
# exact cubic marginals


@dataclass
class MarginalReport:
    scenario: str
    alice: dict[int, Fraction]
    bob: dict[int, Fraction]
    residual: Fraction = Fraction(0)


def _uniform(nbrs) -> dict[int, Fraction]:
    p = Fraction(1, len(nbrs))
    return {v: p for v in nbrs}


def exact_cubic_marginals(g: Graph, a: int, b: int) -> MarginalReport:
    """First-step law of each walker under the cubic block coupling,
    computed by exact enumeration of the coupler's random choices.
    Raises CertificationError unless both laws are exactly uniform."""
    sc = classify_scenario(g, a, b)
    alice: dict[int, Fraction] = defaultdict(Fraction)
    bob: dict[int, Fraction] = defaultdict(Fraction)
    if sc.tag == "S1":
        alice, bob = _uniform(g.adjacency[a]), _uniform(g.adjacency[b])
    elif sc.tag in ("S2", "S3a", "S4", "S5"):
        for ap, bp in one_step_matching(g, a, b):
            alice[ap] += Fraction(1, 3)
            bob[bp] += Fraction(1, 3)
    elif sc.tag == "S3b":
        for (a1, _), (b1, _) in s3b_rows(g, a, b):
            alice[a1] += Fraction(1, 9)
            bob[b1] += Fraction(1, 9)
    else:  # S6
        a1, a2, b1, b2, c_a, c_b = k22_context(g, a, b, sc.witness)
        third = Fraction(1, 3)
        # strategy 1: Alice exits, Bob flips inside
        alice[c_a] += third
        bob[b1] += third / 2
        bob[b2] += third / 2
        # strategy 2: Alice flips inside, Bob exits
        alice[a1] += third / 2
        alice[a2] += third / 2
        bob[c_b] += third
        # strategy 3: Bob's first step is the partner of Alice's second
        # position, or a coin when Alice returns immediately
        alice[a1] += third / 2
        alice[a2] += third / 2
        for second, p2 in ((a, Fraction(1, 3)), (b1, Fraction(1, 3)), (b2, Fraction(1, 3))):
            w = third * p2
            if second == a:  # T = 2, coin
                bob[b1] += w / 2
                bob[b2] += w / 2
            else:
                bob[b2 if second == b1 else b1] += w
    for v, law, nbrs in ((a, alice, g.adjacency[a]), (b, bob, g.adjacency[b])):
        want = Fraction(1, len(nbrs))
        for u in nbrs:
            if law.get(u, Fraction(0)) != want:
                raise CertificationError(
                    f"first-step law at vertex {v} gives {u} mass {law.get(u, 0)}, expected {want}"
                )
    return MarginalReport(sc.tag, dict(alice), dict(bob))


def enumerate_k22_blocks(g: Graph, a: int, b: int, quad, max_len: int = 16):
    """Exhaustive law of the K_{2,2} excursion strategy (strategy 3 only):
    returns (outcomes, truncated, residual) where outcomes are
    (prob, alice_steps, bob_steps) for excursions with T <= max_len and
    truncated holds (prob, alice_prefix) for the mass beyond max_len."""
    a1, a2, b1, b2, c_a, c_b = k22_context(g, a, b, quad)
    partner = {a1: a2, a2: a1, b1: b2, b2: b1}
    outcomes: list[tuple[Fraction, list[int], list[int]]] = []
    truncated: list[tuple[Fraction, list[int]]] = []

    def mirror(alice_steps, final_choice):
        T = len(alice_steps)
        bob = []
        for s in range(1, T):
            if s + 1 < T:
                bob.append(partner[alice_steps[s]])
            else:
                pair = (b1, b2) if s % 2 == 1 else (a1, a2)
                bob.append(pair[final_choice])
        bob.append(b if T % 2 == 0 else a)
        return bob

    def walk(path: list[int], prob: Fraction):
        last = path[-1]
        if last in (a, b):
            for choice in (0, 1):
                outcomes.append((prob / 2, list(path), mirror(path, choice)))
            return
        if len(path) >= max_len:
            truncated.append((prob, list(path)))
            return
        nbrs = g.adjacency[last]
        step = prob / len(nbrs)
        for nxt in nbrs:
            walk(path + [nxt], step)

    for first in (a1, a2):
        walk([first], Fraction(1, 2))
    residual = sum((p for p, _ in truncated), Fraction(0))
    return outcomes, truncated, residual


# ---------------------------------------------------------------------------
# exact regular index laws


@dataclass
class IndexLaws:
    p_i: dict[int, Fraction]  # first-step vertex -> P(I)
    p_k_given_i: dict[tuple[int, int], Fraction]
    p_j: dict[int, Fraction]
    p_l_given_j: dict[tuple[int, int], Fraction]


def exact_regular_index_laws(tm: TransportMatrix, d: int) -> IndexLaws:
    """The four sampled-index laws of a regular transport matrix, computed
    exactly; certifies P(I)=1/(d-1), P(K|I)=P(J)=P(L|J)=1/d."""
    if tm.kind != "regular":
        raise ValueError("expected a regular-kind transport matrix")
    total = d * d * (d - 1)
    row_tot: dict[int, int] = defaultdict(int)
    cell_ik: dict[tuple[int, int], int] = defaultdict(int)
    col_tot: dict[int, int] = defaultdict(int)
    cell_jl: dict[tuple[int, int], int] = defaultdict(int)
    grand = 0
    for r, mp in enumerate(tm.row_labels):
        for c, op in enumerate(tm.col_labels):
            w = tm.entries[r][c]
            if not w:
                continue
            grand += w
            row_tot[mp.first_step] += w
            cell_ik[(mp.first_step, mp.second_step)] += w
            col_tot[op.step] += w
            cell_jl[(op.step, op.next_excluded)] += w
    if grand != total:
        raise CertificationError(f"matrix total {grand}, expected {total}")
    p_i = {i: Fraction(w, total) for i, w in row_tot.items()}
    p_j = {j: Fraction(w, total) for j, w in col_tot.items()}
    p_k_given_i = {
        (i, k): Fraction(w, row_tot[i]) for (i, k), w in cell_ik.items()
    }
    p_l_given_j = {
        (j, l): Fraction(w, col_tot[j]) for (j, l), w in cell_jl.items()
    }
    for i, p in p_i.items():
        if p != Fraction(1, d - 1):
            raise CertificationError(f"P(I={i}) = {p}, expected 1/{d - 1}")
    for (i, k), p in p_k_given_i.items():
        if p != Fraction(1, d):
            raise CertificationError(f"P(K={k}|I={i}) = {p}, expected 1/{d}")
    for j, p in p_j.items():
        if p != Fraction(1, d):
            raise CertificationError(f"P(J={j}) = {p}, expected 1/{d}")
    for (j, l), p in p_l_given_j.items():
        if p != Fraction(1, d):
            raise CertificationError(f"P(L={l}|J={j}) = {p}, expected 1/{d}")
    return IndexLaws(p_i, p_k_given_i, p_j, p_l_given_j)


# ---------------------------------------------------------------------------
# chi-square faithfulness


@dataclass
class CellResult:
    walker: int
    vertex: int
    departures: int
    statistic: float | None
    p_value: float | None
    tested: bool


@dataclass
class FaithfulnessReport:
    alpha: float
    cells: list[CellResult] = field(default_factory=list)
    tested_count: int = 0
    passed: bool = True

    @property
    def untested_count(self) -> int:
        return len(self.cells) - self.tested_count


def chi_square_faithfulness(
    g: Graph, traj: Trajectory, alpha: float = 0.001, min_departures: int = 30
) -> FaithfulnessReport:
    """Pearson chi-square of each walker's transition counts against the
    uniform neighbor law, Bonferroni-corrected across all tested cells.
    Cells with fewer than min_departures departures are marked untested."""
    pos = traj.positions
    walkers = len(pos[0]) if pos else 0
    counts: dict[tuple[int, int], dict[int, int]] = defaultdict(lambda: defaultdict(int))
    for t in range(len(pos) - 1):
        for w in range(walkers):
            counts[(w, pos[t][w])][pos[t + 1][w]] += 1

    report = FaithfulnessReport(alpha=alpha)
    raw: list[tuple[CellResult, float | None]] = []
    for (w, v), trans in sorted(counts.items()):
        nbrs = g.adjacency[v]
        n_dep = sum(trans.values())
        if n_dep < min_departures or len(nbrs) < 2:
            raw.append((CellResult(w, v, n_dep, None, None, False), None))
            continue
        expected = n_dep / len(nbrs)
        stat = sum((trans.get(u, 0) - expected) ** 2 / expected for u in nbrs)
        p = float(chi2.sf(stat, len(nbrs) - 1))
        raw.append((CellResult(w, v, n_dep, stat, p, True), p))
    tested = sum(1 for _, p in raw if p is not None)
    threshold = alpha / tested if tested else 0.0
    passed = True
    for cell, p in raw:
        report.cells.append(cell)
        if p is not None and p < threshold:
            passed = False
    report.tested_count = tested
    report.passed = passed
    return report


# ---------------------------------------------------------------------------
# brute-force lemma oracles

SUBSET_CAP = 1 << 20


@dataclass
class OracleResult:
    holds: bool
    worst_subset: tuple
    worst_margin: Fraction  # min over subsets of |cmp(S)| - ratio * |S|


def _subset_sweep(masks: list[int], ratio: Fraction, labels) -> OracleResult:
    n = len(masks)
    if (1 << n) > SUBSET_CAP:
        raise ValueError(f"2^{n} subsets exceed the cap of 2^20; use sampling instead")
    cmp_bits = [0] * (1 << n)
    worst = (Fraction(0), 0)  # margin, subset
    for s in range(1, 1 << n):
        low = s & -s
        cmp_bits[s] = cmp_bits[s ^ low] | masks[low.bit_length() - 1]
        margin = Fraction(cmp_bits[s].bit_count()) - ratio * s.bit_count()
        if margin < worst[0]:
            worst = (margin, s)
    subset = tuple(labels[i] for i in range(n) if worst[1] >> i & 1)
    return OracleResult(worst[0] >= 0, subset, worst[0])


def lemma34_oracle(g: Graph, a: int, b: int, e: int) -> OracleResult:
    """Exhaustively verify d/(d-1)*|A0| <= |cmp(A0)| over every subset A0
    of the mover-pair set at (a, b, e)."""
    d = g.degree(a)
    rows = mover_pairs(g, a, e)
    cols = other_pairs(g, b)
    col_index = {op: idx for idx, op in enumerate(cols)}
    masks = []
    for mp in rows:
        bits = 0
        for op, idx in col_index.items():
            if compatible(g, mp, op):
                bits |= 1 << idx
        masks.append(bits)
    return _subset_sweep(masks, Fraction(d, d - 1), rows)


def lemma42_oracle(g: Graph, a: int, b: int) -> OracleResult:
    """Exhaustively verify |cmp(N0)| >= (l/k)*|N0| over every subset N0 of
    N(a), where k = deg(a) and l = deg(b)."""
    if b == a or g.has_edge(a, b):
        raise ValueError("requires b not in {a} u N(a)")
    na, nb = g.adjacency[a], g.adjacency[b]
    if len(na) > 20:
        raise ValueError("degree over the 2^20 subset cap")
    masks = []
    for ap in na:
        bits = 0
        for idx, bp in enumerate(nb):
            if bp != ap and not g.has_edge(ap, bp):
                bits |= 1 << idx
        masks.append(bits)
    return _subset_sweep(masks, Fraction(len(nb), len(na)), na)


def lemma31_equivalence(g: Graph, d: int) -> tuple[bool, tuple[bool, bool, bool]]:
    """Evaluate the three H_d-freeness predicates independently and report
    whether they agree (they must, on d-regular graphs)."""
    p1 = contains_Hd(g, d) is None
    p2 = not closed_neighborhood_duplicates(g)
    p3 = True
    for a in range(g.n):
        na = set(g.adjacency[a])
        for b in range(g.n):
            if b == a or set(g.adjacency[b]) == na:
                continue
            if not (na - set(g.adjacency[b]) - {b}):
                p3 = False
                break
        if not p3:
            break
    return (p1 == p2 == p3), (p1, p2, p3)


# ---------------------------------------------------------------------------
# analytic containment bound


def hd_probability_upper_bound(n: int, d: int, n0: int, m_edges: int) -> float:
    """Upper bound n^n0 * (d/(n-2m))^m on the probability that a fixed
    pattern with n0 vertices and m edges appears in the d-regular
    configuration model; computed in logs to avoid overflow."""
    if m_edges <= n0:
        raise ValueError("bound requires m_edges > n0")
    if n <= 2 * m_edges:
        raise ValueError("bound requires n > 2*m_edges")
    log_val = n0 * math.log(n) + m_edges * (math.log(d) - math.log(n - 2 * m_edges))
    return math.exp(log_val)
