"""Forbidden-subgraph prevalence experiment on configuration-model graphs.

For each n, sample d-regular configuration-model multigraphs and record how
often the relevant forbidden pattern (H~_3 for d=3, H_d for d>=4) appears
in the simple support, together with a binomial confidence interval and
the analytic containment bound for reference.  Cells fan out over a
process pool sized by AVOIDKIT_THREADS and merge in deterministic order.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .generate import configuration_model, random_regular_simple
from .rng import derive_seed
from .structure import contains_H3tilde, contains_Hd

_Z95 = 1.959963984540054


def wilson_interval(hits: int, samples: int, z: float = _Z95) -> tuple[float, float]:
    """Wilson score interval; always contains the point frequency."""
    if samples == 0:
        return (0.0, 1.0)
    p = hits / samples
    denom = 1 + z * z / samples
    center = (p + z * z / (2 * samples)) / denom
    half = z * math.sqrt(p * (1 - p) / samples + z * z / (4 * samples**2)) / denom
    # clamp against rounding: the interval always contains the point estimate
    return (min(p, max(0.0, center - half)), max(p, min(1.0, center + half)))


@dataclass
class PrevalenceRow:
    n: int
    d: int
    samples: int
    hits: int
    freq: float
    ci_lo: float
    ci_hi: float
    bound: float | None  # None when the analytic bound's preconditions fail
    loops: int = 0
    multi_edges: int = 0

    def __post_init__(self):
        if not 0 <= self.hits <= self.samples:
            raise ValueError("hits must lie in [0, samples]")


CSV_HEADER = "n,d,samples,hits,freq,ci_lo,ci_hi,bound"


def row_to_csv(row: PrevalenceRow) -> str:
    bound = f"{row.bound:.6e}" if row.bound is not None else ""
    return f"{row.n},{row.d},{row.samples},{row.hits},{row.freq:.6f},{row.ci_lo:.6f},{row.ci_hi:.6f},{bound}"


def rows_from_csv(text: str) -> list[PrevalenceRow]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("bad prevalence CSV header")
    rows = []
    for ln in lines[1:]:
        n, d, samples, hits, freq, lo, hi, bound = ln.split(",")
        rows.append(
            PrevalenceRow(
                int(n), int(d), int(samples), int(hits),
                float(freq), float(lo), float(hi),
                float(bound) if bound else None,
            )
        )
    return rows


def pattern_parameters(d: int) -> tuple[int, int]:
    """(n0, m) of the forbidden pattern: H~_3 has 5 vertices / 7 edges;
    H_d has d+1 vertices / 2d-1 edges."""
    if d == 3:
        return 5, 7
    return d + 1, 2 * d - 1


def _sample_cell(args) -> tuple[bool, int, int]:
    """One (n, replica) cell: returns (hit, loops, multi_edges)."""
    n, d, seed, simple_connected = args
    if simple_connected:
        g, _ = random_regular_simple(n, d, seed, connected_required=True)
        loops = multi = 0
    else:
        mg = configuration_model(n, d, seed)
        loops, multi = mg.loop_count(), mg.multi_edge_count()
        g = mg.simple_support()
    if d == 3:
        hit = contains_H3tilde(g) is not None
    else:
        hit = contains_Hd(g, d) is not None
    return hit, loops, multi


def worker_count() -> int:
    raw = os.environ.get("AVOIDKIT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def prevalence_experiment(
    d: int,
    n_list: list[int],
    samples: int,
    seed: int,
    simple_connected: bool = False,
) -> list[PrevalenceRow]:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    for n in n_list:
        if (n * d) % 2 != 0:
            raise ValueError(f"n*d must be even (n={n}, d={d})")
    cells = []
    idx = 0
    for n in n_list:
        for _ in range(samples):
            cells.append((n, d, derive_seed(seed, idx), simple_connected))
            idx += 1
    workers = worker_count()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sample_cell, cells, chunksize=64))
    else:
        results = [_sample_cell(c) for c in cells]

    n0, m = pattern_parameters(d)
    rows = []
    for i, n in enumerate(n_list):
        chunk = results[i * samples : (i + 1) * samples]
        hits = sum(1 for h, _, _ in chunk if h)
        lo, hi = wilson_interval(hits, samples)
        bound = None
        if m > n0 and n > 2 * m:
            from .verify import hd_probability_upper_bound

            bound = hd_probability_upper_bound(n, d, n0, m)
        rows.append(
            PrevalenceRow(
                n, d, samples, hits, hits / samples, lo, hi, bound,
                loops=sum(l for _, l, _ in chunk),
                multi_edges=sum(me for _, _, me in chunk),
            )
        )
    return rows
