"""Command-line surface: gen, analyze, transport, simulate, verify, oracle, experiment.

Exit codes: 0 success, 1 domain failure (no engine applies, violations
found, infeasible instance), 2 input failure (parse/usage errors).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import RunConfig
from .couplers import parse_trajectory, simulate
from .experiment import CSV_HEADER, prevalence_experiment, row_to_csv
from .generate import (
    GenSpec,
    generate_deterministic,
    random_regular_simple,
)
from .graphs import GraphParseError, basic_profile, parse_graph
from .matching import (
    TransportInfeasible,
    build_regular_transport,
    build_squarefree_transport,
)
from .structure import (
    admissibility_verdict,
    contains_H3tilde,
    contains_Hd,
    is_square_free,
)
from .verify import (
    chi_square_faithfulness,
    check_avoidance,
    lemma31_equivalence,
    lemma34_oracle,
    lemma42_oracle,
)

EXIT_OK, EXIT_DOMAIN, EXIT_INPUT = 0, 1, 2


def _load_graph(path: str):
    try:
        return parse_graph(Path(path).read_text())
    except (OSError, GraphParseError) as err:
        raise SystemExit(_fail(EXIT_INPUT, f"cannot read graph {path}: {err}"))


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def cmd_gen(args) -> int:
    try:
        if args.family == "random_regular":
            if args.seed is None:
                return _fail(EXIT_INPUT, "random_regular requires --seed")
            g, rejections = random_regular_simple(
                args.n, args.d, args.seed, connected_required=args.connected
            )
            print(f"rejections: {rejections}")
        else:
            params = {}
            if args.family in ("cycle", "complete", "circulant"):
                params["n"] = args.n
            if args.family == "circulant":
                params["offsets"] = [int(x) for x in args.offsets.split(",")]
            if args.family == "complete_bipartite":
                params["p"], params["q"] = args.p, args.q
            g = generate_deterministic(GenSpec(args.family, params))
    except ValueError as err:
        return _fail(EXIT_INPUT, str(err))
    Path(args.output).write_text(g.to_text())
    prof = basic_profile(g)
    print(f"wrote {args.output}: n={prof.n} m={prof.edge_count} digest={g.digest()}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    g = _load_graph(args.graph)
    prof = basic_profile(g)
    print(f"n={prof.n} edges={prof.edge_count} min_deg={prof.min_degree} "
          f"max_deg={prof.max_degree} regular={prof.regular_degree} connected={prof.connected}")
    if g.duplicate_edges_dropped:
        print(f"warning: {g.duplicate_edges_dropped} duplicate edge(s) dropped")
    if prof.regular_degree is not None and prof.regular_degree >= 2:
        d = prof.regular_degree
        if d == 3:
            wit = contains_H3tilde(g)
            print(f"H~_3: {'present at ' + str(wit) if wit else 'absent'}")
        elif d >= 4:
            wit = contains_Hd(g, d)
            print(f"H_{d}: {'present at pair ' + str(wit) if wit else 'absent'}")
    c4 = is_square_free(g)
    print(f"square: {'found ' + str(c4) if c4 else 'square-free'}")
    try:
        verdict = admissibility_verdict(g)
    except ValueError as err:
        return _fail(EXIT_DOMAIN, str(err))
    extra = " (also square-free)" if verdict.also_squarefree else ""
    if verdict.engine == "none":
        print(f"verdict: none ({verdict.obstruction})")
        return EXIT_DOMAIN
    print(f"verdict: {verdict.engine}{extra}")
    return EXIT_OK


def cmd_transport(args) -> int:
    g = _load_graph(args.graph)
    try:
        if args.e is not None:
            tm = build_regular_transport(g, args.a, args.b, args.e)
        else:
            tm = build_squarefree_transport(g, args.a, args.b)
    except ValueError as err:
        return _fail(EXIT_INPUT, str(err))
    except TransportInfeasible as err:
        return _fail(EXIT_DOMAIN, str(err))
    print(f"kind={tm.kind} rows={len(tm.row_labels)} cols={len(tm.col_labels)} "
          f"row_sum={tm.row_sum} col_sum={tm.col_sum} total={tm.total}"
          + (" (roles swapped)" if tm.swapped else ""))
    for r, label in enumerate(tm.row_labels):
        print(f"{label}: {' '.join(str(x) for x in tm.entries[r])}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    g = _load_graph(args.graph)
    cfg = RunConfig.load(args.config) if args.config else RunConfig()
    ticks = args.ticks if args.ticks is not None else cfg.ticks
    seed = args.seed if args.seed is not None else cfg.seed
    engine = args.engine or cfg.engine
    if engine == "auto":
        verdict = admissibility_verdict(g)
        if verdict.engine == "none":
            return _fail(EXIT_DOMAIN, f"no engine applies: {verdict.obstruction}")
        engine = verdict.engine
    try:
        traj, eng = simulate(
            g, engine, ticks, seed,
            a0=args.a0, b0=args.b0, walkers=args.walkers,
            cache_capacity=cfg.cache_capacity,
        )
    except ValueError as err:
        return _fail(EXIT_DOMAIN, str(err))
    Path(args.output).write_text(traj.to_text())
    blocks = max(0, len(traj.block_marks) - 1)  # first mark is the start
    print(f"wrote {args.output}: engine={engine} ticks={len(traj.positions) - 1} "
          f"blocks={blocks}")
    counts = getattr(eng, "scenario_counts", None)
    if counts:
        hist = " ".join(f"{k}:{v}" for k, v in sorted(counts.items()))
        print(f"scenario histogram: {hist}")
    cache = getattr(eng, "cache", None)
    if cache is not None:
        print(f"cache hit rate: {cache.hit_rate:.3f}")
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    try:
        traj = parse_trajectory(Path(args.trajectory).read_text())
    except (OSError, ValueError) as err:
        return _fail(EXIT_INPUT, f"cannot read trajectory: {err}")
    if traj.graph_digest != g.digest():
        return _fail(EXIT_INPUT, "graph/trajectory digest mismatch")
    violations = check_avoidance(g, traj)
    for v in violations[:20]:
        print(f"violation at tick {v.tick}: {v.kind} {v.detail}")
    if len(violations) > 20:
        print(f"... and {len(violations) - 20} more")
    report = chi_square_faithfulness(g, traj, alpha=args.alpha)
    print(f"avoidance: {'clean' if not violations else f'{len(violations)} violation(s)'}")
    print(f"faithfulness: tested={report.tested_count} untested={report.untested_count} "
          f"verdict={'pass' if report.passed else 'FAIL'} (alpha={args.alpha})")
    return EXIT_OK if not violations and report.passed else EXIT_DOMAIN


def cmd_oracle(args) -> int:
    g = _load_graph(args.graph)
    try:
        if args.lemma == "lemma34":
            res = lemma34_oracle(g, args.a, args.b, args.e)
        elif args.lemma == "lemma42":
            res = lemma42_oracle(g, args.a, args.b)
        else:
            d = args.d if args.d is not None else basic_profile(g).regular_degree
            if d is None:
                return _fail(EXIT_INPUT, "lemma31 requires a regular graph or --d")
            agree, preds = lemma31_equivalence(g, d)
            print(f"predicates: Hd-free={preds[0]} no-duplicates={preds[1]} difference-nonempty={preds[2]}")
            print(f"agreement: {agree}")
            return EXIT_OK if agree else EXIT_DOMAIN
    except ValueError as err:
        return _fail(EXIT_INPUT, str(err))
    print(f"holds: {res.holds} worst_margin={res.worst_margin} worst_subset={res.worst_subset}")
    return EXIT_OK if res.holds else EXIT_DOMAIN


def cmd_experiment(args) -> int:
    n_list = [int(x) for x in args.n_list.split(",")]
    try:
        rows = prevalence_experiment(
            args.d, n_list, args.samples, args.seed, simple_connected=args.simple_connected
        )
    except ValueError as err:
        return _fail(EXIT_INPUT, str(err))
    lines = [CSV_HEADER] + [row_to_csv(r) for r in rows]
    text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text)
        print(f"wrote {args.output}")
    else:
        print(text, end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="avoidkit", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a graph file")
    g.add_argument("--family", required=True,
                   choices=["cycle", "complete", "complete_bipartite", "petersen",
                            "circulant", "random_regular"])
    g.add_argument("--n", type=int, default=0)
    g.add_argument("--d", type=int, default=3)
    g.add_argument("--p", type=int, default=1)
    g.add_argument("--q", type=int, default=1)
    g.add_argument("--offsets", default="1")
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--connected", action="store_true")
    g.add_argument("-o", "--output", required=True)
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("analyze", help="structure report and engine verdict")
    a.add_argument("graph")
    a.set_defaults(func=cmd_analyze)

    t = sub.add_parser("transport", help="print a transport matrix")
    t.add_argument("graph")
    t.add_argument("--a", type=int, required=True)
    t.add_argument("--b", type=int, required=True)
    t.add_argument("--e", type=int, default=None)
    t.set_defaults(func=cmd_transport)

    s = sub.add_parser("simulate", help="run a coupling engine")
    s.add_argument("graph")
    s.add_argument("--ticks", type=int, default=None)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--engine", choices=["auto", "cycle", "cubic", "regular", "squarefree"],
                   default=None)
    s.add_argument("--walkers", type=int, default=2)
    s.add_argument("--a0", type=int, default=None)
    s.add_argument("--b0", type=int, default=None)
    s.add_argument("--config", default=None)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_simulate)

    v = sub.add_parser("verify", help="check a trajectory against its graph")
    v.add_argument("graph")
    v.add_argument("trajectory")
    v.add_argument("--alpha", type=float, default=0.001)
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="brute-force lemma oracles")
    o.add_argument("lemma", choices=["lemma34", "lemma42", "lemma31"])
    o.add_argument("graph")
    o.add_argument("--a", type=int, default=0)
    o.add_argument("--b", type=int, default=0)
    o.add_argument("--e", type=int, default=0)
    o.add_argument("--d", type=int, default=None)
    o.set_defaults(func=cmd_oracle)

    e = sub.add_parser("experiment", help="prevalence experiment CSV")
    e.add_argument("kind", choices=["prevalence"])
    e.add_argument("--d", type=int, required=True)
    e.add_argument("--n-list", required=True)
    e.add_argument("--samples", type=int, required=True)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--simple-connected", action="store_true")
    e.add_argument("-o", "--output", default=None)
    e.set_defaults(func=cmd_experiment)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as err:
        raise err
    except GraphParseError as err:
        return _fail(EXIT_INPUT, str(err))


if __name__ == "__main__":
    sys.exit(main())
