from __future__ import annotations

from collections import Counter

import pytest

from avoidkit.couplers import (
    CubicEngine,
    CycleEngine,
    RegularEngine,
    SquarefreeEngine,
    Trajectory,
    cubic_block,
    cycle_sync_step,
    default_b0,
    k22_excursion_coupling,
    one_step_matching,
    parse_trajectory,
    s3b_rows,
    simulate,
    two_step_table_coupling,
)
from avoidkit.generate import complete, cycle
from avoidkit.graphs import distance_capped
from avoidkit.rng import Xoshiro256
from avoidkit.structure import classify_scenario


def test_trajectory_text_round_trip(pet):
    traj, _ = simulate(pet, "cubic", 50, 3)
    back = parse_trajectory(traj.to_text())
    assert back == traj


def test_trajectory_parse_errors():
    with pytest.raises(ValueError, match="header incomplete"):
        parse_trajectory("0 1 2\n")
    with pytest.raises(ValueError, match="non-contiguous"):
        parse_trajectory("# graph-digest x\n# seed 0\n# engine cubic\n0 1 2\n2 3 4\n")


def test_one_step_matching_is_bijection(pet, k33):
    for g in (pet, k33):
        for a in range(g.n):
            for b in range(g.n):
                if a == b or g.has_edge(a, b):
                    continue
                if classify_scenario(g, a, b).tag not in ("S2", "S3a", "S4", "S5"):
                    continue
                sigma = one_step_matching(g, a, b)
                firsts = [x for x, _ in sigma]
                seconds = [y for _, y in sigma]
                assert sorted(firsts) == sorted(g.adjacency[a])
                assert sorted(seconds) == sorted(g.adjacency[b])
                for ap, bp in sigma:
                    assert bp != ap and not g.has_edge(ap, bp)


def test_s3b_rows_structure(s3b_host):
    rows = s3b_rows(s3b_host, 0, 1)
    assert len(rows) == 9
    # each walker's two-step pairs are exactly the 9 SRW paths of length 2
    alice_pairs = {pair for pair, _ in rows}
    srw_pairs = {(x, y) for x in s3b_host.adjacency[0] for y in s3b_host.adjacency[x]}
    assert alice_pairs == srw_pairs
    bob_pairs = {pair for _, pair in rows}
    srw_pairs_b = {(x, y) for x in s3b_host.adjacency[1] for y in s3b_host.adjacency[x]}
    assert bob_pairs == srw_pairs_b
    with pytest.raises(ValueError):
        s3b_rows(s3b_host, 0, 6)


def test_two_step_table_outcome(s3b_host):
    rng = Xoshiro256(0)
    for _ in range(50):
        out = two_step_table_coupling(s3b_host, 0, 1, rng)
        assert out.T == 2
        assert len(out.alice_steps) == len(out.bob_steps) == 2


def test_k22_excursion(s6_host):
    rng = Xoshiro256(1)
    lengths = Counter()
    for _ in range(3000):
        out = k22_excursion_coupling(s6_host, 0, 1, rng, (2, 3, 4, 5))
        lengths[out.T] += 1
        assert len(out.alice_steps) == len(out.bob_steps) == out.T
        # block-level avoidance within the excursion
        A = [0] + out.alice_steps
        B = [1] + out.bob_steps
        for s in range(out.T):
            assert B[s] != A[s] and B[s] != A[s + 1]
        assert distance_capped(s6_host, A[-1], B[-1], 2) == 2
    assert lengths[1] > 0 and lengths[2] > 0 and lengths[3] > 0


def test_cubic_block_dispatch(pet, s3b_host, s6_host, k33):
    rng = Xoshiro256(2)
    assert cubic_block(pet, 0, 2, rng).scenario.tag == "S4"
    assert cubic_block(k33, 0, 1, rng).scenario.tag == "S2"
    assert cubic_block(s3b_host, 0, 1, rng).T == 2
    assert cubic_block(s6_host, 0, 1, rng).T >= 1


def test_default_b0(pet):
    assert default_b0(pet, 0) == 2
    with pytest.raises(ValueError):
        default_b0(complete(4), 0)


def test_cubic_engine_runs_and_marks(pet):
    eng = CubicEngine(pet, 9)
    traj = eng.run(200)
    assert len(traj.positions) >= 201
    assert traj.block_marks[0] == 0
    assert traj.block_marks[-1] == len(traj.positions) - 1
    assert sum(eng.scenario_counts.values()) == len(traj.block_marks) - 1


def test_cubic_engine_rejects_adjacent_start(pet):
    with pytest.raises(ValueError):
        CubicEngine(pet, 0, a0=0, b0=1)


def test_squarefree_engine(pet, ag23):
    traj, eng = simulate(pet, "squarefree", 300, 4)
    assert len(traj.positions) == 301
    assert eng.cache.hit_rate > 0.5
    b = next(v for v in range(9, 21) if not ag23.has_edge(0, v))
    traj2, _ = simulate(ag23, "squarefree", 300, 4, a0=0, b0=b)
    assert len(traj2.positions) == 301


def test_regular_engine_phase_invariants(circ9):
    eng = RegularEngine(circ9, 5)
    traj = eng.run(300)
    assert len(traj.positions) == 301
    assert eng.round_checks == 200  # two rounds per three ticks
    assert eng.state.tick == 300


def test_regular_engine_start_validation(circ9):
    with pytest.raises(ValueError):
        RegularEngine(circ9, 0, a0=0, b0=0)
    # an adjacent b0 is accepted only when it coincides with the first exclusion
    e1 = Xoshiro256(7).choice(circ9.adjacency[0])
    eng = RegularEngine(circ9, 7, a0=0, b0=e1)
    eng.run(30)


def test_cycle_engine_preserves_gaps():
    eng = CycleEngine(10, 5, 3)
    start = eng.positions
    for _ in range(500):
        pos = eng.step()
        gaps = {(pos[(i + 1) % 5] - pos[i]) % 10 for i in range(5)}
        assert gaps == {2}
    assert len(set(start)) == 5


def test_cycle_engine_validates():
    with pytest.raises(ValueError):
        CycleEngine(10, 6, 0)


def test_cycle_sync_step():
    rng = Xoshiro256(0)
    pos = cycle_sync_step(8, (0, 2, 4), rng)
    assert pos in ((1, 3, 5), (7, 1, 3))
    with pytest.raises(ValueError):
        cycle_sync_step(4, (0, 2, 4), rng)


def test_simulate_determinism(pet, circ9):
    for g, engine in ((pet, "cubic"), (pet, "squarefree"), (circ9, "regular")):
        t1, _ = simulate(g, engine, 150, 77)
        t2, _ = simulate(g, engine, 150, 77)
        assert t1.to_text() == t2.to_text()


def test_simulate_rejects_wrong_engine(pet):
    with pytest.raises(ValueError):
        simulate(pet, "regular", 10, 0)
    with pytest.raises(ValueError):
        simulate(cycle(8), "cubic", 10, 0)
