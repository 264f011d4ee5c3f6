from __future__ import annotations

import pytest

from avoidkit.generate import (
    complete,
    complete_bipartite,
    cycle,
    petersen,
    random_regular_simple,
)
from avoidkit.graphs import common_neighbors, distance_capped, graph_from_edges
from avoidkit.structure import (
    admissibility_verdict,
    admits_K22,
    classify_scenario,
    closed_neighborhood_duplicates,
    contains_H3tilde,
    contains_Hd,
    is_square_free,
    require_engine_applicable,
)


def test_contains_hd_on_k5():
    # K_5 is 4-regular and any edge has 3 common neighbors
    assert contains_Hd(complete(5), 4) == (0, 1)


def test_contains_hd_absent(pet, circ9):
    assert contains_Hd(pet, 3) is None
    assert contains_Hd(circ9, 4) is None


def test_h3tilde_on_k4_plus():
    # K_{2,3} with one edge inside the size-3 part, completed arbitrarily
    g = graph_from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3)])
    assert contains_H3tilde(g) == (0, 1, 2, 3)


def test_h3tilde_absent_on_k33(k33, pet):
    # K_{3,3}: pairs share 3 neighbors but no two of them are adjacent
    assert contains_H3tilde(k33) is None
    assert contains_H3tilde(pet) is None


def test_square_free(pet, hea):
    assert is_square_free(pet) is None
    assert is_square_free(hea) is None
    wit = is_square_free(complete_bipartite(2, 2))
    u, c1, v, c2 = wit
    assert u != v and c1 != c2
    g = complete_bipartite(2, 2)
    assert g.has_edge(u, c1) and g.has_edge(c1, v) and g.has_edge(v, c2) and g.has_edge(c2, u)


def test_admits_k22(s6_host):
    assert admits_K22(s6_host, 0, 1) == (2, 3, 4, 5)
    assert admits_K22(cycle(8), 0, 2) is None
    with pytest.raises(ValueError):
        admits_K22(cycle(8), 0, 1)


def test_admits_k22_k33_same_part(k33):
    assert admits_K22(k33, 0, 1) is None


def test_classify_scenarios(pet, k33, s3b_host, s6_host):
    assert classify_scenario(k33, 0, 1).tag == "S2"
    assert classify_scenario(s3b_host, 0, 1).tag == "S3b"
    assert classify_scenario(s6_host, 0, 1).tag == "S6"
    for a in range(pet.n):
        for b in range(pet.n):
            if a != b and not pet.has_edge(a, b):
                assert classify_scenario(pet, a, b).tag == "S4"
    with pytest.raises(ValueError):
        classify_scenario(pet, 0, 1)


def test_classify_witness_consistency(s3b_host, s6_host, hea):
    sc = classify_scenario(s3b_host, 0, 1)
    c1, c2 = sc.witness
    assert s3b_host.has_edge(c1, c2)
    assert set(sc.witness) == set(common_neighbors(s3b_host, 0, 1))
    sc6 = classify_scenario(s6_host, 0, 1)
    a1, a2, b1, b2 = sc6.witness
    for x in (a1, a2):
        for y in (b1, b2):
            assert s6_host.has_edge(x, y)
    # Heawood has girth 6: distance-2 pairs are S4, distance-3 pairs S5 or S1
    tags = {classify_scenario(hea, a, b).tag
            for a in range(14) for b in range(14)
            if a != b and not hea.has_edge(a, b)}
    assert "S4" in tags and "S5" in tags
    for a in range(14):
        for b in range(14):
            if a == b or hea.has_edge(a, b):
                continue
            tag = classify_scenario(hea, a, b).tag
            dist = distance_capped(hea, a, b, 5)
            if tag == "S5":
                assert dist == 3
            if tag == "S1":
                assert dist >= 4


def test_closed_neighborhood_duplicates():
    assert closed_neighborhood_duplicates(complete(4)) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    assert closed_neighborhood_duplicates(petersen()) == []


def test_verdicts(pet, hea, circ9, k33, ag23):
    assert admissibility_verdict(cycle(7)).engine == "cycle"
    v = admissibility_verdict(pet)
    assert v.engine == "cubic" and v.also_squarefree
    assert admissibility_verdict(circ9).engine == "regular"
    assert admissibility_verdict(k33).engine == "cubic"
    assert admissibility_verdict(hea).engine == "cubic"
    assert admissibility_verdict(ag23).engine == "squarefree"


def test_verdict_none_with_obstruction():
    # K_4 is 3-regular but too small; K_5 contains H_4
    v = admissibility_verdict(complete(5))
    assert v.engine == "none"
    assert "H_4" in v.obstruction
    with pytest.raises(ValueError):
        admissibility_verdict(graph_from_edges(4, [(0, 1), (2, 3)]))


def test_require_engine_applicable(pet, circ9, ag23):
    require_engine_applicable(pet, "cubic")
    require_engine_applicable(circ9, "regular")
    require_engine_applicable(ag23, "squarefree")
    require_engine_applicable(cycle(6), "cycle")
    with pytest.raises(ValueError, match="H_4"):
        require_engine_applicable(complete(5), "regular")
    with pytest.raises(ValueError, match="4-cycle"):
        require_engine_applicable(complete_bipartite(3, 3), "squarefree")
    with pytest.raises(ValueError, match="unknown engine"):
        require_engine_applicable(pet, "teleport")


def test_random_cubic_hosts_classify_cleanly():
    # every classified tag must re-satisfy its defining predicate
    for seed in range(6):
        g, _ = random_regular_simple(14, 3, seed, connected_required=True)
        if contains_H3tilde(g) is not None:
            continue
        for a in range(g.n):
            for b in range(g.n):
                if a == b or g.has_edge(a, b):
                    continue
                sc = classify_scenario(g, a, b)
                cn = common_neighbors(g, a, b)
                if sc.tag == "S2":
                    assert len(cn) == 3
                elif sc.tag == "S3a":
                    assert len(cn) == 2 and not g.has_edge(*sc.witness)
                elif sc.tag == "S3b":
                    assert len(cn) == 2 and g.has_edge(*sc.witness)
                elif sc.tag == "S6":
                    assert len(cn) <= 1 and admits_K22(g, a, b) is not None
                elif sc.tag == "S4":
                    assert len(cn) == 1 and admits_K22(g, a, b) is None
                elif sc.tag == "S5":
                    assert distance_capped(g, a, b, 4) == 3 and not cn
                else:
                    assert distance_capped(g, a, b, 4) >= 4
