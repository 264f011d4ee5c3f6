from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from avoidkit.generate import (
    GenSpec,
    circulant,
    complete,
    complete_bipartite,
    configuration_model,
    cycle,
    generate_deterministic,
    heawood,
    petersen,
    random_regular_simple,
)
from avoidkit.graphs import basic_profile, is_connected


def test_cycle_and_complete():
    assert basic_profile(cycle(6)).regular_degree == 2
    assert basic_profile(complete(5)).regular_degree == 4
    assert complete(5).edge_count == 10
    with pytest.raises(ValueError):
        cycle(2)


def test_complete_bipartite():
    g = complete_bipartite(2, 3)
    assert g.edge_count == 6
    assert sorted(g.degree(v) for v in range(5)) == [2, 2, 2, 3, 3]


def test_circulant():
    g = circulant(9, [1, 2])
    assert basic_profile(g).regular_degree == 4
    assert g.has_edge(0, 1) and g.has_edge(0, 2) and not g.has_edge(0, 3)
    with pytest.raises(ValueError):
        circulant(9, [5])  # offset beyond n/2


def test_heawood_is_cubic_girth6(hea):
    prof = basic_profile(hea)
    assert (prof.n, prof.regular_degree, prof.connected) == (14, 3, True)
    # girth 6: no pair of vertices shares two neighbors
    from avoidkit.structure import is_square_free

    assert is_square_free(hea) is None


def test_genspec_dispatch():
    g = generate_deterministic(GenSpec("circulant", {"n": 7, "offsets": [1, 2]}))
    assert basic_profile(g).regular_degree == 4
    with pytest.raises(ValueError):
        GenSpec("mystery")
    with pytest.raises(ValueError):
        generate_deterministic(GenSpec("configuration_model"))


@given(
    st.integers(min_value=2, max_value=14),
    st.integers(min_value=1, max_value=4),
    st.integers(min_value=0, max_value=2**32),
)
@settings(max_examples=60)
def test_configuration_model_invariants(n, d, seed):
    if (n * d) % 2:
        n += 1
    mg = configuration_model(n, d, seed)
    assert mg.edge_count == n * d // 2
    stub_degree = Counter()
    for u, v in mg.edges:
        stub_degree[u] += 1
        stub_degree[v] += 1
    assert all(stub_degree[v] == d for v in range(n))


def test_configuration_model_deterministic():
    assert configuration_model(10, 3, 99).edges == configuration_model(10, 3, 99).edges


def test_random_regular_simple():
    g, rejections = random_regular_simple(12, 3, 4, connected_required=True)
    assert rejections >= 0
    prof = basic_profile(g)
    assert prof.regular_degree == 3 and prof.connected


def test_random_regular_validates():
    with pytest.raises(ValueError):
        random_regular_simple(9, 3, 0)  # odd n*d
    with pytest.raises(ValueError):
        random_regular_simple(4, 4, 0)  # d >= n


def test_petersen_structure(pet):
    assert pet.has_edge(0, 5)            # spoke
    assert pet.has_edge(5, 7)            # pentagram chord
    assert not pet.has_edge(5, 6)
    assert is_connected(pet)
