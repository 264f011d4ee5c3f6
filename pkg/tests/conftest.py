from __future__ import annotations

import pytest

from avoidkit.generate import circulant, complete_bipartite, heawood, petersen
from avoidkit.graphs import Graph, graph_from_edges


def make_s3b_host() -> Graph:
    """3-regular host where the pair (0, 1) has two adjacent common neighbors.

    0=a, 1=b, 2=c1, 3=c2, 4=a', 5=b'; 6,7 complete a' and 8,9 complete b',
    glued by a K_{2,2} between {6,7} and {8,9}.
    """
    return graph_from_edges(10, [
        (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 5),
        (4, 6), (4, 7), (5, 8), (5, 9),
        (6, 8), (6, 9), (7, 8), (7, 9),
    ])


def make_s6_host() -> Graph:
    """3-regular host where the pair (0, 1) admits K_{2,2}.

    0=a, 1=b, 2=a1, 3=a2, 4=b1, 5=b2, 6=c_a, 7=c_b; 8,9 close the
    degree deficit of the two exit vertices.
    """
    return graph_from_edges(10, [
        (0, 2), (0, 3), (1, 4), (1, 5),
        (2, 4), (2, 5), (3, 4), (3, 5),
        (0, 6), (1, 7), (6, 8), (6, 9), (7, 8), (7, 9), (8, 9),
    ])


def make_ag23_incidence() -> Graph:
    """Point-line incidence graph of the affine plane of order 3.

    9 points of degree 4, 12 lines of degree 3; any two points lie on one
    line, so the graph has girth 6 (square-free with mixed degrees).
    """
    points = [(x, y) for x in range(3) for y in range(3)]
    pidx = {p: i for i, p in enumerate(points)}
    lines = [[(k, y) for y in range(3)] for k in range(3)]
    for slope in range(3):
        for k in range(3):
            lines.append([(x, (k + slope * x) % 3) for x in range(3)])
    edges = []
    for j, line in enumerate(lines):
        for p in line:
            edges.append((pidx[p], 9 + j))
    return graph_from_edges(21, edges)


@pytest.fixture(scope="session")
def pet() -> Graph:
    return petersen()


@pytest.fixture(scope="session")
def hea() -> Graph:
    return heawood()


@pytest.fixture(scope="session")
def circ9() -> Graph:
    return circulant(9, [1, 2])


@pytest.fixture(scope="session")
def k33() -> Graph:
    return complete_bipartite(3, 3)


@pytest.fixture(scope="session")
def s3b_host() -> Graph:
    return make_s3b_host()


@pytest.fixture(scope="session")
def s6_host() -> Graph:
    return make_s6_host()


@pytest.fixture(scope="session")
def ag23() -> Graph:
    return make_ag23_incidence()
