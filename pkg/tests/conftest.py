import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hdxwalk import (
    build_complex,
    complete_complex,
    complete_multipartite_complex,
)


@pytest.fixture(scope="session")
def triangle():
    return complete_complex(3, 2)


@pytest.fixture(scope="session")
def twotri():
    return build_complex([("a", "b", "c"), ("a", "c", "d")])


@pytest.fixture(scope="session")
def k42():
    return complete_complex(4, 2)


@pytest.fixture(scope="session")
def tetra():
    return complete_complex(4, 3)


@pytest.fixture(scope="session")
def octahedron():
    return complete_multipartite_complex([2, 2, 2])


@pytest.fixture(scope="session")
def mp333():
    return complete_multipartite_complex([3, 3, 3])


@pytest.fixture(scope="session")
def two_islands():
    """Two vertex-disjoint triangles: every level graph is disconnected."""
    return build_complex([("a", "b", "c"), ("x", "y", "z")])


@pytest.fixture(scope="session")
def square_graph():
    """The 4-cycle as a pure 1-complex (bipartite level-0 graph)."""
    return build_complex([("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])


def faces_by_labels(x, *labelled):
    return [x.face_from_labels(labels.split(",")) for labels in labelled]
