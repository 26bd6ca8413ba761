import logging

import pytest

from equicolor.atomicity import FixState
from equicolor.models.coloring import Coloring
from equicolor.models.graph import Graph
from equicolor.utils.logging_utils import configure_logging

# Labelled example with r=4, s=2: classes V1={x} (deficient), V2={v,w}, V3={y,z}, V4={u,t}.
X, V, W, Y, Z, U, T = range(7)
LABELLED_EDGES = [(Z, U), (Z, T), (V, U), (V, T), (X, U), (X, T), (U, Y), (X, Y), (X, Z)]
LABELLED_ASSIGNMENT = [0, 1, 1, 2, 2, 3, 3]

# Chain V3 -> V2 -> V1 with V4 unreachable: p=0 | a1=1 a2=2 | b1=3 b2=4 | c1=5 c2=6.
CHAIN_EDGES = [(0, 3), (0, 4), (0, 5), (0, 6), (0, 2), (2, 5), (2, 6), (3, 5), (3, 6)]
CHAIN_ASSIGNMENT = [0, 1, 1, 2, 2, 3, 3]

# Only the deficient class is accessible; swapping v=0 with its solo neighbour u=2 opens it up.
# V1={v, p=1}, V2={u, u1=3, u2=4}, V3={w=5, w1=6, w2=7}.
EXCHANGE_EDGES = [(0, 2), (0, 5), (1, 3), (1, 4), (1, 6), (1, 7)]
EXCHANGE_ASSIGNMENT = [0, 0, 1, 1, 1, 2, 2, 2]

# v=0 sees exactly u=2 and u2=3 in class 1 and is their only neighbour in class 0; p=1 covers the rest.
SOLO_PAIR_EDGES = [(0, 2), (0, 3), (1, 4), (1, 5), (1, 6), (1, 7)]
SOLO_PAIR_ASSIGNMENT = [0, 0, 1, 1, 1, 2, 2, 2]

# Only the deficient class {0, 1} is accessible; 0 sees all of class 1, 1 sees all of class 2.
SPLIT_EDGES = [(0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7)]
SPLIT_ASSIGNMENT = [0, 0, 1, 1, 1, 2, 2, 2]

# Two accessible classes: {0, 1} deficient and {v1=2, v2=3, v3=4}; v2 sees 5, 6 and v3 sees 8.
TWO_CLASS_EDGES = [(0, 5), (0, 6), (0, 7), (0, 8), (0, 9), (0, 10), (3, 5), (3, 6), (4, 8), (2, 7), (2, 9), (2, 10)]
TWO_CLASS_ASSIGNMENT = [0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3]

# r=6, s=2, accessible {0, 1, 2}: v=1 and w=2 share class 1, B = {3, 4, 5} is one strong component.
THREE_CLASS_EDGES = [
    *((0, b) for b in range(5, 11)),
    *((3, b) for b in range(5, 11)),
    (1, 5),
    (1, 6),
    (1, 8),
    *((2, b) for b in range(7, 11)),
]
THREE_CLASS_ASSIGNMENT = [0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5]

# Class 1 is the only in-neighbour of the deficient class 0; classes 2 and 3 hang off it.
STAR_EDGES = [(0, 2), (0, 3), (0, 4), (0, 5), (0, 6)]
STAR_ASSIGNMENT = [0, 1, 1, 2, 2, 3, 3]


@pytest.fixture(autouse=True)
def quiet_logging():
    configure_logging(logging.WARNING)


@pytest.fixture
def labelled_graph() -> Graph:
    return Graph(7, LABELLED_EDGES)


@pytest.fixture
def labelled_coloring() -> Coloring:
    return Coloring(4, LABELLED_ASSIGNMENT)


@pytest.fixture
def labelled_state(labelled_graph, labelled_coloring) -> FixState:
    return FixState(labelled_graph, labelled_coloring)


@pytest.fixture
def stuck_state() -> FixState:
    """The labelled example plus vertex 7, held out, with a neighbour in every accessible class."""
    g = Graph(8, LABELLED_EDGES + [(7, X), (7, W), (7, Y)])
    state = FixState(g, Coloring(4, LABELLED_ASSIGNMENT + [3]), s=2)
    state.hold_out(7)
    return state


@pytest.fixture
def chain_state() -> FixState:
    return FixState(Graph(7, CHAIN_EDGES), Coloring(4, CHAIN_ASSIGNMENT))


@pytest.fixture
def exchange_state() -> FixState:
    return FixState(Graph(8, EXCHANGE_EDGES), Coloring(3, EXCHANGE_ASSIGNMENT), s=3)


@pytest.fixture
def solo_pair_state() -> FixState:
    return FixState(Graph(8, SOLO_PAIR_EDGES), Coloring(3, SOLO_PAIR_ASSIGNMENT), s=3)


@pytest.fixture
def split_state() -> FixState:
    return FixState(Graph(8, SPLIT_EDGES), Coloring(3, SPLIT_ASSIGNMENT), s=3)


@pytest.fixture
def two_class_state() -> FixState:
    return FixState(Graph(11, TWO_CLASS_EDGES), Coloring(4, TWO_CLASS_ASSIGNMENT), s=3)


@pytest.fixture
def three_class_state() -> FixState:
    return FixState(Graph(11, THREE_CLASS_EDGES), Coloring(6, THREE_CLASS_ASSIGNMENT), s=2)


@pytest.fixture
def star_state() -> FixState:
    return FixState(Graph(7, STAR_EDGES), Coloring(4, STAR_ASSIGNMENT), s=2)
