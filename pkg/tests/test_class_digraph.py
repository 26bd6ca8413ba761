import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equicolor.errors import HypothesisViolated, ProfileViolation
from equicolor.models.coloring import Coloring
from equicolor.services import class_digraph
from equicolor.services.generators import gen_grid_diagonals
from tests.conftest import T, U, V, W, X, Y, Z


@pytest.fixture
def digraph(labelled_graph, labelled_coloring):
    return class_digraph.build(labelled_graph, labelled_coloring, 0)


def test_arcs_and_witnesses(digraph):
    assert digraph.arcs == [(0, 1), (1, 0), (1, 2), (1, 3), (2, 1)]
    assert digraph.witnesses[(1, 0)] == (V, W)
    assert digraph.first_witness(1, 0) == V
    assert digraph.first_witness(3, 0) is None
    assert not any(digraph.has_arc(3, j) for j in range(4))


def test_accessibility_partition(digraph):
    assert digraph.accessible == frozenset({0, 1, 2})
    assert digraph.terminal == frozenset({2})
    assert digraph.nonaccessible == frozenset({3})
    assert (digraph.a, digraph.b) == (3, 1)
    assert digraph.distance == {0: 0, 1: 1, 2: 2}


def test_build_rejects_unbalanced_profile(labelled_graph):
    with pytest.raises(ProfileViolation):
        class_digraph.build(labelled_graph, Coloring(4, [0, 0, 0, 2, 2, 3, 3]), 1)


def test_paths(digraph):
    assert digraph.path_to_deficient(2) == (2, 1, 0)
    assert digraph.shortest_path(2, 0, avoid=(1,)) is None
    assert digraph.shortest_path(0, 3) == (0, 1, 3)
    assert digraph.shortest_path(2, 3, within=(2, 3)) is None
    assert digraph.path_to_deficient(0) == (0,)


def test_solo_analysis(digraph):
    solo = class_digraph.solo_analysis(digraph, V)
    assert solo.solo == (U, T)
    assert solo.nice == (U, T)
    assert solo.bprime == ()
    assert class_digraph.solo_analysis(digraph, W).bprime == (3,)
    # z has a single solo neighbour, which cannot be nice
    z = class_digraph.solo_analysis(digraph, Z)
    assert (z.q, z.qp) == (1, 0)
    with pytest.raises(HypothesisViolated):
        class_digraph.solo_analysis(digraph, U)


def test_ordinary_vertices(digraph):
    assert digraph.is_ordinary(Y)
    assert not digraph.is_ordinary(V)
    assert not digraph.is_ordinary(U)


def test_weights(digraph):
    query = class_digraph.weight(digraph, 1, ())
    assert query.values == {V: Fraction(2), W: Fraction(0)}
    assert query.total() == class_digraph.weight_sum_expected(digraph, ()) == 2
    assert query.above(Fraction(1)) == [V]
    halved = class_digraph.weight(digraph, 1, (3,))
    assert halved.values[V] == 1
    assert halved.total() == class_digraph.weight_sum_expected(digraph, (3,)) == 1
    with pytest.raises(HypothesisViolated):
        class_digraph.weight(digraph, 3, ())
    with pytest.raises(HypothesisViolated):
        class_digraph.weight(digraph, 1, (2,))


def test_strong_components(digraph):
    components = class_digraph.strong_components_B(digraph)
    assert components.largest == (3,)
    assert components.components == ((3,),)


def test_dump_is_plain_data(digraph):
    dump = digraph.to_dump()
    assert dump["deficient"] == 0
    assert dump["sizes"] == [1, 2, 2, 2]
    assert dump["arcs"][1] == [2, 0, 2, 1]
    assert dump["f_empty"]["1"] == {"1": "2/1", "2": "0/1"}


def test_edges_between_accessible_and_rest(digraph):
    assert digraph.edges_between_A_and_B() == 7
    assert digraph.A_vertices() == [X, V, W, Y, Z]


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32), st.integers(min_value=3, max_value=9))
def test_weight_identity_on_grid_colourings(seed, r):
    grid = gen_grid_diagonals(6, 6)
    g, _ = grid.induced_subgraph(range(3 * r - 1))
    labels = [c for c in range(r) for _ in range(3)][1:]
    random.Random(seed).shuffle(labels)
    d = class_digraph.build(g, Coloring(r, labels), 0)
    for cls in d.accessible:
        for subset in ((), tuple(sorted(d.nonaccessible))):
            assert class_digraph.weight(d, cls, subset).total() == class_digraph.weight_sum_expected(d, subset)
