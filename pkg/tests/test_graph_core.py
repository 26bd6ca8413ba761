import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equicolor.errors import InvalidInput, MissingElementError
from equicolor.models.graph import Graph, complete_graph
from equicolor.services import graph_core
from equicolor.services.generators import gen_complete_bipartite, gen_grid_diagonals, gen_q3_diagonals


@st.composite
def graphs(draw, max_n: int = 12):
    n = draw(st.integers(min_value=0, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


def test_graph_rejects_bad_edges():
    with pytest.raises(InvalidInput):
        Graph(3, [(0, 0)])
    with pytest.raises(InvalidInput):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(InvalidInput):
        Graph(3, [(0, 3)])


def test_add_and_delete_edge_are_persistent():
    g = Graph(3, [(0, 1)])
    h = g.add_edge(1, 2)
    assert g.m == 1 and h.m == 2
    assert h.has_edge(2, 1)
    assert h.delete_edge(1, 2) == g
    with pytest.raises(MissingElementError):
        g.delete_edge(0, 2)
    with pytest.raises(InvalidInput):
        h.add_edge(1, 2)


def test_delete_vertex_reports_survivors():
    g = complete_graph(4)
    h, survivors = graph_core.delete_vertex(g, 1)
    assert survivors == [0, 2, 3]
    assert h == complete_graph(3)


def test_induced_subgraph_and_union():
    g = gen_grid_diagonals(2, 2)
    sub, survivors = g.induced_subgraph([3, 0])
    assert survivors == [0, 3]
    assert sub.m == 1
    union = g.disjoint_union(complete_graph(2))
    assert union.n == 6 and union.m == 7
    assert union.has_edge(4, 5)


def test_networkx_round_trip():
    g = gen_q3_diagonals()
    back, nodes = Graph.from_networkx(g.to_networkx())
    assert back == g
    assert nodes == list(range(8))


def test_degeneracy_of_complete_graph():
    result = graph_core.degeneracy_order(complete_graph(5))
    assert result.degeneracy == 4
    assert result.order == (0, 1, 2, 3, 4)


def test_degeneracy_prefers_low_ids_on_ties():
    path = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert graph_core.degeneracy_order(path).order[0] == 0


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_degeneracy_matches_core_number(g):
    result = graph_core.degeneracy_order(g)
    assert sorted(result.order) == list(range(g.n))
    expected = max(nx.core_number(g.to_networkx()).values(), default=0)
    assert result.degeneracy == expected
    assert max(result.back_degrees(g), default=0) <= result.degeneracy


def test_edge_bound_general_form():
    assert graph_core.check_edge_bound(gen_q3_diagonals())
    assert graph_core.edge_bound(8) == 24
    assert graph_core.check_edge_bound(complete_graph(6))
    assert not graph_core.check_edge_bound(complete_graph(7))
    assert graph_core.edge_bound(1) == 0


def test_edge_bound_bipartite_forms():
    k = gen_complete_bipartite(3, 3)
    assert graph_core.edge_bound(6, bipartite_mode=True) == 12
    assert graph_core.edge_bound(6, bipartite_mode=True, strict=True) == 10
    assert graph_core.check_edge_bound(k, bipartite_mode=True)
    assert graph_core.check_edge_bound(k, bipartite_mode=True, strict=True)
    assert not graph_core.check_edge_bound(gen_complete_bipartite(5, 5), bipartite_mode=True, strict=True)
    # below three vertices the general form applies
    assert graph_core.edge_bound(2, bipartite_mode=True) == 0


def test_is_bipartite():
    parts = graph_core.is_bipartite(gen_complete_bipartite(2, 3))
    assert parts.left == (0, 1)
    assert parts.right == (2, 3, 4)
    assert parts.sizes == (2, 3)
    assert graph_core.is_bipartite(complete_graph(3)) is None
    assert graph_core.is_bipartite(Graph(2)).left == (0, 1)


def test_hereditary_sample_on_one_planar_family():
    assert graph_core.hereditary_sample(gen_grid_diagonals(6, 6), samples=50, seed=3)
    assert not graph_core.hereditary_sample(complete_graph(9), samples=5)


def test_hereditary_check_enumerates_small_graphs():
    # K7 plus isolated vertices passes the global bound; only the K7 itself breaks it
    hidden = Graph(15, [(u, v) for u in range(7) for v in range(u + 1, 7)])
    assert graph_core.check_edge_bound(hidden)
    assert not graph_core.hereditary_sample(hidden, samples=0)
    assert graph_core.hereditary_sample(gen_q3_diagonals(), samples=0)
