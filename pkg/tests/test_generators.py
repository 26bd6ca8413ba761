import pytest

from equicolor.models.config import GenSpec
from equicolor.models.graph import complete_graph
from equicolor.services import graph_core
from equicolor.services.generators import (
    gen_complete,
    gen_complete_bipartite,
    gen_grid_diagonals,
    gen_q3_diagonals,
    gen_random_subgraph,
    gen_rhombicuboctahedron_diagonals,
    generate,
)


def test_q3_with_face_diagonals():
    g = gen_q3_diagonals()
    assert (g.n, g.m) == (8, 24)
    assert set(g.degrees()) == {6}
    assert graph_core.check_edge_bound(g)


def test_rhombicuboctahedron_with_square_diagonals():
    g = gen_rhombicuboctahedron_diagonals()
    assert (g.n, g.m) == (24, 84)
    assert set(g.degrees()) == {7}
    assert graph_core.degeneracy_order(g).degeneracy == 7
    assert graph_core.check_edge_bound(g)


def test_grid_with_diagonals():
    g = gen_grid_diagonals(4, 4)
    assert (g.n, g.m) == (16, 42)
    assert gen_grid_diagonals(2, 2) == complete_graph(4)
    assert gen_grid_diagonals(3, 3).max_degree == 8
    assert g.has_edge(0, 5) and g.has_edge(1, 4)
    assert not g.has_edge(0, 2)


def test_complete_families():
    assert gen_complete(6) == complete_graph(6)
    assert graph_core.check_edge_bound(gen_complete(6))
    assert not graph_core.check_edge_bound(gen_complete(7))
    k77 = gen_complete_bipartite(7, 7)
    assert (k77.n, k77.m) == (14, 49)
    assert graph_core.is_bipartite(k77).sizes == (7, 7)


def test_random_subgraph_is_seeded():
    first = gen_random_subgraph(7, 7, keep=30, seed=9)
    assert first.n == 30
    assert first == gen_random_subgraph(7, 7, keep=30, seed=9)
    assert graph_core.hereditary_sample(first, samples=20)


def test_generate_dispatch():
    assert generate(GenSpec(family="complete", t=5)) == complete_graph(5)
    assert generate(GenSpec(family="grid_diag", rows=3, cols=4)) == gen_grid_diagonals(3, 4)
    assert generate(GenSpec(family="q3_diag")).n == 8


@pytest.mark.parametrize(
    "params",
    [
        {"family": "grid_diag", "rows": 1, "cols": 4},
        {"family": "complete"},
        {"family": "complete_bipartite", "p": 3},
        {"family": "random_subgraph", "rows": 3, "cols": 3, "keep": 10},
        {"family": "petersen"},
    ],
)
def test_gen_spec_rejects_bad_parameters(params):
    with pytest.raises(ValueError):
        GenSpec(**params)
