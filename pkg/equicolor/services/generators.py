import itertools
import math
import random

import networkx as nx

from equicolor.models.config import GenSpec
from equicolor.models.graph import Graph

SILVER = 1 + math.sqrt(2)


def gen_q3_diagonals() -> Graph:
    """The 3-cube with both diagonals in each of its six square faces: 8 vertices, 24 edges."""
    cube = nx.hypercube_graph(3)
    nodes = sorted(cube.nodes)
    for u, v in itertools.combinations(nodes, 2):
        if sum(a != b for a, b in zip(u, v)) == 2:
            cube.add_edge(u, v)
    graph, _ = Graph.from_networkx(cube)
    return graph


def _rhombicuboctahedron_points() -> list[tuple[float, float, float]]:
    points = set()
    for signs in itertools.product((1, -1), repeat=3):
        base = (signs[0] * 1.0, signs[1] * 1.0, signs[2] * SILVER)
        points.update(itertools.permutations(base))
    return sorted(points)


def gen_rhombicuboctahedron_diagonals() -> Graph:
    """Rhombicuboctahedron plus both diagonals of its eighteen squares; 7-regular on 24 vertices.

    With unit coordinates the polyhedron edges have squared length 4 and the square diagonals
    squared length 8; no other vertex pair lies at either distance.
    """
    points = _rhombicuboctahedron_points()
    edges = []
    for (i, p), (j, q) in itertools.combinations(enumerate(points), 2):
        d2 = sum((a - b) ** 2 for a, b in zip(p, q))
        if math.isclose(d2, 4.0, abs_tol=1e-9) or math.isclose(d2, 8.0, abs_tol=1e-9):
            edges.append((i, j))
    return Graph(len(points), edges)


def gen_grid_diagonals(rows: int, cols: int) -> Graph:
    """Open ``rows x cols`` grid with both diagonals in every cell; vertex ``(i, j)`` gets id ``i * cols + j``."""
    GenSpec(family="grid_diag", rows=rows, cols=cols)
    grid = nx.grid_2d_graph(rows, cols)
    for i in range(rows - 1):
        for j in range(cols - 1):
            grid.add_edge((i, j), (i + 1, j + 1))
            grid.add_edge((i + 1, j), (i, j + 1))
    graph, _ = Graph.from_networkx(grid)
    return graph


def gen_complete(t: int) -> Graph:
    graph, _ = Graph.from_networkx(nx.complete_graph(t))
    return graph


def gen_complete_bipartite(p: int, q: int) -> Graph:
    graph, _ = Graph.from_networkx(nx.complete_bipartite_graph(p, q))
    return graph


def gen_random_subgraph(rows: int, cols: int, keep: int, seed: int = 0) -> Graph:
    """Induced subgraph of a diagonal grid on ``keep`` vertices drawn with ``seed``."""
    GenSpec(family="random_subgraph", rows=rows, cols=cols, keep=keep, seed=seed)
    grid = gen_grid_diagonals(rows, cols)
    chosen = random.Random(seed).sample(range(grid.n), keep)
    graph, _ = grid.induced_subgraph(chosen)
    return graph


def generate(spec: GenSpec) -> Graph:
    match spec.family:
        case "q3_diag":
            return gen_q3_diagonals()
        case "rhombi_diag":
            return gen_rhombicuboctahedron_diagonals()
        case "grid_diag":
            return gen_grid_diagonals(spec.rows, spec.cols)
        case "complete":
            return gen_complete(spec.t)
        case "complete_bipartite":
            return gen_complete_bipartite(spec.p, spec.q)
        case "random_subgraph":
            return gen_random_subgraph(spec.rows, spec.cols, spec.keep, spec.seed)
    raise RuntimeError(f"Bug! Unknown generator family: {spec.family}")
