import heapq
import itertools
import random
from typing import Iterator, Optional, Sequence

import networkx as nx
import structlog

from equicolor.models.graph import Bipartition, DegeneracyResult, Graph

logger = structlog.get_logger(__name__)

ONE_PLANAR_DEGENERACY = 7
EXHAUSTIVE_MAX_N = 15


def degeneracy_order(g: Graph) -> DegeneracyResult:
    """Min-degree peeling; ties go to the lowest vertex id."""
    degree = g.degrees()
    heap = [(d, v) for v, d in enumerate(degree)]
    heapq.heapify(heap)
    removed = [False] * g.n
    order: list[int] = []
    degeneracy = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != degree[v]:
            continue
        removed[v] = True
        order.append(v)
        degeneracy = max(degeneracy, d)
        for w in g.neighbors(v):
            if not removed[w]:
                degree[w] -= 1
                heapq.heappush(heap, (degree[w], w))
    return DegeneracyResult(tuple(order), degeneracy)


def edge_bound(n: int, bipartite_mode: bool = False, strict: bool = False) -> int:
    if bipartite_mode and n >= 3:
        if strict and n >= 4:
            return 3 * n - 8
        return 3 * n - 6
    return max(0, 4 * n - 8)


def check_edge_bound(g: Graph, bipartite_mode: bool = False, strict: bool = False) -> bool:
    """Edge-count consequence of 1-planarity.

    General mode tests ``m <= max(0, 4n - 8)``. Bipartite mode tests ``m <= 3n - 6`` for
    ``n >= 3`` (``3n - 8`` for ``n >= 4`` when ``strict``); smaller graphs use the general form.
    """
    return g.m <= edge_bound(g.n, bipartite_mode, strict)


def is_bipartite(g: Graph) -> Optional[Bipartition]:
    """Two-colouring if one exists. The side holding each component's smallest vertex comes first."""
    nx_graph = g.to_networkx()
    try:
        sides = nx.bipartite.color(nx_graph)
    except nx.NetworkXError:
        return None
    first: set[int] = set()
    for component in nx.connected_components(nx_graph):
        anchor = min(component)
        first.update(v for v in component if sides[v] == sides[anchor])
    return Bipartition(
        tuple(sorted(first)),
        tuple(v for v in range(g.n) if v not in first),
    )


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    return g.delete_edge(u, v)


def delete_vertex(g: Graph, v: int) -> tuple[Graph, list[int]]:
    return g.delete_vertex(v)


def _passes_one_planar_bounds(sub: Graph) -> bool:
    return check_edge_bound(sub) and degeneracy_order(sub).degeneracy <= ONE_PLANAR_DEGENERACY


def _hereditary_subsets(g: Graph, samples: int, seed: int) -> Iterator[Sequence[int]]:
    # two-vertex subgraphs with an edge sit outside the max(0, 4n - 8) convention
    if g.n <= EXHAUSTIVE_MAX_N:
        # edge deletions only lower m and the degeneracy, so vertex subsets cover every subgraph
        for size in range(3, g.n + 1):
            yield from itertools.combinations(range(g.n), size)
        return
    rng = random.Random(seed)
    for _ in range(samples):
        yield rng.sample(range(g.n), rng.randint(3, g.n))


def hereditary_sample(g: Graph, samples: int = 200, seed: int = 0) -> bool:
    """Check the general edge bound and 7-degeneracy on induced subgraphs of ``g``.

    Every vertex subset is checked when ``g`` has at most ``EXHAUSTIVE_MAX_N`` vertices;
    larger graphs get ``samples`` random subsets.
    """
    if not _passes_one_planar_bounds(g):
        return False
    for vertices in _hereditary_subsets(g, samples, seed):
        sub, _ = g.induced_subgraph(vertices)
        if not _passes_one_planar_bounds(sub):
            logger.info("hereditary.violation", n=sub.n, m=sub.m)
            return False
    return True
