from typing import Iterable, Iterator, NamedTuple

import networkx as nx

from equicolor.errors import InvalidInput, MissingElementError


class Graph:
    """Immutable simple undirected graph on the dense vertex ids ``0..n-1``.

    Every structural change returns a new value. Untouched neighbour tuples are shared between
    the old and the new graph, so re-adding edges one at a time stays cheap.
    """

    __slots__ = ("n", "m", "_adjacency", "_neighbor_sets")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InvalidInput("vertex count must be non-negative")
        neighbors: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInput(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise InvalidInput(f"self-loop at {u}")
            if v in neighbors[u]:
                raise InvalidInput(f"parallel edge {u}-{v}")
            neighbors[u].add(v)
            neighbors[v].add(u)
            m += 1
        self.n = n
        self.m = m
        self._adjacency = tuple(tuple(sorted(nbrs)) for nbrs in neighbors)
        self._neighbor_sets = tuple(frozenset(nbrs) for nbrs in neighbors)

    @classmethod
    def _from_parts(cls, adjacency: tuple, neighbor_sets: tuple, m: int) -> "Graph":
        graph = cls.__new__(cls)
        graph.n = len(adjacency)
        graph.m = m
        graph._adjacency = adjacency
        graph._neighbor_sets = neighbor_sets
        return graph

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n)

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph) -> tuple["Graph", list]:
        """Relabel nodes densely (in sorted order when sortable) and return the node list too."""
        try:
            nodes = sorted(nx_graph.nodes)
        except TypeError:
            nodes = list(nx_graph.nodes)
        index = {node: i for i, node in enumerate(nodes)}
        return cls(len(nodes), ((index[u], index[v]) for u, v in nx_graph.edges)), nodes

    def to_networkx(self) -> nx.Graph:
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.n))
        nx_graph.add_edges_from(self.edges())
        return nx_graph

    # region Queries

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adjacency[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._neighbor_sets[v]

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self._neighbor_sets[u]

    @property
    def max_degree(self) -> int:
        return max((len(nbrs) for nbrs in self._adjacency), default=0)

    @property
    def min_degree(self) -> int:
        return min((len(nbrs) for nbrs in self._adjacency), default=0)

    def degrees(self) -> list[int]:
        return [len(nbrs) for nbrs in self._adjacency]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, nbrs in enumerate(self._adjacency):
            for v in nbrs:
                if u < v:
                    yield u, v

    # endregion

    # region Derived graphs

    def add_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise InvalidInput(f"self-loop at {u}")
        self._check_vertex(u)
        self._check_vertex(v)
        if self.has_edge(u, v):
            raise InvalidInput(f"edge {u}-{v} already present")
        adjacency = list(self._adjacency)
        neighbor_sets = list(self._neighbor_sets)
        for a, b in ((u, v), (v, u)):
            neighbor_sets[a] = neighbor_sets[a] | {b}
            adjacency[a] = tuple(sorted(neighbor_sets[a]))
        return Graph._from_parts(tuple(adjacency), tuple(neighbor_sets), self.m + 1)

    def delete_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise MissingElementError(f"edge {u}-{v} not present")
        adjacency = list(self._adjacency)
        neighbor_sets = list(self._neighbor_sets)
        for a, b in ((u, v), (v, u)):
            neighbor_sets[a] = neighbor_sets[a] - {b}
            adjacency[a] = tuple(w for w in adjacency[a] if w != b)
        return Graph._from_parts(tuple(adjacency), tuple(neighbor_sets), self.m - 1)

    def delete_vertex(self, v: int) -> tuple["Graph", list[int]]:
        """Remove ``v``; the survivor map lists the old id of every new id."""
        self._check_vertex(v)
        return self.induced_subgraph(w for w in range(self.n) if w != v)

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        survivors = sorted(set(vertices))
        for v in survivors:
            self._check_vertex(v)
        index = {old: new for new, old in enumerate(survivors)}
        edges = [
            (index[u], index[w]) for u in survivors for w in self._adjacency[u] if u < w and w in index
        ]
        return Graph(len(survivors), edges), survivors

    def disjoint_union(self, other: "Graph") -> "Graph":
        shifted = ((u + self.n, v + self.n) for u, v in other.edges())
        return Graph(self.n + other.n, [*self.edges(), *shifted])

    # endregion

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise MissingElementError(f"vertex {v} not in graph on {self.n} vertices")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._adjacency == other._adjacency

    def __hash__(self) -> int:
        return hash((self.n, self._adjacency))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class DegeneracyResult(NamedTuple):
    order: tuple[int, ...]
    degeneracy: int

    def back_degrees(self, graph: Graph) -> list[int]:
        """Number of neighbours later in ``order``, indexed by vertex."""
        position = {v: i for i, v in enumerate(self.order)}
        return [sum(1 for w in graph.neighbors(v) if position[w] > position[v]) for v in range(graph.n)]


class Bipartition(NamedTuple):
    left: tuple[int, ...]
    right: tuple[int, ...]

    @property
    def sizes(self) -> tuple[int, int]:
        return len(self.left), len(self.right)


def complete_graph(t: int) -> Graph:
    return Graph(t, ((u, v) for u in range(t) for v in range(u + 1, t)))

