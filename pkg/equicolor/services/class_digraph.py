"""The digraph on colour classes of a one-deficient colouring.

Class ``i`` has an arc to class ``j`` when some vertex of ``i`` has no neighbour in ``j``; such
a vertex is a witness and can move to ``j`` without breaking properness. A class is accessible
when the deficient class can be reached from it. Witness transport along a path to the
deficient class moves the size deficit to the path's start, which is how held-out vertices get
inserted and how accessibility is improved.
"""

from collections import deque
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

import networkx as nx

from equicolor.errors import HypothesisViolated, ProfileViolation
from equicolor.models.coloring import UNASSIGNED, Coloring
from equicolor.models.graph import Graph

Arc = tuple[int, int]


class StrongComponents(NamedTuple):
    components: tuple[tuple[int, ...], ...]
    largest: tuple[int, ...]


class SoloData(NamedTuple):
    vertex: int
    solo: tuple[int, ...]
    nice: tuple[int, ...]
    bprime: tuple[int, ...]

    @property
    def q(self) -> int:
        return len(self.solo)

    @property
    def qp(self) -> int:
        return len(self.nice)


class WeightQuery(NamedTuple):
    cls: int
    W: frozenset[int]
    values: dict[int, Fraction]

    def total(self) -> Fraction:
        return sum(self.values.values(), Fraction(0))

    def above(self, threshold: Fraction, exclude: Iterable[int] = ()) -> list[int]:
        """Vertices with weight strictly above ``threshold``; heaviest first, ties to the lowest id."""
        skip = set(exclude)
        hits = [v for v, f in self.values.items() if f > threshold and v not in skip]
        return sorted(hits, key=lambda v: (-self.values[v], v))


def reverse_distances(r: int, has_arc: Callable[[int, int], bool], sink: int, removed: Optional[int] = None) -> dict:
    """BFS distances to ``sink`` along arcs, optionally with one class deleted."""
    distance = {sink: 0}
    queue = deque([sink])
    while queue:
        j = queue.popleft()
        for k in range(r):
            if k in distance or k == removed or not has_arc(k, j):
                continue
            distance[k] = distance[j] + 1
            queue.append(k)
    return distance


@dataclass(frozen=True)
class ClassDigraph:
    graph: Graph
    assignment: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    counts: tuple[tuple[int, ...], ...]
    r: int
    s: int
    deficient: int
    witnesses: dict[Arc, tuple[int, ...]]
    accessible: frozenset[int]
    terminal: frozenset[int]
    nonaccessible: frozenset[int]
    distance: dict[int, int]

    # region Basic queries

    @property
    def a(self) -> int:
        return len(self.accessible)

    @property
    def b(self) -> int:
        return len(self.nonaccessible)

    @property
    def arcs(self) -> list[Arc]:
        return sorted(self.witnesses)

    def has_arc(self, i: int, j: int) -> bool:
        return (i, j) in self.witnesses

    def first_witness(self, i: int, j: int) -> Optional[int]:
        witnesses = self.witnesses.get((i, j))
        return witnesses[0] if witnesses else None

    def class_of(self, v: int) -> int:
        return self.assignment[v]

    def neighbor_count(self, v: int, cls: int) -> int:
        return self.counts[v][cls]

    def neighbors_in(self, v: int, cls: int) -> tuple[int, ...]:
        return tuple(w for w in self.graph.neighbors(v) if self.assignment[w] == cls)

    def in_A(self, v: int) -> bool:
        return self.assignment[v] in self.accessible

    def in_B(self, v: int) -> bool:
        return self.assignment[v] in self.nonaccessible

    def A_vertices(self) -> list[int]:
        return sorted(v for c in self.accessible for v in self.classes[c])

    def edges_between_A_and_B(self) -> int:
        return sum(self.counts[w][c] for b in self.nonaccessible for w in self.classes[b] for c in self.accessible)

    def is_ordinary(self, v: int) -> bool:
        i = self.assignment[v]
        if i not in self.accessible:
            return False
        if self.a == 1:
            return True
        if i not in self.terminal:
            return False
        return any(
            u != v and self.counts[u][c] == 0 for u in self.classes[i] for c in self.accessible if c != i
        )

    # endregion

    # region Paths

    def shortest_path(
        self, src: int, dst: int, avoid: Iterable[int] = (), within: Optional[Iterable[int]] = None
    ) -> Optional[tuple[int, ...]]:
        """Shortest class path ``src -> dst`` using only allowed classes; ties to the lowest index.

        ``avoid`` classes are excluded (the endpoints never are) and ``within`` restricts the
        intermediate classes as well.
        """
        allowed = set(range(self.r)) if within is None else set(within)
        allowed -= set(avoid)
        allowed |= {src, dst}

        def arc(i: int, j: int) -> bool:
            return i in allowed and j in allowed and self.has_arc(i, j)

        distance = reverse_distances(self.r, arc, dst)
        if src not in distance:
            return None
        path = [src]
        while path[-1] != dst:
            here = path[-1]
            path.append(min(j for j in range(self.r) if arc(here, j) and distance.get(j) == distance[here] - 1))
        return tuple(path)

    def path_to_deficient(self, cls: int) -> Optional[tuple[int, ...]]:
        return self.shortest_path(cls, self.deficient)

    # endregion

    def to_dump(self) -> dict:
        weights = {}
        for c in sorted(self.accessible):
            query = weight(self, c, ())
            weights[str(c)] = {str(v): f"{f.numerator}/{f.denominator}" for v, f in sorted(query.values.items())}
        return {
            "r": self.r,
            "s": self.s,
            "deficient": self.deficient,
            "sizes": [len(members) for members in self.classes],
            "arcs": [[len(self.witnesses.get((i, j), ())) for j in range(self.r)] for i in range(self.r)],
            "accessible": sorted(self.accessible),
            "terminal": sorted(self.terminal),
            "nonaccessible": sorted(self.nonaccessible),
            "f_empty": weights,
        }


# region Construction


def neighbor_counts(g: Graph, assignment: Sequence[int], r: int) -> list[list[int]]:
    counts = [[0] * r for _ in range(g.n)]
    for v in range(g.n):
        row = counts[v]
        for w in g.neighbors(v):
            cw = assignment[w]
            if cw != UNASSIGNED:
                row[cw] += 1
    return counts


def from_tables(
    g: Graph,
    assignment: Sequence[int],
    classes: Sequence[Iterable[int]],
    counts: Sequence[Sequence[int]],
    s: int,
    deficient: int,
) -> ClassDigraph:
    r = len(classes)
    members = tuple(tuple(sorted(c)) for c in classes)
    witnesses: dict[Arc, tuple[int, ...]] = {}
    for i in range(r):
        for j in range(r):
            if i == j:
                continue
            listed = tuple(v for v in members[i] if counts[v][j] == 0)
            if listed:
                witnesses[(i, j)] = listed
    distance = reverse_distances(r, lambda i, j: (i, j) in witnesses, deficient)
    accessible = frozenset(distance)
    partial = ClassDigraph(
        graph=g,
        assignment=tuple(assignment),
        classes=members,
        counts=tuple(tuple(row) for row in counts),
        r=r,
        s=s,
        deficient=deficient,
        witnesses=witnesses,
        accessible=accessible,
        terminal=frozenset(),
        nonaccessible=frozenset(range(r)) - accessible,
        distance=distance,
    )
    return replace(partial, terminal=terminal_set(partial))


def build(g: Graph, c: Coloring, deficient: int) -> ClassDigraph:
    """Complete digraph for ``c``, where ``deficient`` is the unique class of size ``s - 1``."""
    sizes = c.sizes()
    s = sizes[deficient] + 1
    if any(size != s for i, size in enumerate(sizes) if i != deficient):
        raise ProfileViolation(f"sizes {sizes} are not one-deficient at class {deficient}")
    return from_tables(g, c.assignment, c.classes, neighbor_counts(g, c.assignment, c.r), s, deficient)


# endregion


def terminal_set(d: ClassDigraph) -> frozenset[int]:
    terminal = set()
    for i in d.accessible:
        if i == d.deficient:
            continue
        reach = reverse_distances(d.r, d.has_arc, d.deficient, removed=i)
        if all(j in reach for j in d.accessible if j != i):
            terminal.add(i)
    return frozenset(terminal)


def strong_components_B(d: ClassDigraph) -> StrongComponents:
    sub = nx.DiGraph()
    sub.add_nodes_from(d.nonaccessible)
    sub.add_edges_from((i, j) for i, j in d.witnesses if i in d.nonaccessible and j in d.nonaccessible)
    components = sorted((tuple(sorted(c)) for c in nx.strongly_connected_components(sub)), key=lambda c: (-len(c), c))
    return StrongComponents(tuple(components), components[0] if components else ())


def solo_analysis(d: ClassDigraph, v: int) -> SoloData:
    i = d.assignment[v]
    if i not in d.accessible:
        raise HypothesisViolated(f"vertex {v} is not in an accessible class")
    solo = tuple(u for u in d.graph.neighbors(v) if d.in_B(u) and d.counts[u][i] == 1)
    nice = tuple(u for u in solo if any(w != u and not d.graph.has_edge(u, w) for w in solo))
    bprime = tuple(c for c in sorted(d.nonaccessible) if d.counts[v][c] == 0)
    return SoloData(v, solo, nice, bprime)


def weight(d: ClassDigraph, cls: int, W: Iterable[int]) -> WeightQuery:
    """Exact ``f_W`` for every vertex of the accessible class ``cls``.

    Each B-vertex spreads one unit (half a unit when its class is in ``W``) evenly over its
    neighbours in ``cls``.
    """
    W = frozenset(W)
    if cls not in d.accessible:
        raise HypothesisViolated(f"class {cls} is not accessible")
    if not W <= d.nonaccessible:
        raise HypothesisViolated(f"classes {sorted(W - d.nonaccessible)} are accessible")
    half = Fraction(1, 2)
    values = {}
    for v in d.classes[cls]:
        total = Fraction(0)
        for w in d.graph.neighbors(v):
            cw = d.assignment[w]
            if cw in d.nonaccessible:
                total += (half if cw in W else 1) / Fraction(d.counts[w][cls])
        values[v] = total
    return WeightQuery(cls, W, values)


def weight_sum_expected(d: ClassDigraph, W: Iterable[int]) -> Fraction:
    W = frozenset(W)
    return d.s * (Fraction(d.b - len(W)) + Fraction(len(W), 2))
