from typing import Iterable

from equicolor.errors import ExtensionStuck, InvalidInput, PartialAssignmentError
from equicolor.models.coloring import UNASSIGNED, Coloring
from equicolor.models.graph import Graph


def verify_proper(g: Graph, c: Coloring) -> bool:
    if c.n != g.n:
        raise InvalidInput(f"coloring covers {c.n} vertices, graph has {g.n}")
    for v, cls in enumerate(c.assignment):
        if cls == UNASSIGNED:
            raise PartialAssignmentError(v)
    return all(c.assignment[u] != c.assignment[v] for u, v in g.edges())


def verify_equitable(c: Coloring) -> bool:
    return c.profile().is_equitable


def greedy_balanced_extend(g: Graph, c: Coloring, order: Iterable[int], cap: int) -> Coloring:
    """Colour the vertices of ``order`` one by one without exceeding ``cap`` per class.

    Each vertex takes the smallest admissible class, ties to the lowest index.
    """
    extended = c.copy()
    sizes = extended.sizes()
    for v in order:
        if extended.assignment[v] != UNASSIGNED:
            raise InvalidInput(f"vertex {v} is already coloured")
        blocked = {extended.assignment[w] for w in g.neighbors(v)}
        admissible = [cls for cls in range(c.r) if sizes[cls] < cap and cls not in blocked]
        if not admissible:
            raise ExtensionStuck(v)
        target = min(admissible, key=lambda cls: (sizes[cls], cls))
        extended.move(v, target)
        sizes[target] += 1
    return extended
