"""Exact equitable-colourability by backtracking, for small graphs only."""

from typing import Optional

import structlog

from equicolor.errors import InvalidInput, OracleCapExceeded
from equicolor.models.coloring import UNASSIGNED, Coloring
from equicolor.models.graph import Graph

logger = structlog.get_logger(__name__)

ORACLE_MAX_N = 24


class _Search:
    def __init__(self, g: Graph, k: int):
        self.k = k
        self.n = g.n
        self.q, self.rem = divmod(g.n, k)
        self.order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
        self.adj = [sum(1 << w for w in g.neighbors(v)) for v in range(g.n)]
        self.assignment = [UNASSIGNED] * g.n
        self.sizes = [0] * k
        self.blocked = [0] * k  # union of neighbourhoods of each class
        self.big = 0
        self.unassigned = (1 << g.n) - 1

    def _room(self, c: int) -> bool:
        size = self.sizes[c]
        return size < self.q or (size == self.q and self.big < self.rem)

    def _feasible(self) -> bool:
        remaining = self.unassigned.bit_count()
        deficit = 0
        for c in range(self.k):
            short = self.q - self.sizes[c]
            if short <= 0:
                continue
            deficit += short
            if (self.unassigned & ~self.blocked[c]).bit_count() < short:
                return False
        if deficit > remaining:
            return False
        pending = self.unassigned
        while pending:
            low = pending & -pending
            if not any(not self.blocked[c] & low and self._room(c) for c in range(self.k)):
                return False
            pending ^= low
        return True

    def _place(self, v: int, c: int) -> None:
        if self.sizes[c] == self.q:
            self.big += 1
        self.sizes[c] += 1
        self.assignment[v] = c
        self.blocked[c] |= self.adj[v]
        self.unassigned &= ~(1 << v)

    def _unplace(self, v: int, c: int, blocked: int) -> None:
        self.sizes[c] -= 1
        if self.sizes[c] == self.q:
            self.big -= 1
        self.assignment[v] = UNASSIGNED
        self.blocked[c] = blocked
        self.unassigned |= 1 << v

    def run(self, index: int = 0, opened: int = 0) -> bool:
        if index == self.n:
            return True
        v = self.order[index]
        bit = 1 << v
        # classes are interchangeable, so only the first unopened one is worth trying
        for c in range(min(opened + 1, self.k)):
            if self.blocked[c] & bit or not self._room(c):
                continue
            saved = self.blocked[c]
            self._place(v, c)
            if self._feasible() and self.run(index + 1, max(opened, c + 1)):
                return True
            self._unplace(v, c, saved)
        return False


def brute_force_equitable(g: Graph, k: int) -> Optional[Coloring]:
    """A proper equitable ``k``-colouring of ``g`` or ``None`` when none exists."""
    if k < 1:
        raise InvalidInput("k must be at least 1")
    if g.n > ORACLE_MAX_N:
        raise OracleCapExceeded(f"oracle is capped at {ORACLE_MAX_N} vertices, graph has {g.n}")
    search = _Search(g, k)
    if not search.run():
        return None
    return Coloring(k, search.assignment)


def chi_e_profile(g: Graph, k_max: int) -> set[int]:
    """Every ``k <= k_max`` for which ``g`` has an equitable ``k``-colouring."""
    if g.n > ORACLE_MAX_N:
        raise OracleCapExceeded(f"oracle is capped at {ORACLE_MAX_N} vertices, graph has {g.n}")
    feasible = {k for k in range(1, k_max + 1) if brute_force_equitable(g, k) is not None}
    logger.debug("oracle.profile", n=g.n, k_max=k_max, feasible=sorted(feasible))
    return feasible
