"""Bounded iterative-deepening search over macro-moves.

Used when no move pattern applies, which on valid one-planar inputs points at a gap in the
pattern pipeline, and as the main engine of HS mode. States are keyed by a Zobrist hash of the
assignment so that transpositions within one depth bound are expanded once.
"""

from typing import Iterator, Optional

import structlog

from equicolor.atomicity import FixState
from equicolor.errors import IllegalMove
from equicolor.models.config import SearchBudget
from equicolor.models.trace import MoveTag, MoveTrace

logger = structlog.get_logger(__name__)

MacroMove = tuple[tuple[int, Optional[int]], ...]

# witnesses per arc tried by the re-root macro
REROOT_WITNESSES = 3


class _NodeBudgetExceeded(Exception):
    pass


def macro_moves(state: FixState) -> Iterator[MacroMove]:
    """Re-roots, lifted swaps and pair relocations available in the current state."""
    deficient = state.deficient()
    r = state.r
    assignment = state.coloring.assignment
    counts = state.counts

    for k in range(r):
        if k == deficient or state.arc_counts[k][deficient] == 0:
            continue
        witnesses = sorted(v for v in state.coloring.classes[k] if counts[v][deficient] == 0)
        for w in witnesses[:REROOT_WITNESSES]:
            yield ((w, deficient),)

    for v in range(state.graph.n):
        i = state.class_of(v)
        if i is None:
            continue
        for j in range(r):
            if j == i or counts[v][j] != 1:
                continue
            u = next(w for w in state.graph.neighbors(v) if assignment[w] == j)
            if counts[u][i] == 1:
                yield ((v, None), (u, i), (v, j))

    for v in range(state.graph.n):
        i = state.class_of(v)
        if i is None or i == deficient:
            continue
        for j in range(r):
            if j in (i, deficient) or counts[v][j] != 0:
                continue
            u = state.witness(j, deficient, exclude=(v,))
            if u is not None:
                yield ((v, j), (u, deficient))


class FallbackSearch:
    def __init__(self, state: FixState, budget: SearchBudget, a0: int):
        self.state = state
        self.budget = budget
        self.a0 = a0
        self.nodes = 0
        self._seen: dict[int, int] = {}

    def _apply(self, macro: MacroMove) -> bool:
        mark = len(self.state.log)
        try:
            for v, to in macro:
                self.state.relocate(v, to, MoveTag.FALLBACK)
        except IllegalMove:
            self.state.rollback_to(mark)
            return False
        if self.state.deficient() is None:
            self.state.rollback_to(mark)
            return False
        return True

    def is_goal(self) -> bool:
        return self.state.accessible_count() > self.a0

    def score(self) -> tuple[int, int]:
        distance = self.state.accessible_distances()
        return len(distance), self.state.arcs_into(distance)

    def _dfs(self, remaining: int) -> bool:
        key = self.state.key
        if self._seen.get(key, 0) >= remaining:
            return False
        self._seen[key] = remaining

        children = []
        for macro in list(macro_moves(self.state)):
            self.nodes += 1
            if self.nodes > self.budget.max_fallback_nodes:
                raise _NodeBudgetExceeded()
            mark = len(self.state.log)
            if not self._apply(macro):
                continue
            if self.is_goal():
                return True
            children.append((self.score(), macro))
            self.state.rollback_to(mark)
        if remaining <= 1:
            return False

        children.sort(key=lambda child: child[0], reverse=True)
        for _, macro in children:
            mark = len(self.state.log)
            if self._apply(macro) and self._dfs(remaining - 1):
                return True
            self.state.rollback_to(mark)
        return False

    def run(self) -> Optional[MoveTrace]:
        for depth in range(1, self.budget.max_fallback_depth + 1):
            self._seen.clear()
            with self.state.atomic_sequence(MoveTag.FALLBACK) as seq:
                try:
                    found = self._dfs(depth)
                except _NodeBudgetExceeded:
                    logger.debug("fallback.exhausted", nodes=self.nodes, depth=depth)
                    return None
                if found:
                    seq.commit()
                    logger.debug("fallback.found", nodes=self.nodes, depth=depth)
                    return seq.trace()
        return None


def fallback_search(state: FixState, budget: SearchBudget, a0: int, seed: int = 0) -> Optional[MoveTrace]:
    state.enable_hashing(seed)
    return FallbackSearch(state, budget, a0).run()
