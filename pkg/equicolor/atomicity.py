import random
from typing import Iterable, Optional, Union

import structlog

from equicolor.errors import IllegalMove, ProfileViolation, StaleWitness
from equicolor.models.coloring import UNASSIGNED, BalanceProfile, Coloring
from equicolor.models.graph import Graph
from equicolor.models.trace import Move, MoveTag, MoveTrace, Relocate, Shift
from equicolor.services import class_digraph
from equicolor.services.class_digraph import ClassDigraph

logger = structlog.get_logger(__name__)


class FixState:
    """Mutable colouring of one fix phase plus the tables the class digraph is read from.

    ``counts[v][c]`` is the number of neighbours of ``v`` in class ``c`` and
    ``arc_counts[i][j]`` the number of witnesses of the arc ``i -> j``. Both are updated per
    move in time proportional to the moved vertex's degree plus ``r``. Every applied move is
    logged so that atomic sequences can roll back to any earlier mark.
    """

    def __init__(self, graph: Graph, coloring: Coloring, s: Optional[int] = None, debug_rebuild: bool = False):
        if coloring.n != graph.n:
            raise ProfileViolation(f"coloring covers {coloring.n} vertices, graph has {graph.n}")
        self.graph = graph
        self.coloring = coloring
        self.r = coloring.r
        self.s = s if s is not None else -(-graph.n // self.r)
        self.debug_rebuild = debug_rebuild
        self.heldout: Optional[int] = None
        self.log: list[Move] = []
        self.counts = class_digraph.neighbor_counts(graph, coloring.assignment, self.r)
        self.sizes = coloring.sizes()
        self.arc_counts = [[0] * self.r for _ in range(self.r)]
        for v, cv in enumerate(coloring.assignment):
            if cv != UNASSIGNED:
                self._add_witness_row(v, cv, 1)
        self._digraph: Optional[ClassDigraph] = None
        self._zobrist: Optional[list[list[int]]] = None
        self.key = 0

    # region Raw table maintenance

    def _add_witness_row(self, v: int, cls: int, sign: int) -> None:
        row = self.counts[v]
        arcs = self.arc_counts[cls]
        for j in range(self.r):
            if j != cls and row[j] == 0:
                arcs[j] += sign

    def _apply(self, v: int, to: Optional[int]) -> None:
        assignment = self.coloring.assignment
        frm = assignment[v]
        if frm != UNASSIGNED:
            self._add_witness_row(v, frm, -1)
            self.sizes[frm] -= 1
        for w in self.graph.neighbors(v):
            cw = assignment[w]
            row = self.counts[w]
            if frm != UNASSIGNED:
                row[frm] -= 1
                if row[frm] == 0 and cw != UNASSIGNED and cw != frm:
                    self.arc_counts[cw][frm] += 1
            if to is not None:
                row[to] += 1
                if row[to] == 1 and cw != UNASSIGNED and cw != to:
                    self.arc_counts[cw][to] -= 1
        self.coloring.move(v, to)
        if to is not None:
            self._add_witness_row(v, to, 1)
            self.sizes[to] += 1
        if self._zobrist is not None:
            table = self._zobrist[v]
            self.key ^= table[frm] ^ table[UNASSIGNED if to is None else to]
        self._digraph = None

    def enable_hashing(self, seed: int) -> None:
        rng = random.Random(seed)
        # index -1 (UNASSIGNED) lands on the extra last slot
        self._zobrist = [[rng.getrandbits(64) for _ in range(self.r + 1)] for _ in range(self.graph.n)]
        self.key = 0
        for v, cv in enumerate(self.coloring.assignment):
            self.key ^= self._zobrist[v][cv]

    # endregion

    # region Queries

    def class_of(self, v: int) -> Optional[int]:
        cv = self.coloring.assignment[v]
        return None if cv == UNASSIGNED else cv

    def deficient(self) -> Optional[int]:
        low = [i for i, size in enumerate(self.sizes) if size == self.s - 1]
        if len(low) != 1 or any(size != self.s for i, size in enumerate(self.sizes) if i != low[0]):
            return None
        return low[0]

    def profile(self) -> BalanceProfile:
        return BalanceProfile(tuple(self.sizes), self.deficient())

    def accessible_distances(self) -> dict[int, int]:
        deficient = self.deficient()
        if deficient is None:
            return {}
        arc_counts = self.arc_counts
        return class_digraph.reverse_distances(self.r, lambda i, j: arc_counts[i][j] > 0, deficient)

    def accessible_count(self) -> int:
        return len(self.accessible_distances())

    def arcs_into(self, classes: Iterable[int]) -> int:
        targets = set(classes)
        return sum(1 for i in range(self.r) for j in targets if i != j and self.arc_counts[i][j] > 0)

    def witness(self, i: int, j: int, exclude: Iterable[int] = ()) -> Optional[int]:
        skip = set(exclude)
        candidates = [v for v in self.coloring.classes[i] if self.counts[v][j] == 0 and v not in skip]
        return min(candidates, default=None)

    def insertion_class(self, x: int) -> Optional[int]:
        """Accessible class without a neighbour of ``x``, nearest to the deficient class first."""
        distance = self.accessible_distances()
        options = [c for c in distance if self.counts[x][c] == 0]
        return min(options, key=lambda c: (distance[c], c), default=None)

    def digraph(self) -> ClassDigraph:
        if self._digraph is None:
            deficient = self.deficient()
            if deficient is None:
                raise ProfileViolation(f"sizes {self.sizes} are not one-deficient for s={self.s}")
            d = class_digraph.from_tables(
                self.graph, self.coloring.assignment, self.coloring.classes, self.counts, self.s, deficient
            )
            if self.debug_rebuild:
                rebuilt = class_digraph.build(self.graph, self.coloring, deficient)
                if rebuilt != d:
                    raise RuntimeError("Bug! incremental class digraph disagrees with a full rebuild")
            self._digraph = d
        return self._digraph

    # endregion

    # region Logged moves

    def relocate(self, v: int, to: Optional[int], tag: str) -> Move:
        frm = self.class_of(v)
        move = Move(v, frm, to, tag)
        if to is not None:
            if to == frm:
                raise IllegalMove(f"vertex {v} already in class {to}", move)
            if self.counts[v][to] != 0:
                raise IllegalMove(f"vertex {v} has a neighbour in class {to}", move)
        elif frm is None:
            raise IllegalMove(f"vertex {v} is already outside every class", move)
        self._apply(v, to)
        self.log.append(move)
        return move

    def hold_out(self, x: int) -> Move:
        move = self.relocate(x, None, MoveTag.HOLDOUT)
        self.heldout = x
        return move

    def shift(self, path: tuple[int, ...], tag: str = MoveTag.PATH_SHIFT, first_witness: Optional[int] = None) -> None:
        if len(set(path)) != len(path):
            raise IllegalMove(f"path {path} repeats a class")
        chosen: list[int] = []
        for k, (i, j) in enumerate(zip(path, path[1:])):
            if k == 0 and first_witness is not None:
                if self.class_of(first_witness) != i or self.counts[first_witness][j] != 0:
                    raise StaleWitness((i, j))
                w = first_witness
            else:
                w = self.witness(i, j)
            if w is None:
                raise StaleWitness((i, j))
            chosen.append(w)
        for k in reversed(range(len(chosen))):
            self.relocate(chosen[k], path[k + 1], tag)

    def apply(self, step: Union[Relocate, Shift]) -> None:
        match step:
            case Relocate(vertex, to, tag):
                self.relocate(vertex, to, tag)
            case Shift(path, tag, first_witness):
                self.shift(path, tag, first_witness)
            case _:
                raise RuntimeError(f"Bug! Unknown plan step: {step!r}")

    def rollback_to(self, mark: int) -> None:
        while len(self.log) > mark:
            move = self.log.pop()
            self._apply(move.vertex, move.from_class)
            if move.tag == MoveTag.HOLDOUT and move.vertex == self.heldout:
                self.heldout = None

    def atomic_sequence(self, pattern: str = "") -> "AtomicSequence":
        return AtomicSequence(self, pattern)

    # endregion


class AtomicSequence:
    """Moves applied inside the block are kept only if ``commit`` is called.

    An exception or a missing commit rolls the state back to the mark taken on entry. Nested
    sequences behave like savepoints: the outer sequence can still undo a committed inner one.
    """

    UNSET = object()

    def __init__(self, state: FixState, pattern: str):
        self.state = state
        self.pattern = pattern
        self._mark: Union[int, object] = AtomicSequence.UNSET
        self._committed = False
        self._profile_before: Optional[BalanceProfile] = None
        self._a_before = 0

    def __enter__(self) -> "AtomicSequence":
        self._mark = len(self.state.log)
        self._profile_before = self.state.profile()
        self._a_before = self.state.accessible_count()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if exc_type is not None or not self._committed:
            self.state.rollback_to(self._mark)
            if exc_type is not None:
                logger.debug("sequence.rollback", pattern=self.pattern, error=str(exc_val))
        return False

    @property
    def a_before(self) -> int:
        return self._a_before

    def commit(self) -> None:
        if self._committed:
            raise RuntimeError("sequence already committed")
        self._committed = True

    def moves(self) -> tuple[Move, ...]:
        return tuple(self.state.log[self._mark :])

    def trace(self) -> MoveTrace:
        return MoveTrace(
            pattern=self.pattern,
            moves=self.moves(),
            before=self._profile_before,
            after=self.state.profile(),
            a_before=self._a_before,
            a_after=self.state.accessible_count(),
        )


def replay(graph: Graph, coloring: Coloring, moves: Iterable[Move]) -> Coloring:
    """Re-apply logged moves to a copy of ``coloring``, checking each against its record."""
    state = FixState(graph, coloring.copy())
    for move in moves:
        if state.class_of(move.vertex) != move.from_class:
            raise IllegalMove(f"vertex {move.vertex} is not in class {move.from_class}", move)
        state.relocate(move.vertex, move.to_class, move.tag)
    return state.coloring

