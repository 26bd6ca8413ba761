from typing import Iterable, Optional, Union

import structlog

from equicolor.atomicity import FixState
from equicolor.errors import HypothesisViolated, ImprovementNotFound, NoAdmissibleClass
from equicolor.models.coloring import Coloring
from equicolor.models.config import SearchBudget, SolverMode
from equicolor.models.trace import Move, MoveTag, MoveTrace, Plan, Relocate, Shift
from equicolor.services import patterns
from equicolor.services.class_digraph import ClassDigraph
from equicolor.services.fallback import fallback_search
from equicolor.services.patterns import AttemptsExhausted, PlanRunner

logger = structlog.get_logger(__name__)

ONE_PLANAR_MAX_ACCESSIBLE = 7

Step = Union[Move, Relocate, Shift]


def apply_sequence(state: FixState, moves: Iterable[Step], pattern: str = "sequence") -> FixState:
    """Apply ``moves`` in order; on the first illegal one everything is rolled back and the error re-raised."""
    with state.atomic_sequence(pattern) as seq:
        for move in moves:
            if isinstance(move, Move):
                state.relocate(move.vertex, move.to_class, move.tag)
            else:
                state.apply(move)
        seq.commit()
    return state


def shift_path(state: FixState, path: tuple[int, ...]) -> FixState:
    deficient = state.deficient()
    if not path or path[-1] != deficient:
        raise HypothesisViolated(f"path {path} does not end at the deficient class {deficient}")
    return apply_sequence(state, [Shift(tuple(path))], MoveTag.PATH_SHIFT)


def _terminal_into_deficient(d: ClassDigraph) -> Optional[int]:
    return min((i for i in d.terminal if d.has_arc(i, d.deficient)), default=None)


def _reversal_candidates(d: ClassDigraph) -> list[int]:
    """In-neighbours of the deficient class, those ending the longest shortest paths first."""
    ordered: list[int] = []
    for cls in sorted(d.accessible, key=lambda c: (-d.distance[c], c)):
        path = d.path_to_deficient(cls)
        if path is not None and len(path) >= 2 and path[-2] not in ordered:
            ordered.append(path[-2])
    return ordered


def normalize_terminal(state: FixState) -> int:
    """Make sure some terminal class has an arc into the deficient class and return it.

    When no such class exists one arc into the deficient class is reversed by moving its
    witness across, which keeps ``a`` and relocates the deficiency. The state is changed in
    place; the returned class is valid for the state as left behind.
    """
    d = state.digraph()
    match d.a:
        case 2:
            return next(c for c in d.accessible if c != d.deficient)
        case 3 | 4:
            pass
        case _:
            raise HypothesisViolated(f"terminal normalisation needs 2 <= a <= 4, got a={d.a}")

    found = _terminal_into_deficient(d)
    if found is not None:
        return found
    for j in _reversal_candidates(d):
        w = d.first_witness(j, d.deficient)
        with state.atomic_sequence(MoveTag.CLAIM8_REVERSAL) as seq:
            state.relocate(w, d.deficient, MoveTag.CLAIM8_REVERSAL)
            reversed_ = state.digraph()
            found = _terminal_into_deficient(reversed_) if reversed_.a == d.a else None
            if found is not None:
                seq.commit()
                return found
    raise HypothesisViolated("no arc reversal yields a terminal class with an arc into the deficient class")


def insert_heldout(state: FixState, x: int) -> Coloring:
    """Put the held-out ``x`` into the nearest accessible class it has no neighbour in."""
    cls = state.insertion_class(x)
    if cls is None:
        raise NoAdmissibleClass(f"vertex {x} has a neighbour in every accessible class")
    path = state.digraph().path_to_deficient(cls)
    with state.atomic_sequence(MoveTag.INSERT) as seq:
        if len(path) > 1:
            state.shift(path)
        state.relocate(x, cls, MoveTag.INSERT)
        seq.commit()
    if state.heldout == x:
        state.heldout = None
    return state.coloring


# region Improvement


def _terminal_case(state: FixState, runner: PlanRunner) -> Optional[MoveTrace]:
    with state.atomic_sequence(MoveTag.CLAIM8_REVERSAL) as seq:
        try:
            vi = normalize_terminal(state)
        except HypothesisViolated as e:
            logger.debug("improve.normalize_failed", error=str(e))
            return None
        d = state.digraph()
        if d.a > runner.a_floor:
            seq.commit()
            return seq.trace()
        trace = runner.first(patterns.terminal_case_plans(d, vi))
        if trace is None:
            return None
        seq.commit()
        return seq.trace()._replace(pattern=trace.pattern)


def _case_plans(state: FixState) -> list[Plan]:
    d = state.digraph()
    match d.a:
        case 2:
            return list(patterns.case3_plans(d, normalize_terminal(state)))
        case 1:
            return list(patterns.case4_plans(d))
    return []


def _run_patterns(state: FixState, runner: PlanRunner) -> Optional[MoveTrace]:
    a = state.digraph().a
    if a in (3, 4):
        trace = _terminal_case(state, runner)
        if trace is not None:
            return trace
    trace = runner.first(_case_plans(state))
    if trace is not None:
        return trace
    return runner.first(patterns.opportunistic_plans(state.digraph()))


def improve_accessibility(
    state: FixState,
    budget: SearchBudget,
    mode: SolverMode = SolverMode.ONE_PLANAR,
    audit=None,
    seed: int = 0,
) -> MoveTrace:
    """Strictly raise the number of accessible classes, possibly moving the deficiency.

    Move patterns are tried first in case order for the current ``a``, then the opportunistic
    single-vertex moves, and only then the bounded generic search.
    """
    d = state.digraph()
    a0 = d.a
    if mode == SolverMode.ONE_PLANAR and a0 > ONE_PLANAR_MAX_ACCESSIBLE:
        raise HypothesisViolated(f"a={a0} exceeds {ONE_PLANAR_MAX_ACCESSIBLE}; the held-out vertex fits already")
    if a0 >= state.r:
        raise HypothesisViolated("every class is already accessible")
    if audit is not None:
        audit.record_stuck_state(d)

    runner = PlanRunner(state, budget.max_pattern_attempts, a0)
    try:
        trace = _run_patterns(state, runner)
    except AttemptsExhausted:
        trace = None
    if trace is not None:
        logger.info("improve.pattern", pattern=trace.pattern, a_before=a0, a_after=trace.a_after)
        return trace

    if mode == SolverMode.ONE_PLANAR:
        logger.warning("improve.fallback", reason="pattern pipeline gap", a=a0, attempts=runner.attempts)
    else:
        logger.debug("improve.fallback", a=a0, attempts=runner.attempts)
    trace = fallback_search(state, budget, a0, seed)
    if trace is None:
        dump = d.to_dump()
        logger.error("improve.failed", a=a0, dump=dump)
        raise ImprovementNotFound(f"no move sequence raises a={a0} within the search budget", dump)
    return trace


# endregion
