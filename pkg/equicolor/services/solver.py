import heapq
import random
from typing import Literal, NamedTuple, Optional

import structlog
from pydantic import BaseModel

from equicolor.atomicity import FixState, replay
from equicolor.errors import ImprovementNotFound, InvalidInput, NoAdmissibleClass
from equicolor.models.coloring import UNASSIGNED, Coloring
from equicolor.models.config import ONE_PLANAR_MAX_LOW_DEGREE, SearchBudget, SolverConfig, SolverMode
from equicolor.models.graph import Graph, complete_graph
from equicolor.models.trace import EdgeEvent, Move, MoveTag, Reduction, TraceDocument
from equicolor.services import graph_core
from equicolor.services.claims import AuditLog
from equicolor.services.coloring import greedy_balanced_extend, verify_equitable, verify_proper
from equicolor.services.move_engine import improve_accessibility, insert_heldout
from equicolor.utils.logging_utils import log_phase

logger = structlog.get_logger(__name__)

PAD_LIMIT = 6


class PeelStep(NamedTuple):
    x: int
    y: int
    degree: int


class PeelSchedule(NamedTuple):
    """Edges in removal order; each was removed at a vertex ``x`` of degree ``degree``."""

    steps: tuple[PeelStep, ...]

    def __len__(self) -> int:
        return len(self.steps)


class SolveStats(BaseModel):
    fix_phases: int = 0
    improvement_rounds: int = 0
    pattern_counts: dict[str, int] = {}
    fallback_rounds: int = 0


class SolveResult(NamedTuple):
    coloring: Coloring
    trace: TraceDocument
    stats: SolveStats
    audit: Optional[AuditLog]


# region Input contract


def validate_input(g: Graph, cfg: SolverConfig) -> None:
    delta = g.max_degree
    if cfg.mode == SolverMode.HS:
        if cfg.r < delta + 1:
            raise InvalidInput(f"hs mode needs r >= max degree + 1 = {delta + 1}, got r={cfg.r}")
        return
    if delta > cfg.r:
        raise InvalidInput(f"max degree {delta} exceeds r={cfg.r}")
    if not cfg.strict_validation:
        return
    bipartite = graph_core.is_bipartite(g) is not None
    if not graph_core.check_edge_bound(g, bipartite_mode=bipartite, strict=cfg.strict_bipartite):
        bound = graph_core.edge_bound(g.n, bipartite, cfg.strict_bipartite)
        raise InvalidInput(f"{g.m} edges exceed the one-planar bound {bound} for n={g.n}")
    degeneracy = graph_core.degeneracy_order(g).degeneracy
    if degeneracy > ONE_PLANAR_MAX_LOW_DEGREE:
        raise InvalidInput(f"degeneracy {degeneracy} exceeds {ONE_PLANAR_MAX_LOW_DEGREE}")


# endregion


# region Divisibility reduction


class ReductionRecipe(NamedTuple):
    """How a solution of the reduced graph becomes one of the original graph.

    ``survivors[i]`` is the original id of reduced vertex ``i`` (pad vertices are not listed).
    """

    kind: Literal["identity", "pad", "strip"]
    original_n: int
    pad: int
    stripped: tuple[int, ...]
    survivors: tuple[int, ...]

    def to_document(self) -> Reduction:
        return Reduction(kind=self.kind, pad=self.pad, stripped=list(self.stripped))

    def restore(self, g: Graph, reduced: Coloring) -> Coloring:
        assignment = [UNASSIGNED] * self.original_n
        for new, old in enumerate(self.survivors):
            assignment[old] = reduced.assignment[new]
        restored = Coloring(reduced.r, assignment)
        if self.kind != "strip":
            return restored
        cap = -(-self.original_n // reduced.r)
        return greedy_balanced_extend(g, restored, reversed(self.stripped), cap)


def divisibility_reduce(g: Graph, r: int, mode: SolverMode = SolverMode.ONE_PLANAR) -> tuple[Graph, ReductionRecipe]:
    """Reduce to a graph whose order is a multiple of ``r``.

    With ``t = r - n mod r``: small ``t`` pads with a disjoint ``K_t`` whose vertices end up in
    distinct classes and are dropped afterwards; large ``t`` strips the first ``r - t`` vertices
    of a degeneracy order and colours them back greedily in reverse. HS mode always pads.
    """
    rem = g.n % r
    if rem == 0:
        return g, ReductionRecipe("identity", g.n, 0, (), tuple(range(g.n)))
    t = r - rem
    if t <= PAD_LIMIT or mode == SolverMode.HS:
        return g.disjoint_union(complete_graph(t)), ReductionRecipe("pad", g.n, t, (), tuple(range(g.n)))
    stripped = graph_core.degeneracy_order(g).order[:rem]
    dropped = set(stripped)
    reduced, survivors = g.induced_subgraph(v for v in range(g.n) if v not in dropped)
    return reduced, ReductionRecipe("strip", g.n, 0, tuple(stripped), tuple(survivors))


def recipe_from_document(g: Graph, r: int, reduction: Reduction) -> tuple[Graph, ReductionRecipe]:
    """Rebuild the reduced graph a trace was recorded on."""
    match reduction.kind:
        case "identity":
            return g, ReductionRecipe("identity", g.n, 0, (), tuple(range(g.n)))
        case "pad":
            recipe = ReductionRecipe("pad", g.n, reduction.pad, (), tuple(range(g.n)))
            return g.disjoint_union(complete_graph(reduction.pad)), recipe
        case "strip":
            stripped = set(reduction.stripped)
            reduced, survivors = g.induced_subgraph(v for v in range(g.n) if v not in stripped)
            return reduced, ReductionRecipe("strip", g.n, 0, tuple(reduction.stripped), tuple(survivors))
    raise InvalidInput(f"unknown reduction kind {reduction.kind!r}")


# endregion


def peel_schedule(
    g: Graph,
    max_low_degree: Optional[int] = ONE_PLANAR_MAX_LOW_DEGREE,
    neighbor_choice: str = "lowest",
    seed: int = 0,
) -> PeelSchedule:
    """Remove edges one at a time at a minimum-degree non-isolated vertex until none are left."""
    rng = random.Random(seed)
    adjacency = [set(g.neighbors(v)) for v in range(g.n)]
    heap = [(len(nbrs), v) for v, nbrs in enumerate(adjacency) if nbrs]
    heapq.heapify(heap)
    steps = []
    while heap:
        d, x = heapq.heappop(heap)
        if d != len(adjacency[x]) or d == 0:
            continue
        if max_low_degree is not None and d > max_low_degree:
            raise InvalidInput(f"minimum degree {d} exceeds {max_low_degree} after {len(steps)} peels")
        if neighbor_choice == "random":
            y = rng.choice(sorted(adjacency[x]))
        else:
            y = min(adjacency[x])
        adjacency[x].discard(y)
        adjacency[y].discard(x)
        steps.append(PeelStep(x, y, d))
        for v in (x, y):
            if adjacency[v]:
                heapq.heappush(heap, (len(adjacency[v]), v))
    return PeelSchedule(tuple(steps))


def _improve(state: FixState, cfg: SolverConfig, audit: Optional[AuditLog]):
    budget: SearchBudget = cfg.budget
    while True:
        try:
            return improve_accessibility(state, budget, cfg.mode, audit, cfg.seed)
        except ImprovementNotFound:
            if cfg.mode != SolverMode.HS or budget.max_fallback_depth * 2 > cfg.max_hs_depth:
                raise
            budget = budget.escalated(2)
            logger.info("improve.escalate", depth=budget.max_fallback_depth)


def fix_conflict(
    graph: Graph,
    coloring: Coloring,
    x: int,
    cfg: SolverConfig,
    stats: Optional[SolveStats] = None,
    audit: Optional[AuditLog] = None,
) -> tuple[Coloring, list[Move]]:
    """Hold ``x`` out of its class and put it back once some accessible class can take it.

    ``graph`` already contains the re-added edge. Returns the fixed colouring and the moves made.
    """
    stats = stats if stats is not None else SolveStats()
    state = FixState(graph, coloring, s=graph.n // cfg.r, debug_rebuild=cfg.debug_rebuild)
    state.hold_out(x)
    stats.fix_phases += 1
    with log_phase(logger, "fix.done", level="debug", x=x) as result:
        # a strictly grows each round, so r rounds suffice
        for _ in range(cfg.r + 1):
            try:
                insert_heldout(state, x)
                result["moves"] = len(state.log)
                return state.coloring, list(state.log)
            except NoAdmissibleClass:
                pass
            trace = _improve(state, cfg, audit)
            stats.improvement_rounds += 1
            stats.pattern_counts[trace.pattern] = stats.pattern_counts.get(trace.pattern, 0) + 1
            if trace.pattern == MoveTag.FALLBACK:
                stats.fallback_rounds += 1
    raise RuntimeError(f"Bug! held-out vertex {x} still not inserted after {cfg.r + 1} rounds")


def equitable_color(g: Graph, cfg: SolverConfig) -> SolveResult:
    validate_input(g, cfg)
    logger.info("solve.start", n=g.n, m=g.m, r=cfg.r, mode=cfg.mode.value)
    with log_phase(logger, "solve.done", n=g.n, r=cfg.r) as result:
        reduced, recipe = divisibility_reduce(g, cfg.r, cfg.mode)
        logger.info("reduce", kind=recipe.kind, pad=recipe.pad, stripped=list(recipe.stripped))
        schedule = peel_schedule(reduced, cfg.max_low_degree, cfg.neighbor_choice, cfg.seed)
        logger.info("peel.done", edges=len(schedule))

        stats = SolveStats()
        audit = AuditLog(cfg.seed) if cfg.audit else None
        coloring = Coloring.round_robin(reduced.n, cfg.r)
        graph = Graph.empty(reduced.n)
        events = []
        for step in reversed(schedule.steps):
            graph = graph.add_edge(step.x, step.y)
            moves: list[Move] = []
            if coloring.assignment[step.x] == coloring.assignment[step.y]:
                logger.debug("fix.start", x=step.x, y=step.y, degree=step.degree)
                coloring, moves = fix_conflict(graph, coloring, step.x, cfg, stats, audit)
            events.append(EdgeEvent(edge=(step.x, step.y), moves=[m.to_record() for m in moves]))

        final = recipe.restore(g, coloring)
        if not (verify_proper(g, final) and verify_equitable(final)):
            raise RuntimeError("Bug! solver produced a colouring that fails verification")
        result.update(fix_phases=stats.fix_phases, rounds=stats.improvement_rounds, fallback=stats.fallback_rounds)

    trace = TraceDocument(
        r=cfg.r,
        n=g.n,
        reduction=recipe.to_document(),
        events=events,
        final=list(coloring.assignment),
    )
    return SolveResult(final, trace, stats, audit)


def hs_color(g: Graph, r: int, **overrides) -> Coloring:
    """Equitable ``r``-colouring for any ``r`` above the maximum degree."""
    cfg = SolverConfig(r=r, mode=SolverMode.HS, **overrides)
    return equitable_color(g, cfg).coloring


def replay_trace(g: Graph, doc: TraceDocument) -> Coloring:
    """Re-run a recorded solve on ``g`` and return the colouring it ends with.

    Every move is checked for legality against the graph as it stood when the move was made, and
    after every re-added edge the colouring must be proper and equitable again.
    """
    reduced, recipe = recipe_from_document(g, doc.r, doc.reduction)
    if reduced.n % doc.r:
        raise InvalidInput(f"reduced graph has {reduced.n} vertices, not a multiple of r={doc.r}")
    coloring = Coloring.round_robin(reduced.n, doc.r)
    graph = Graph.empty(reduced.n)
    for event in doc.events:
        x, y = event.edge
        if not reduced.has_edge(x, y):
            raise InvalidInput(f"trace re-adds {x}-{y}, which is not an edge")
        graph = graph.add_edge(x, y)
        coloring = replay(graph, coloring, [record.to_move() for record in event.moves])
        if coloring.assignment[x] == coloring.assignment[y] or not coloring.profile().is_equitable:
            raise InvalidInput(f"colouring after re-adding {x}-{y} is not proper and equitable")
    if graph.m != reduced.m:
        raise InvalidInput(f"trace re-adds {graph.m} of {reduced.m} edges")
    if coloring.assignment != doc.final:
        raise InvalidInput("replayed colouring differs from the recorded final colouring")
    final = recipe.restore(g, coloring)
    if not (verify_proper(g, final) and verify_equitable(final)):
        raise InvalidInput("restored colouring fails verification")
    return final
