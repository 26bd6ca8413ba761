"""Move plans that raise the number of accessible classes.

Each planner reads a frozen ``ClassDigraph`` and yields ``Plan`` objects. Nothing here mutates
state: plans are applied and judged by ``PlanRunner`` inside an atomic sequence, so a plan built
on a witness that a previous step invalidated simply fails and is rolled back.
"""

from fractions import Fraction
from typing import Iterable, Iterator, Optional

import structlog

from equicolor.atomicity import FixState
from equicolor.errors import HypothesisViolated, IllegalMove
from equicolor.models.trace import MoveTag, MoveTrace, Plan, Relocate, Shift
from equicolor.services.class_digraph import ClassDigraph, SoloData, solo_analysis, strong_components_B, weight

logger = structlog.get_logger(__name__)

# heaviest candidates tried per weight query when nobody clears the threshold
SPARE_CANDIDATES = 2


class AttemptsExhausted(Exception):
    pass


class PlanRunner:
    """Applies plans one at a time and keeps the first that strictly raises ``a``."""

    def __init__(self, state: FixState, max_attempts: int, a_floor: int):
        self.state = state
        self.max_attempts = max_attempts
        self.a_floor = a_floor
        self.attempts = 0
        self._tried: set[Plan] = set()

    def attempt(self, plan: Plan) -> Optional[MoveTrace]:
        if plan in self._tried:
            return None
        if self.attempts >= self.max_attempts:
            raise AttemptsExhausted()
        self._tried.add(plan)
        self.attempts += 1
        state = self.state
        with state.atomic_sequence(plan.pattern) as seq:
            try:
                for step in plan.steps:
                    state.apply(step)
            except IllegalMove as e:
                logger.debug("plan.illegal", pattern=plan.pattern, error=str(e))
                return None
            if state.deficient() is None or state.accessible_count() <= self.a_floor:
                return None
            seq.commit()
            return seq.trace()

    def first(self, plans: Iterable[Plan]) -> Optional[MoveTrace]:
        for plan in plans:
            trace = self.attempt(plan)
            if trace is not None:
                return trace
        return None


# region Helpers


def _threshold(r: int, offset: Fraction) -> Fraction:
    return Fraction(r) - offset


def _heavy(d: ClassDigraph, cls: int, W: Iterable[int], threshold: Fraction, exclude: Iterable[int] = ()) -> list[int]:
    """Vertices of ``cls`` above ``threshold`` for ``f_W``, followed by a couple of runners-up."""
    query = weight(d, cls, W)
    skip = set(exclude)
    hits = query.above(threshold, exclude=skip)
    rest = sorted((v for v in query.values if v not in skip and v not in hits), key=lambda v: (-query.values[v], v))
    return hits + rest[:SPARE_CANDIDATES]


def _largest_component(d: ClassDigraph) -> frozenset[int]:
    return frozenset(strong_components_B(d).largest)


def _solo(d: ClassDigraph, v: int) -> Optional[SoloData]:
    try:
        return solo_analysis(d, v)
    except HypothesisViolated:
        return None


def _in_path(d: ClassDigraph, src: int, dst: int, within: Iterable[int]) -> Optional[tuple[int, ...]]:
    if src == dst:
        return (src,)
    return d.shortest_path(src, dst, within=within)


def _with_shift(steps: list, path: tuple[int, ...], first_witness: Optional[int] = None) -> tuple:
    if len(path) > 1:
        steps.append(Shift(path, MoveTag.PATH_SHIFT, first_witness))
    return tuple(steps)


# endregion


# region Single-vertex moves


def claim5_plans(d: ClassDigraph, v: int) -> Iterator[Plan]:
    """Swap ``v`` with a nice solo neighbour ``u`` that is ``v``'s only neighbour in its class."""
    solo = _solo(d, v)
    if solo is None:
        return
    i = d.class_of(v)
    for u in solo.nice:
        j = d.class_of(u)
        if d.neighbor_count(v, j) != 1:
            continue
        yield Plan(
            MoveTag.CLAIM5_EXCHANGE,
            (
                Relocate(v, None, MoveTag.LIFT),
                Relocate(u, i, MoveTag.CLAIM5_EXCHANGE),
                Relocate(v, j, MoveTag.CLAIM5_EXCHANGE),
            ),
        )


def claim6_plans(d: ClassDigraph, v: int) -> Iterator[Plan]:
    """Send ``v`` to a free B-class, pull a nice solo neighbour ``u`` into its place, repair by a shift.

    The repair path runs from ``v``'s new class to ``u``'s old one and avoids the class of a
    solo partner of ``u`` so that the partner keeps its single neighbour in ``v``'s class.
    """
    solo = _solo(d, v)
    if solo is None or not solo.bprime:
        return
    i = d.class_of(v)
    for u in solo.nice:
        j = d.class_of(u)
        partner_classes = sorted({d.class_of(w) for w in solo.solo if w != u and not d.graph.has_edge(u, w)})
        for k in solo.bprime:
            if k == j:
                continue
            seen = set()
            for m in partner_classes:
                avoid = (i,) if m == j else (m, i)
                path = d.shortest_path(k, j, avoid=avoid)
                if path is None or path in seen:
                    continue
                seen.add(path)
                steps = [Relocate(v, k, MoveTag.CLAIM6_EXCHANGE), Relocate(u, i, MoveTag.CLAIM6_EXCHANGE)]
                yield Plan(MoveTag.CLAIM6_EXCHANGE, _with_shift(steps, path))


def claim7_plans(d: ClassDigraph, v: int) -> Iterator[Plan]:
    """Move a solo ``v`` of a terminal class into another accessible class that it misses."""
    i = d.class_of(v)
    if i not in d.terminal:
        return
    solo = _solo(d, v)
    if solo is None or not solo.solo:
        return
    for cls in sorted(d.accessible - {i}):
        if d.neighbor_count(v, cls) != 0:
            continue
        if cls == d.deficient:
            yield Plan(MoveTag.CLAIM7_V1_RELOCATION, (Relocate(v, cls, MoveTag.CLAIM7_V1_RELOCATION),))
            continue
        path = d.shortest_path(cls, d.deficient, avoid=(i,))
        if path is not None:
            steps = [Relocate(v, cls, MoveTag.CLAIM7_RELOCATION)]
            yield Plan(MoveTag.CLAIM7_RELOCATION, _with_shift(steps, path))


def claim7_compound_plans(d: ClassDigraph, v: int, component: frozenset[int]) -> Iterator[Plan]:
    """Three-class case where ``v`` misses the deficient class and every solo neighbour sits in one class.

    A heavy ``w`` beside ``v`` takes that class, ``v`` goes into the big strong component, and
    the class left short there is refilled along the component by a shift.
    """
    i = d.class_of(v)
    if d.a != 3 or d.neighbor_count(v, d.deficient) != 0:
        return
    solo_v = _solo(d, v)
    if solo_v is None or not solo_v.solo:
        return
    holders = {d.class_of(u) for u in solo_v.solo}
    if len(holders) != 1:
        return
    c4 = holders.pop()
    for w in _heavy(d, i, (c4,), _threshold(d.r, Fraction(7, 2)), exclude=(v,)):
        solo_w = _solo(d, w)
        if solo_w is None or c4 not in solo_w.bprime:
            continue
        for z0 in solo_w.solo:
            vr = d.class_of(z0)
            if vr not in component:
                continue
            z1s = [z for z in solo_v.solo if not d.graph.has_edge(z, z0)]
            for z1 in z1s[:2]:
                for k in solo_v.bprime:
                    if k not in component or k == vr:
                        continue
                    path = _in_path(d, k, vr, component)
                    if path is None:
                        continue
                    steps = [
                        Relocate(w, c4, MoveTag.CLAIM7_V1_COMPOUND),
                        Relocate(v, k, MoveTag.CLAIM7_V1_COMPOUND),
                        Relocate(z1, i, MoveTag.CLAIM7_V1_COMPOUND),
                    ]
                    _with_shift(steps, path)
                    steps.append(Relocate(z0, i, MoveTag.CLAIM7_V1_COMPOUND))
                    yield Plan(MoveTag.CLAIM7_V1_COMPOUND, tuple(steps))


def claim8_plans(d: ClassDigraph) -> Iterator[Plan]:
    """Reverse one arc into the deficient class by moving its first witness across."""
    for j in sorted(d.accessible):
        w = d.first_witness(j, d.deficient)
        if w is not None:
            yield Plan(MoveTag.CLAIM8_REVERSAL, (Relocate(w, d.deficient, MoveTag.CLAIM8_REVERSAL),))


def single_vertex_plans(d: ClassDigraph, v: int) -> Iterator[Plan]:
    yield from claim5_plans(d, v)
    yield from claim6_plans(d, v)
    yield from claim7_plans(d, v)


# endregion


# region Case drivers


def terminal_case_plans(d: ClassDigraph, vi: int) -> Iterator[Plan]:
    """Three or four accessible classes, ``vi`` terminal with an arc into the deficient class."""
    v1 = d.first_witness(vi, d.deficient)
    component = _largest_component(d)
    exclude = () if v1 is None else (v1,)
    for v2 in _heavy(d, vi, (), _threshold(d.r, Fraction(d.a)), exclude=exclude):
        yield from single_vertex_plans(d, v2)
        if d.a != 3:
            continue
        solo = _solo(d, v2)
        if solo is None:
            continue
        for c4 in sorted({d.class_of(u) for u in solo.nice} - component):
            for v3 in _heavy(d, vi, (c4,), _threshold(d.r, Fraction(7, 2)), exclude=exclude + (v2,)):
                yield from single_vertex_plans(d, v3)
        yield from claim7_compound_plans(d, v2, component)


def case3_plans(d: ClassDigraph, vi: int) -> Iterator[Plan]:
    """Two accessible classes: ``vi`` and the deficient class."""
    v1 = d.first_witness(vi, d.deficient)
    component = _largest_component(d)
    outside = d.nonaccessible - component
    exclude = () if v1 is None else (v1,)
    for v2 in _heavy(d, vi, (), _threshold(d.r, Fraction(2)), exclude=exclude):
        yield from single_vertex_plans(d, v2)
        solo2 = _solo(d, v2)
        if solo2 is None:
            continue
        for v3 in _heavy(d, vi, outside, _threshold(d.r, Fraction(3)), exclude=exclude + (v2,)):
            yield from single_vertex_plans(d, v3)
            yield from _case3_compound(d, vi, v2, v3, solo2, component)


def _case3_compound(
    d: ClassDigraph, vi: int, v2: int, v3: int, solo2: SoloData, component: frozenset[int]
) -> Iterator[Plan]:
    solo3 = _solo(d, v3)
    if solo3 is None:
        return
    for z0 in solo3.solo:
        vr = d.class_of(z0)
        if vr not in component:
            continue
        for target in solo3.bprime:
            zs = [z for z in solo2.nice if d.class_of(z) == target and not d.graph.has_edge(z, z0)]
            if len(zs) < 2:
                continue
            for bi in solo2.bprime:
                if bi not in component or bi == target:
                    continue
                path = _in_path(d, bi, vr, component)
                if path is None:
                    continue
                steps = [
                    Relocate(v3, target, MoveTag.CASE3_V3_TO_V3),
                    Relocate(v2, bi, MoveTag.CASE3_V2_TO_BI),
                    Relocate(zs[0], vi, MoveTag.CASE3_Z1_TO_V2),
                    Relocate(z0, vi, MoveTag.CASE3_Z0_TO_V2),
                ]
                yield Plan("case3-compound", _with_shift(steps, path))


def case4_plans(d: ClassDigraph) -> Iterator[Plan]:
    """Only the deficient class is accessible."""
    deficient = d.deficient
    component = _largest_component(d)
    outside = d.nonaccessible - component
    for v2 in _heavy(d, deficient, (), _threshold(d.r, Fraction(1))):
        yield from claim5_plans(d, v2)
        yield from claim6_plans(d, v2)
        solo2 = _solo(d, v2)
        if solo2 is None:
            continue
        for v3 in _heavy(d, deficient, outside, _threshold(d.r, Fraction(5, 2)), exclude=(v2,)):
            yield from claim5_plans(d, v3)
            yield from claim9_plans(d, v3, component)
            yield from _case4_compound(d, v2, v3, solo2, component)


def _case4_compound(d: ClassDigraph, v2: int, v3: int, solo2: SoloData, component: frozenset[int]) -> Iterator[Plan]:
    solo3 = _solo(d, v3)
    if solo3 is None:
        return
    deficient = d.deficient
    for z0 in solo3.solo:
        vr = d.class_of(z0)
        if vr not in component:
            continue
        for target in solo3.bprime:
            zs = [z for z in solo2.nice if d.class_of(z) == target and not d.graph.has_edge(z, z0)]
            if len(zs) < 2:
                continue
            for bi in solo2.bprime:
                if bi not in component or bi == target:
                    continue
                path = _in_path(d, bi, vr, component)
                if path is None:
                    continue
                steps = [
                    Relocate(v3, target, MoveTag.CASE4_V3_TO_V2),
                    Relocate(v2, bi, MoveTag.CASE4_V2_TO_BI),
                    Relocate(z0, deficient, MoveTag.CASE4_Z_TO_V1),
                    Relocate(zs[0], deficient, MoveTag.CASE4_Z_TO_V1),
                ]
                yield Plan("case4-compound", _with_shift(steps, path))


def claim9_plans(d: ClassDigraph, v3: int, component: frozenset[int]) -> Iterator[Plan]:
    """``v3`` has exactly two neighbours in a component class and both are solo.

    Either ``v3`` swaps places with the pair directly, or ``v3``'s only neighbour in another
    component class is shifted towards the pair's class first.
    """
    solo = _solo(d, v3)
    if solo is None:
        return
    deficient = d.deficient
    for target in sorted(component):
        pair = d.neighbors_in(v3, target)
        if len(pair) != 2 or not all(z in solo.solo for z in pair):
            continue
        w1, w2 = pair
        yield Plan(
            MoveTag.CLAIM9_PAIR,
            (
                Relocate(v3, None, MoveTag.LIFT),
                Relocate(w1, deficient, MoveTag.CLAIM9_PAIR),
                Relocate(w2, deficient, MoveTag.CLAIM9_PAIR),
                Relocate(v3, target, MoveTag.CLAIM9_PAIR),
            ),
        )
        for j in sorted(component - {target}):
            only = d.neighbors_in(v3, j)
            if len(only) != 1:
                continue
            path = d.shortest_path(j, target, within=component)
            if path is None or d.neighbor_count(only[0], path[1]) != 0:
                continue
            yield Plan(
                MoveTag.CLAIM9_PAIR,
                (
                    Shift(path, MoveTag.CLAIM9_PAIR, first_witness=only[0]),
                    Relocate(v3, j, MoveTag.CLAIM9_PAIR),
                    Relocate(w1, deficient, MoveTag.CLAIM9_PAIR),
                    Relocate(w2, deficient, MoveTag.CLAIM9_PAIR),
                ),
            )


def opportunistic_plans(d: ClassDigraph) -> Iterator[Plan]:
    """Every single-vertex move on every accessible vertex, then arc reversals."""
    for v in d.A_vertices():
        yield from single_vertex_plans(d, v)
    yield from claim8_plans(d)


# endregion
