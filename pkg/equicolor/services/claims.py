"""Structural audits of stuck states.

A fix phase that needs an improvement round sits in a state where the held-out vertex fits in
no accessible class. On one-planar inputs such states obey a handful of counting bounds; the
audits here record every bound that fails so the solver can report them.
"""

import random
from typing import NamedTuple, Optional

import structlog

from equicolor.services.class_digraph import (
    ClassDigraph,
    solo_analysis,
    strong_components_B,
    weight,
    weight_sum_expected,
)

logger = structlog.get_logger(__name__)

MAX_ACCESSIBLE = 7
MAX_ACCESSIBLE_AT_STUCK = 4
LARGE_COMPONENT_SLACK = 4
MANY_SOLO = 7
NICE_SLACK = 3


class Finding(NamedTuple):
    check: str
    detail: str


def edge_budget(d: ClassDigraph) -> int:
    return 3 * (d.r * d.s - 1) - 8


def audit_stuck_state(d: ClassDigraph) -> tuple[list[Finding], list[Finding]]:
    """Return ``(violations, notes)`` for a state entering an improvement round."""
    violations: list[Finding] = []
    notes: list[Finding] = []
    a, b, s = d.a, d.b, d.s

    if a > MAX_ACCESSIBLE:
        violations.append(Finding("accessible-at-most-7", f"a={a}"))

    edges = d.edges_between_A_and_B()
    if a * b * s > edges:
        violations.append(Finding("ab-edge-floor", f"a*b*s={a * b * s} > |E(A,B)|={edges}"))
    budget = edge_budget(d)
    if a * b * s > budget:
        if a * b * s <= budget + 2:
            notes.append(Finding("ab-edge-budget-gap", f"a*b*s={a * b * s} sits between the -8 and -6 forms"))
        else:
            violations.append(Finding("ab-edge-budget", f"a*b*s={a * b * s} > {budget}"))
    if a > MAX_ACCESSIBLE_AT_STUCK:
        violations.append(Finding("accessible-at-most-4", f"a={a}"))

    if b > 0:
        largest = strong_components_B(d).largest
        if len(largest) < d.r - LARGE_COMPONENT_SLACK:
            violations.append(Finding("large-component", f"largest={len(largest)} < r-4={d.r - 4}"))

    for v in d.A_vertices():
        solo = solo_analysis(d, v)
        if solo.q >= MANY_SOLO and solo.qp < solo.q - NICE_SLACK:
            violations.append(Finding("nice-solo-count", f"vertex {v}: q={solo.q} q'={solo.qp}"))
    return violations, notes


# region Property predicates


def unique_nice_solo_pairs(d: ClassDigraph) -> list[tuple[int, int]]:
    """Ordinary ``v`` with a nice solo neighbour ``u`` that is ``v``'s only neighbour in ``u``'s class."""
    pairs = []
    for v in d.A_vertices():
        if not d.is_ordinary(v):
            continue
        for u in solo_analysis(d, v).nice:
            if d.neighbor_count(v, d.class_of(u)) == 1:
                pairs.append((v, u))
    return pairs


def terminal_solo_gaps(d: ClassDigraph) -> list[tuple[int, int]]:
    """Solo-bearing ``v`` in a terminal class together with an accessible class it has no neighbour in.

    For ``a = 3`` the deficient class is exempt unless ``v`` has at least seven solo neighbours.
    """
    gaps = []
    for i in sorted(d.terminal):
        for v in d.classes[i]:
            solo = solo_analysis(d, v)
            if not solo.solo:
                continue
            for cls in sorted(d.accessible - {i}):
                if cls == d.deficient and d.a == 3 and solo.q < MANY_SOLO:
                    continue
                if d.neighbor_count(v, cls) == 0:
                    gaps.append((v, cls))
    return gaps


# endregion


class AuditLog:
    """Accumulates audit findings and weight-sum checks across a solve."""

    def __init__(self, seed: int = 0, weight_samples: int = 4):
        self.stuck_states = 0
        self.violations: list[Finding] = []
        self.notes: list[Finding] = []
        self.weight_checks = 0
        self.weight_failures = 0
        self.weight_samples = weight_samples
        self._rng = random.Random(seed)

    def record_stuck_state(self, d: ClassDigraph) -> None:
        self.stuck_states += 1
        violations, notes = audit_stuck_state(d)
        for finding in violations:
            logger.warning("audit.violation", check=finding.check, detail=finding.detail)
        self.violations.extend(violations)
        self.notes.extend(notes)
        self.sample_weight_sums(d)

    def sample_weight_sums(self, d: ClassDigraph, samples: Optional[int] = None) -> int:
        """Check the weight-sum identity on random ``(class, W)`` pairs; returns the failures seen."""
        failures = 0
        nonaccessible = sorted(d.nonaccessible)
        accessible = sorted(d.accessible)
        for _ in range(self.weight_samples if samples is None else samples):
            cls = self._rng.choice(accessible)
            W = [c for c in nonaccessible if self._rng.random() < 0.5]
            total = weight(d, cls, W).total()
            self.weight_checks += 1
            if total != weight_sum_expected(d, W):
                failures += 1
                logger.error("audit.weight_sum", cls=cls, W=W, total=str(total))
        self.weight_failures += failures
        return failures

    @property
    def clean(self) -> bool:
        return not self.violations and self.weight_failures == 0
