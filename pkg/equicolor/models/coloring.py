from typing import NamedTuple, Optional, Sequence

from equicolor.errors import InvalidInput
from equicolor.models.base import Document

UNASSIGNED = -1


class BalanceProfile(NamedTuple):
    sizes: tuple[int, ...]
    deficient: Optional[int]

    @classmethod
    def of(cls, sizes: Sequence[int]) -> "BalanceProfile":
        sizes = tuple(sizes)
        return cls(sizes, _deficient_index(sizes))

    @property
    def is_equitable(self) -> bool:
        return not self.sizes or max(self.sizes) - min(self.sizes) <= 1

    @property
    def is_one_deficient(self) -> bool:
        return self.deficient is not None


def _deficient_index(sizes: tuple[int, ...]) -> Optional[int]:
    if not sizes:
        return None
    low = min(sizes)
    lows = [i for i, size in enumerate(sizes) if size == low]
    if len(lows) != 1:
        return None
    if len(sizes) > 1 and any(size != low + 1 for i, size in enumerate(sizes) if i != lows[0]):
        return None
    return lows[0]


class Coloring:
    """Vertex to class assignment with member sets kept in step.

    Properness is not part of the type: a fix phase holds one vertex out (``UNASSIGNED``) and
    compound moves lift a vertex out for a step.
    """

    __slots__ = ("r", "assignment", "classes")

    def __init__(self, r: int, assignment: Sequence[int]):
        if r < 1:
            raise InvalidInput("r must be at least 1")
        self.r = r
        self.assignment = list(assignment)
        self.classes: list[set[int]] = [set() for _ in range(r)]
        for v, c in enumerate(self.assignment):
            if c == UNASSIGNED:
                continue
            if not 0 <= c < r:
                raise InvalidInput(f"vertex {v} has class {c} outside [0, {r})")
            self.classes[c].add(v)

    @classmethod
    def round_robin(cls, n: int, r: int) -> "Coloring":
        return cls(r, [v % r for v in range(n)])

    @classmethod
    def uncolored(cls, n: int, r: int) -> "Coloring":
        return cls(r, [UNASSIGNED] * n)

    @property
    def n(self) -> int:
        return len(self.assignment)

    def class_of(self, v: int) -> int:
        return self.assignment[v]

    def members(self, c: int) -> list[int]:
        return sorted(self.classes[c])

    def move(self, v: int, to: Optional[int]) -> None:
        current = self.assignment[v]
        if current != UNASSIGNED:
            self.classes[current].discard(v)
        if to is None:
            self.assignment[v] = UNASSIGNED
        else:
            self.classes[to].add(v)
            self.assignment[v] = to

    def sizes(self) -> list[int]:
        return [len(members) for members in self.classes]

    def profile(self) -> BalanceProfile:
        return BalanceProfile.of(self.sizes())

    def unassigned(self) -> list[int]:
        return [v for v, c in enumerate(self.assignment) if c == UNASSIGNED]

    def relabel_view(self, deficient: int) -> list[int]:
        """Class indices ordered with ``deficient`` first, the rest ascending."""
        return [deficient, *(c for c in range(self.r) if c != deficient)]

    def to_document(self) -> "ColoringDocument":
        return ColoringDocument.from_coloring(self)

    def copy(self) -> "Coloring":
        return Coloring(self.r, self.assignment)

    def snapshot(self) -> tuple[int, ...]:
        return tuple(self.assignment)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Coloring):
            return NotImplemented
        return self.r == other.r and self.assignment == other.assignment

    def __repr__(self) -> str:
        return f"Coloring(r={self.r}, sizes={self.sizes()})"


class ColoringDocument(Document):
    r: int
    assignment: list[int]
    class_sizes: list[int]

    @classmethod
    def from_coloring(cls, coloring: Coloring) -> "ColoringDocument":
        return cls(r=coloring.r, assignment=list(coloring.assignment), class_sizes=coloring.sizes())

    def to_coloring(self) -> Coloring:
        return Coloring(self.r, self.assignment)
