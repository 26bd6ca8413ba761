from typing import NamedTuple, Optional

from pydantic import BaseModel, Field

from equicolor.models.base import Document
from equicolor.models.coloring import BalanceProfile


class MoveTag:
    HOLDOUT = "holdout"
    INSERT = "insert"
    PATH_SHIFT = "path-shift"
    LIFT = "lift"
    FALLBACK = "fallback"

    CLAIM5_EXCHANGE = "claim5-exchange"
    CLAIM6_EXCHANGE = "claim6-exchange"
    CLAIM7_RELOCATION = "claim7-relocation"
    CLAIM7_V1_RELOCATION = "claim7-v1-relocation"
    CLAIM7_V1_COMPOUND = "claim7-v1-compound"
    CLAIM8_REVERSAL = "claim8-reversal"
    CLAIM9_PAIR = "claim9-pair"

    CASE3_V3_TO_V3 = "case3-v3-to-V3"
    CASE3_V2_TO_BI = "case3-v2-to-Bi"
    CASE3_Z1_TO_V2 = "case3-z1-to-V2"
    CASE3_Z0_TO_V2 = "case3-z0-to-V2"
    CASE4_V3_TO_V2 = "case4-v3-to-V2"
    CASE4_V2_TO_BI = "case4-v2-to-Bi"
    CASE4_Z_TO_V1 = "case4-z-to-V1"


class Move(NamedTuple):
    """One relocation. ``None`` as a class means "outside every class" (held out or lifted)."""

    vertex: int
    from_class: Optional[int]
    to_class: Optional[int]
    tag: str

    def to_record(self) -> "MoveRecord":
        return MoveRecord(vertex=self.vertex, from_=self.from_class, to=self.to_class, tag=self.tag)


class MoveTrace(NamedTuple):
    pattern: str
    moves: tuple[Move, ...]
    before: BalanceProfile
    after: BalanceProfile
    a_before: int
    a_after: int


# region Documents


class MoveRecord(BaseModel):
    vertex: int
    from_: Optional[int] = Field(None, alias="from")
    to: Optional[int]
    tag: str

    class Config:
        allow_population_by_field_name = True

    def to_move(self) -> Move:
        return Move(self.vertex, self.from_, self.to, self.tag)


class EdgeEvent(BaseModel):
    edge: tuple[int, int]
    moves: list[MoveRecord] = []


class Reduction(BaseModel):
    kind: str  # identity | pad | strip
    pad: int = 0
    stripped: list[int] = []


class TraceDocument(Document):
    r: int
    n: int
    reduction: Reduction
    events: list[EdgeEvent]
    final: list[int]


# endregion


# region Plans


class Relocate(NamedTuple):
    vertex: int
    to: Optional[int]
    tag: str


class Shift(NamedTuple):
    """Move one witness along every arc of ``path``; the first class ends up one vertex short."""

    path: tuple[int, ...]
    tag: str = MoveTag.PATH_SHIFT
    first_witness: Optional[int] = None


class Plan(NamedTuple):
    pattern: str
    steps: tuple[Relocate | Shift, ...]


# endregion
