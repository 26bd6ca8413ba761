from enum import Enum
from typing import Literal, Optional

from pydantic import BaseModel, BaseSettings, conint, validator

ONE_PLANAR_MIN_R = 13
ONE_PLANAR_MAX_LOW_DEGREE = 7


class SolverMode(str, Enum):
    ONE_PLANAR = "one-planar"
    HS = "hs"


class SearchBudget(BaseModel):
    max_pattern_attempts: int = 32
    max_fallback_depth: int = 4
    max_fallback_nodes: int = 200_000

    @validator("max_pattern_attempts", "max_fallback_depth", "max_fallback_nodes")
    def validate_positive(cls, v):
        if v <= 0:
            raise ValueError("budget values must be positive")
        return v

    def escalated(self, factor: int) -> "SearchBudget":
        return self.copy(
            update={
                "max_fallback_depth": self.max_fallback_depth * factor,
                "max_fallback_nodes": self.max_fallback_nodes * factor,
            }
        )


class SolverConfig(BaseModel):
    r: conint(ge=1)
    mode: SolverMode = SolverMode.ONE_PLANAR
    budget: SearchBudget = SearchBudget()
    seed: conint(ge=0, lt=2**64) = 0
    strict_validation: bool = True
    strict_bipartite: bool = False
    neighbor_choice: Literal["lowest", "random"] = "lowest"
    audit: bool = False
    debug_rebuild: bool = False
    max_hs_depth: int = 16

    @validator("mode", always=True)
    def validate_mode(cls, v, values):
        if v == SolverMode.ONE_PLANAR and values.get("r", ONE_PLANAR_MIN_R) < ONE_PLANAR_MIN_R:
            raise ValueError(f"one-planar mode requires r >= {ONE_PLANAR_MIN_R}")
        return v

    @property
    def max_low_degree(self) -> Optional[int]:
        """Peel bound on the low endpoint; HS mode peels without one."""
        return ONE_PLANAR_MAX_LOW_DEGREE if self.mode == SolverMode.ONE_PLANAR else None


class CliSettings(BaseSettings):
    seed: conint(ge=0, lt=2**64) = 0

    class Config:
        env_prefix = "EQUICOLOR_"


GenFamily = Literal["q3_diag", "rhombi_diag", "grid_diag", "complete", "complete_bipartite", "random_subgraph"]


class GenSpec(BaseModel):
    family: GenFamily
    rows: Optional[int] = None
    cols: Optional[int] = None
    t: Optional[int] = None
    p: Optional[int] = None
    q: Optional[int] = None
    keep: Optional[int] = None
    seed: int = 0

    @validator("seed")
    def validate_seed(cls, v):
        if not 0 <= v < 2**64:
            raise ValueError("seed must fit in 64 bits")
        return v

    @validator("keep", always=True)
    def validate_parameters(cls, v, values):
        family = values.get("family")
        rows, cols = values.get("rows"), values.get("cols")
        match family:
            case "grid_diag" | "random_subgraph":
                if rows is None or cols is None or rows < 2 or cols < 2:
                    raise ValueError(f"{family} needs rows >= 2 and cols >= 2")
                if family == "random_subgraph" and (v is None or not 0 <= v <= rows * cols):
                    raise ValueError("random_subgraph needs 0 <= keep <= rows * cols")
            case "complete":
                if values.get("t") is None or values["t"] < 0:
                    raise ValueError("complete needs t >= 0")
            case "complete_bipartite":
                if values.get("p") is None or values.get("q") is None or values["p"] < 0 or values["q"] < 0:
                    raise ValueError("complete_bipartite needs p >= 0 and q >= 0")
        return v
