from .base import Document  # noqa: F401
from .coloring import UNASSIGNED, BalanceProfile, Coloring, ColoringDocument  # noqa: F401
from .config import CliSettings, GenSpec, SearchBudget, SolverConfig, SolverMode  # noqa: F401
from .graph import Bipartition, DegeneracyResult, Graph, complete_graph  # noqa: F401
from .trace import Move, MoveTag, MoveTrace, Plan, Relocate, Shift, TraceDocument  # noqa: F401
