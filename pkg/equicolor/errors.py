from typing import Any, Optional


class EquicolorError(Exception):
    """Base class for every error the solver raises on purpose."""

    exit_code = 1


class InvalidInput(EquicolorError):
    exit_code = 2


class GraphFormatError(InvalidInput):
    def __init__(self, message: str, line_number: Optional[int] = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class MissingElementError(InvalidInput):
    pass


class OracleCapExceeded(InvalidInput):
    pass


class PartialAssignmentError(InvalidInput):
    def __init__(self, vertex: int):
        super().__init__(f"vertex {vertex} has no class")
        self.vertex = vertex


class ProfileViolation(EquicolorError):
    pass


class ExtensionStuck(EquicolorError):
    def __init__(self, vertex: int):
        super().__init__(f"no admissible class for vertex {vertex}")
        self.vertex = vertex


class IllegalMove(EquicolorError):
    def __init__(self, message: str, move: Any = None):
        super().__init__(message)
        self.move = move


class StaleWitness(IllegalMove):
    def __init__(self, arc: tuple[int, int]):
        super().__init__(f"arc {arc[0]}->{arc[1]} has no live witness", move=None)
        self.arc = arc


class NoAdmissibleClass(EquicolorError):
    pass


class HypothesisViolated(EquicolorError):
    pass


class ImprovementNotFound(EquicolorError):
    exit_code = 3

    def __init__(self, message: str, dump: Optional[dict] = None):
        super().__init__(message)
        self.dump = dump or {}


class OracleInfeasible(EquicolorError):
    exit_code = 4
