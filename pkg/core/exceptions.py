"""
PAMDP EXPLORER - Exceptions
"""

from typing import Optional


class SimulationError(Exception):
    """Base class for simulator errors"""


class InvalidActionError(SimulationError, ValueError):
    """Action tuple does not fit the environment it was sent to"""


class NonFiniteValueError(SimulationError, ValueError):
    """NaN or infinity reached a learner"""


class AgentStepError(SimulationError):
    """A component failed inside one agent step"""

    def __init__(self, timestep: int, cause: Exception):
        self.timestep = timestep
        self.cause = cause
        super().__init__(f"step t={timestep} failed: {type(cause).__name__}: {cause}")


class ReportWriteError(SimulationError):
    """Writing an output artifact failed"""

    def __init__(self, path: str, cause: Optional[Exception] = None):
        self.path = str(path)
        self.cause = cause
        super().__init__(f"cannot write {self.path}: {cause}")
