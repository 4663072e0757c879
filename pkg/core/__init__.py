"""
PAMDP EXPLORER - Core Module
"""

from .constants import AgentKind, RunStatus, ScheduleMode
from .exceptions import (
    AgentStepError,
    InvalidActionError,
    NonFiniteValueError,
    ReportWriteError,
    SimulationError,
)
from .models import AggregateSeries, RunLog, StepRecord

__all__ = [
    "AgentKind",
    "RunStatus",
    "ScheduleMode",
    "SimulationError",
    "InvalidActionError",
    "NonFiniteValueError",
    "AgentStepError",
    "ReportWriteError",
    "StepRecord",
    "RunLog",
    "AggregateSeries",
]
