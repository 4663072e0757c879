"""
PAMDP EXPLORER - Core Constants
"""

from enum import Enum
from typing import List


class AgentKind(str, Enum):
    """Exploration regime driving β and σ"""
    FIXED = "fixed"
    META = "meta"
    KALMAN = "kalman"

    @property
    def emoji(self) -> str:
        return {
            "fixed": "📌",
            "meta": "🧠",
            "kalman": "📡",
        }[self.value]

    @classmethod
    def list(cls) -> List[str]:
        return [kind.value for kind in cls]

    @classmethod
    def from_string(cls, value: str) -> "AgentKind":
        for kind in cls:
            if kind.value == value.strip().lower():
                return kind
        raise ValueError(f"unknown agent kind {value!r}; choose from {cls.list()}")


class ScheduleMode(str, Enum):
    """What happens once the phase schedule is exhausted"""
    CLAMP = "clamp"    # stay in the last phase
    CYCLE = "cycle"    # start over from the first phase

    @classmethod
    def from_string(cls, value: str) -> "ScheduleMode":
        for mode in cls:
            if mode.value == value.strip().lower():
                return mode
        raise ValueError(f"unknown schedule mode {value!r}; choose from {[m.value for m in cls]}")


class RunStatus(str, Enum):
    OK = "ok"
    FAILED = "failed"


# The engagement task has a single state
SINGLE_STATE = 0
