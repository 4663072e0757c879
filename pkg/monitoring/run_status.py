"""
PAMDP EXPLORER - Run Status Collector
Tracks the outcome of every run in an experiment for run_status.json
"""

import logging
from typing import Any, Dict, List

from core.constants import RunStatus
from core.models import RunLog

logger = logging.getLogger(__name__)


class RunStatusCollector:
    """
    Collects per-run outcomes (seed, status, steps completed, error).
    Wall time is logged but kept out of the summary so it stays reproducible.
    """

    def __init__(self, label: str = "", total_steps: int = 0):
        self.label = label
        self.total_steps = total_steps
        self.runs: List[Dict[str, Any]] = []

    def record_run(self, log: RunLog) -> None:
        self.runs.append({
            "run_id": log.run_id,
            "seed": log.seed,
            "agent": log.kind.value,
            "status": log.status.value,
            "steps_completed": len(log.records),
            "error": log.error,
        })
        if not log.ok:
            logger.warning(f"⚠️ Run {log.run_id} (seed {log.seed}) failed: {log.error}")
        else:
            logger.debug(f"Run {log.run_id} recorded ({log.wall_time_s:.2f}s)")

    @property
    def ok_count(self) -> int:
        return sum(1 for r in self.runs if r["status"] == RunStatus.OK.value)

    @property
    def failed_count(self) -> int:
        return len(self.runs) - self.ok_count

    @property
    def all_failed(self) -> bool:
        return bool(self.runs) and self.ok_count == 0

    def summary(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "total_steps": self.total_steps,
            "num_runs": len(self.runs),
            "ok": self.ok_count,
            "failed": self.failed_count,
            "runs": sorted(self.runs, key=lambda r: r["run_id"]),
        }
