"""
PAMDP EXPLORER - Report Generator
Writes run logs, aggregates and comparisons as CSV, and the run-status summary as JSON.

CSV contract: header row, one row per timestep, floats with 17 significant
digits (exact round-trip), UTF-8, LF line endings.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Mapping, Sequence, Union

import pandas as pd

import config
from core.constants import AgentKind
from core.exceptions import ReportWriteError
from core.models import AggregateSeries, RunLog, StepRecord

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

AGGREGATE_COLUMNS = ["t", "mean_engagement", "std_engagement"]


class ReportGenerator:
    """
    Serialises simulation output under one directory.
    Every write creates the directory on demand and reports the path on failure.
    """

    def __init__(self, output_dir: PathLike = config.OUTPUT_DIR):
        self.output_dir = Path(output_dir)

    def path_for(self, name: str) -> Path:
        return self.output_dir / name

    # ---------- CSV ----------

    def write_records_csv(self, log: RunLog, num_actions: int, param_dim: int, name: str = "") -> Path:
        path = self.path_for(name or f"run_{log.run_id}.csv")
        columns = StepRecord.columns(num_actions, param_dim, log.kind)
        frame = pd.DataFrame([r.to_row() for r in log.records], columns=columns)
        self._write_frame(frame, path)
        logger.debug(f"Run {log.run_id}: {len(frame)} rows → {path}")
        return path

    def write_aggregate_csv(self, series: AggregateSeries, name: str = "aggregate.csv") -> Path:
        path = self.path_for(name)
        frame = pd.DataFrame(
            {"t": series.t, "mean_engagement": series.mean, "std_engagement": series.std},
            columns=AGGREGATE_COLUMNS,
        )
        self._write_frame(frame, path)
        return path

    def write_comparison_csv(self, series_by_label: Mapping[str, AggregateSeries], name: str = "comparison.csv") -> Path:
        """One (mean, std) column pair per label, outer-joined on t"""
        if not series_by_label:
            raise ValueError("nothing to compare")
        parts = []
        for label, series in series_by_label.items():
            parts.append(
                pd.DataFrame(
                    {f"mean_{label}": series.mean, f"std_{label}": series.std},
                    index=pd.Index(series.t, name="t"),
                )
            )
        frame = pd.concat(parts, axis=1).sort_index().reset_index()
        path = self.path_for(name)
        self._write_frame(frame, path)
        return path

    def _write_frame(self, frame: pd.DataFrame, path: Path) -> None:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            frame.to_csv(
                path,
                index=False,
                float_format=config.CSV_FLOAT_FORMAT,
                lineterminator="\n",
                encoding="utf-8",
            )
        except OSError as e:
            logger.error(f"❌ CSV write failed: {path}: {e}")
            raise ReportWriteError(path, e) from e

    # ---------- JSON ----------

    def write_status_json(self, summary: Dict[str, Any], name: str = "run_status.json") -> Path:
        path = self.path_for(name)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w", encoding="utf-8", newline="\n") as f:
                json.dump(summary, f, indent=2, sort_keys=True)
                f.write("\n")
        except OSError as e:
            logger.error(f"❌ Status write failed: {path}: {e}")
            raise ReportWriteError(path, e) from e
        return path


def read_records_csv(path: PathLike) -> pd.DataFrame:
    """Load a run CSV back with exact float parsing"""
    return pd.read_csv(path, float_precision="round_trip")


def write_csv(data: Union[RunLog, AggregateSeries, Sequence[StepRecord]], path: PathLike,
              num_actions: int = config.NUM_ACTIONS, param_dim: int = config.PARAM_DIM) -> Path:
    """Single-file convenience over ReportGenerator for either record logs or aggregates"""
    target = Path(path)
    reports = ReportGenerator(target.parent)
    if isinstance(data, AggregateSeries):
        return reports.write_aggregate_csv(data, name=target.name)
    if not isinstance(data, RunLog):
        records = list(data)
        data = RunLog(run_id=records[0].run_id if records else 0, seed=0, kind=_infer_kind(records), records=records)
    return reports.write_records_csv(data, num_actions, param_dim, name=target.name)


def _infer_kind(records: Sequence[StepRecord]) -> AgentKind:
    if records and records[0].sigma_per_action is not None:
        return AgentKind.KALMAN
    if records and records[0].r_bar is not None:
        return AgentKind.META
    return AgentKind.FIXED
