"""
Builders for records, run logs and small experiments used across tests.
"""

from pathlib import Path
from typing import Any, Dict, Optional, Sequence

from core.constants import AgentKind
from core.models import RunLog, StepRecord
from simulation.experiment_config import ExperimentConfig, build_experiment


def make_record(
    t: int,
    engagement: float,
    run_id: int = 0,
    phase: int = 0,
    sigma: float = 20.0,
    num_actions: int = 2,
    **extra: Any,
) -> StepRecord:
    fields: Dict[str, Any] = dict(
        t=t,
        run_id=run_id,
        phase=phase,
        action=0,
        params=(0.0,),
        theta_means=tuple((0.0,) for _ in range(num_actions)),
        engagement=engagement,
        reward=0.0,
        beta=4.0,
        sigma=sigma,
        q_values=tuple(0.0 for _ in range(num_actions)),
        probs=tuple(1.0 / num_actions for _ in range(num_actions)),
    )
    fields.update(extra)
    return StepRecord(**fields)


def make_log(
    engagement: Sequence[float],
    run_id: int = 0,
    phases: Optional[Sequence[int]] = None,
    sigmas: Optional[Sequence[float]] = None,
    kind: AgentKind = AgentKind.FIXED,
    seed: Optional[int] = None,
    **extra: Any,
) -> RunLog:
    phases = phases if phases is not None else [0] * len(engagement)
    sigmas = sigmas if sigmas is not None else [20.0] * len(engagement)
    records = [
        make_record(t, float(e), run_id=run_id, phase=int(p), sigma=float(s), **extra)
        for t, (e, p, s) in enumerate(zip(engagement, phases, sigmas))
    ]
    return RunLog(run_id=run_id, seed=run_id if seed is None else seed, kind=kind, records=records)


def make_experiment(tmp_path: Path, **values: Any) -> ExperimentConfig:
    """build_experiment with small, fast defaults; keyword names are config keys"""
    merged: Dict[str, Any] = {
        "RUN_AGENT": "fixed",
        "RUN_TOTAL_STEPS": 60,
        "RUN_NUM_RUNS": 2,
        "RUN_BASE_SEED": 7,
        "RUN_OUTPUT_DIR": str(tmp_path / "out"),
        "RUN_WORKERS": 2,
        "ENV_SCHEDULE": "a6:-20:30,a2:-20:30",
    }
    merged.update(values)
    return build_experiment(merged)
