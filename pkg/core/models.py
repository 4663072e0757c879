"""
PAMDP EXPLORER - Simulation Models
Dataclasses for per-step telemetry, run logs and aggregates used across the simulator.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Any

import numpy as np

from core.constants import AgentKind, RunStatus


@dataclass(frozen=True)
class StepRecord:
    """One timestep of one run"""
    t: int
    run_id: int
    phase: int
    action: int                                   # 0-based discrete index
    params: Tuple[float, ...]                     # sampled θ̃
    theta_means: Tuple[Tuple[float, ...], ...]    # learned θ per action, after the update
    engagement: float                             # e(t+1)
    reward: float                                 # r(t+1)
    beta: float                                   # β_t used for selection
    sigma: float                                  # σ_t used for the executed action
    q_values: Tuple[float, ...]                   # Q (or Q̂) row after the update
    probs: Tuple[float, ...]                      # softmax selection probabilities at step t
    sigma_per_action: Optional[Tuple[float, ...]] = None   # kalman
    cov_diag: Optional[Tuple[float, ...]] = None           # kalman
    r_bar: Optional[float] = None                          # meta
    r_bbar: Optional[float] = None                         # meta

    @staticmethod
    def columns(num_actions: int, param_dim: int, kind: Optional[AgentKind] = None) -> List[str]:
        """Stable CSV schema for one agent kind"""
        cols = ["t", "run_id", "phase", "action"]
        cols += [f"param_{i}" for i in range(param_dim)]
        cols += ["engagement", "reward", "beta", "sigma"]
        cols += [f"theta_a{a}_{i}" for a in range(num_actions) for i in range(param_dim)]
        cols += [f"q_a{a}" for a in range(num_actions)]
        cols += [f"prob_a{a}" for a in range(num_actions)]
        if kind == AgentKind.KALMAN:
            cols += [f"sigma_a{a}" for a in range(num_actions)]
            cols += [f"cov_a{a}" for a in range(num_actions)]
        if kind == AgentKind.META:
            cols += ["r_bar", "r_bbar"]
        return cols

    def to_row(self) -> Dict[str, Any]:
        row: Dict[str, Any] = {
            "t": self.t,
            "run_id": self.run_id,
            "phase": self.phase,
            "action": self.action,
        }
        for i, p in enumerate(self.params):
            row[f"param_{i}"] = p
        row["engagement"] = self.engagement
        row["reward"] = self.reward
        row["beta"] = self.beta
        row["sigma"] = self.sigma
        for a, means in enumerate(self.theta_means):
            for i, m in enumerate(means):
                row[f"theta_a{a}_{i}"] = m
        for a, q in enumerate(self.q_values):
            row[f"q_a{a}"] = q
        for a, p in enumerate(self.probs):
            row[f"prob_a{a}"] = p
        if self.sigma_per_action is not None:
            for a, s in enumerate(self.sigma_per_action):
                row[f"sigma_a{a}"] = s
        if self.cov_diag is not None:
            for a, c in enumerate(self.cov_diag):
                row[f"cov_a{a}"] = c
        if self.r_bar is not None:
            row["r_bar"] = self.r_bar
            row["r_bbar"] = self.r_bbar
        return row


@dataclass
class RunLog:
    """Everything one seeded run produced"""
    run_id: int
    seed: int
    kind: AgentKind
    records: List[StepRecord] = field(default_factory=list)
    status: RunStatus = RunStatus.OK
    error: Optional[str] = None
    wall_time_s: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status == RunStatus.OK

    def series(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.records], dtype=float)

    @property
    def engagement(self) -> np.ndarray:
        return self.series("engagement")


@dataclass(frozen=True)
class AggregateSeries:
    """Per-timestep engagement statistics across runs"""
    t: np.ndarray
    mean: np.ndarray
    std: np.ndarray
    num_runs: int
    label: str = ""

    def __len__(self) -> int:
        return len(self.t)
