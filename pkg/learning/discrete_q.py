"""
PAMDP EXPLORER - Discrete Q-Learning
====================================

Tabular Q-learning over the discrete actions and Boltzmann selection
with a dynamic inverse temperature β:

    Q(s,a) ← Q(s,a) + α_Q·(r + γ·max_a' Q(s',a') - Q(s,a))
    P(a_j | s, β) = exp(β·Q(s,a_j)) / Σ_a exp(β·Q(s,a))
"""

import logging
from dataclasses import dataclass

import numpy as np

import config
from utils.numerics import ensure_finite

logger = logging.getLogger(__name__)

PROB_TOLERANCE = 1e-9


@dataclass(frozen=True)
class QConfig:
    alpha_q: float = config.ALPHA_Q
    gamma: float = config.GAMMA

    def __post_init__(self):
        # α_Q = 0 is accepted so a learner can be frozen
        if not 0.0 <= self.alpha_q <= 1.0:
            raise ValueError(f"alpha_q must lie in [0, 1], got {self.alpha_q}")
        if not 0.0 <= self.gamma < 1.0:
            raise ValueError(f"gamma must lie in [0, 1), got {self.gamma}")


@dataclass(frozen=True)
class QTable:
    """Q_t(s, a): rows are states, columns discrete actions"""
    values: np.ndarray

    @property
    def num_states(self) -> int:
        return self.values.shape[0]

    @property
    def num_actions(self) -> int:
        return self.values.shape[1]

    def row(self, s: int) -> np.ndarray:
        return self.values[s].copy()


def new_q_table(num_states: int, num_actions: int, init_value: float = config.Q_INIT) -> QTable:
    return QTable(np.full((num_states, num_actions), float(init_value)))


def q_update(table: QTable, q_config: QConfig, s: int, a: int, r: float, s_next: int) -> QTable:
    ensure_finite("reward", r)
    values = table.values.copy()
    target = r + q_config.gamma * float(np.max(values[s_next]))
    values[s, a] += q_config.alpha_q * (target - values[s, a])
    return QTable(values)


def softmax_probs(q_row: np.ndarray, beta: float) -> np.ndarray:
    """Boltzmann distribution over one Q row; max-subtracted so large β cannot overflow"""
    q = np.asarray(q_row, dtype=float)
    if q.size == 0:
        raise ValueError("q_row must not be empty")
    if not np.isfinite(beta) or beta <= 0:
        raise ValueError(f"beta must be positive and finite, got {beta}")
    z = beta * (q - np.max(q))
    w = np.exp(z)
    return w / np.sum(w)


def sample_action(probs: np.ndarray, rng: np.random.Generator) -> int:
    """Inverse-CDF draw: exactly one uniform per call"""
    p = np.asarray(probs, dtype=float)
    if p.size == 0 or np.any(~np.isfinite(p)) or np.any(p < 0):
        raise ValueError(f"degenerate probability vector {p}")
    if abs(float(np.sum(p)) - 1.0) > PROB_TOLERANCE:
        raise ValueError(f"probabilities sum to {np.sum(p)}, expected 1")
    u = rng.random()
    idx = int(np.searchsorted(np.cumsum(p), u, side="right"))
    # u can land past a cumsum that rounds to just under 1
    return min(idx, p.size - 1)
