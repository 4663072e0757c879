"""
PAMDP EXPLORER - Kalman Q-Learning Exploration Controller
=========================================================

Q-values of every (state, action) cell are tracked by a linear Kalman
filter. The bootstrapped target y = r + γ·max Q̂(s',·) is a noisy
direct observation of cell (s,a) with variance R:

    predict   COV ← COV + q·I
    gain      K   = COV·h / (hᵀ·COV·h + R)            h = one-hot(s,a)
    update    Q̂  ← Q̂ + K·(y - Q̂(s,a))
              COV ← (I - K·hᵀ)·COV, re-symmetrised

The diagonal of COV is the per-action uncertainty. It becomes an
exploration bonus b = η·COV[c,c] on the softmax inputs, and sets an
action-specific Gaussian width through a rising sigmoid: the more
uncertain the action, the wider its parameter exploration.
"""

import logging
from dataclasses import dataclass

import numpy as np

import config
from utils.numerics import bounded_logistic, ensure_finite, ensure_finite_array

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KalmanConfig:
    process_noise: float = config.KALMAN_PROCESS_NOISE
    obs_noise: float = config.KALMAN_OBS_NOISE
    prior_var: float = config.KALMAN_PRIOR_VAR
    eta: float = config.KALMAN_ETA
    gamma: float = config.GAMMA
    sigma_max: float = config.META_G_MAX
    sigma_slope: float = config.KALMAN_SIGMA_SLOPE
    sigma_mid: float = config.KALMAN_SIGMA_MID

    def __post_init__(self):
        if self.process_noise < 0:
            raise ValueError("process_noise must be >= 0")
        if self.obs_noise <= 0:
            raise ValueError("obs_noise must be positive")
        if self.prior_var <= 0:
            raise ValueError("prior_var must be positive")
        if self.eta < 0:
            raise ValueError("eta must be >= 0")
        if not 0.0 <= self.gamma < 1.0:
            raise ValueError("gamma must lie in [0, 1)")
        if not 0.0 < self.sigma_max <= 20.0:
            raise ValueError("sigma_max must lie in (0, 20]")
        if self.sigma_slope <= 0:
            raise ValueError("sigma_slope must be positive")


@dataclass(frozen=True)
class KalmanState:
    q_mean: np.ndarray      # (num_states * num_actions,)
    cov: np.ndarray         # (cells, cells)
    num_actions: int

    def cell(self, s: int, a: int) -> int:
        return s * self.num_actions + a

    def q_row(self, s: int) -> np.ndarray:
        start = s * self.num_actions
        return self.q_mean[start:start + self.num_actions].copy()


def new_kalman_state(num_states: int, num_actions: int, kalman_config: KalmanConfig) -> KalmanState:
    cells = num_states * num_actions
    return KalmanState(
        q_mean=np.zeros(cells),
        cov=np.eye(cells) * kalman_config.prior_var,
        num_actions=num_actions,
    )


def kalman_step(
    state: KalmanState,
    kalman_config: KalmanConfig,
    s: int,
    a: int,
    r: float,
    s_next: int,
) -> KalmanState:
    ensure_finite("reward", r)
    ensure_finite_array("Q mean", state.q_mean)
    c = state.cell(s, a)

    cov = state.cov + kalman_config.process_noise * np.eye(state.cov.shape[0])

    y = r + kalman_config.gamma * float(np.max(state.q_row(s_next)))
    innovation_var = cov[c, c] + kalman_config.obs_noise
    gain = cov[:, c] / innovation_var

    q_mean = state.q_mean + gain * (y - state.q_mean[c])
    cov = cov - np.outer(gain, cov[c, :])
    cov = 0.5 * (cov + cov.T)

    return KalmanState(q_mean=q_mean, cov=cov, num_actions=state.num_actions)


def covariance_diagonal(state: KalmanState, s: int = 0) -> np.ndarray:
    start = s * state.num_actions
    return np.diag(state.cov)[start:start + state.num_actions].copy()


def exploration_bonus(state: KalmanState, kalman_config: KalmanConfig, s: int, a: int) -> float:
    c = state.cell(s, a)
    return kalman_config.eta * max(float(state.cov[c, c]), 0.0)


def bonused_q_row(state: KalmanState, kalman_config: KalmanConfig, s: int) -> np.ndarray:
    """Q̂(s,·) + b(s,·): the softmax input for this controller"""
    bonus = np.array([exploration_bonus(state, kalman_config, s, a) for a in range(state.num_actions)])
    return state.q_row(s) + bonus


def action_sigma(state: KalmanState, kalman_config: KalmanConfig, s: int, a: int) -> float:
    c = state.cell(s, a)
    return bounded_logistic(
        float(state.cov[c, c]),
        upper=kalman_config.sigma_max,
        slope=kalman_config.sigma_slope,
        midpoint=kalman_config.sigma_mid,
        increasing=True,
    )
