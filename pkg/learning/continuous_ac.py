"""
PAMDP EXPLORER - Continuous Actor-Critic
========================================

Learns the parameter means θᵢᵃ(s) of every discrete action and explores
around them with a Gaussian of width σ.

Linear readouts over a state feature vector φ(s):
    V(s)    = ⟨ω^C, φ(s)⟩
    θᵢᵃ(s) = ⟨ω^A[a,i], φ(s)⟩   (clamped to the parameter bounds)

Updates, with δ = r + γ·V(s') - V(s):
    ω^C      += α_C·δ·φ(s)
    ω^A[a,i] += α_A·δ·(θ̃ᵢᵃ - θᵢᵃ(s))·φ(s)

The actor moves on every step, proportionally to δ; negative errors
push the mean away from the sampled parameter. No positive-δ-only gate.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

import config
from utils.numerics import ensure_finite

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ACConfig:
    alpha_c: float = config.ALPHA_C
    alpha_a: float = config.ALPHA_A
    gamma: float = config.GAMMA

    def __post_init__(self):
        if not 0.0 < self.alpha_c <= 1.0:
            raise ValueError(f"alpha_c must lie in (0, 1], got {self.alpha_c}")
        if not 0.0 < self.alpha_a <= 1.0:
            raise ValueError(f"alpha_a must lie in (0, 1], got {self.alpha_a}")
        if not 0.0 <= self.gamma < 1.0:
            raise ValueError(f"gamma must lie in [0, 1), got {self.gamma}")


@dataclass(frozen=True)
class CriticParams:
    weights: np.ndarray     # (num_features,)


@dataclass(frozen=True)
class ActorParams:
    weights: np.ndarray     # (num_actions, param_dim, num_features)

    @property
    def num_actions(self) -> int:
        return self.weights.shape[0]

    @property
    def param_dim(self) -> int:
        return self.weights.shape[1]


def one_hot(index: int, size: int) -> np.ndarray:
    phi = np.zeros(size)
    phi[index] = 1.0
    return phi


def new_critic(num_features: int) -> CriticParams:
    return CriticParams(np.zeros(num_features))


def new_actor(num_actions: int, param_dim: int, num_features: int) -> ActorParams:
    # zero weights: every mean starts at the centre of [-100, 100]
    return ActorParams(np.zeros((num_actions, param_dim, num_features)))


def _check_features(weights: np.ndarray, features: np.ndarray) -> np.ndarray:
    phi = np.asarray(features, dtype=float)
    if phi.shape != (weights.shape[-1],):
        raise ValueError(f"feature vector has shape {phi.shape}, weights expect ({weights.shape[-1]},)")
    return phi


def critic_value(critic: CriticParams, features: np.ndarray) -> float:
    phi = _check_features(critic.weights, features)
    return float(critic.weights @ phi)


def td_error(r: float, v_next: float, v_curr: float, gamma: float) -> float:
    return r + gamma * v_next - v_curr


def update_critic(critic: CriticParams, ac_config: ACConfig, delta: float, features: np.ndarray) -> CriticParams:
    ensure_finite("td error", delta)
    phi = _check_features(critic.weights, features)
    # ∂V/∂ω^C = φ for the linear readout
    return CriticParams(critic.weights + ac_config.alpha_c * delta * phi)


def actor_means(
    actor: ActorParams,
    a: int,
    features: np.ndarray,
    bounds: Tuple[float, float] = (config.PARAM_MIN, config.PARAM_MAX),
) -> np.ndarray:
    """θᵃ(s) for one action, clamped to the legal parameter range"""
    phi = _check_features(actor.weights, features)
    return np.clip(actor.weights[a] @ phi, bounds[0], bounds[1])


def update_actor(
    actor: ActorParams,
    ac_config: ACConfig,
    delta: float,
    a: int,
    theta_sampled: np.ndarray,
    theta_mean: np.ndarray,
    features: np.ndarray,
) -> ActorParams:
    ensure_finite("td error", delta)
    phi = _check_features(actor.weights, features)
    sampled = np.atleast_1d(np.asarray(theta_sampled, dtype=float))
    mean = np.atleast_1d(np.asarray(theta_mean, dtype=float))
    if sampled.shape != (actor.param_dim,) or mean.shape != (actor.param_dim,):
        raise ValueError(
            f"action {a} has {actor.param_dim} parameters; got sampled {sampled.shape}, mean {mean.shape}"
        )
    weights = actor.weights.copy()
    # ∂θᵢ/∂ω^A[a,i] = φ; only the executed action's rows move
    weights[a] += ac_config.alpha_a * delta * np.outer(sampled - mean, phi)
    return ActorParams(weights)


def sample_parameters(
    theta_mean: np.ndarray,
    sigma: float,
    bounds: Tuple[float, float],
    rng: np.random.Generator,
) -> np.ndarray:
    """θ̃ ~ Normal(θ, σ²) per component, clamped after sampling"""
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    mean = np.atleast_1d(np.asarray(theta_mean, dtype=float))
    draws = rng.normal(loc=mean, scale=sigma, size=mean.shape)
    return np.clip(draws, bounds[0], bounds[1])
