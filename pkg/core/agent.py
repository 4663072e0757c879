"""
PAMDP EXPLORER - Parameterized Agent
====================================

Composes the discrete Q-learner, the continuous actor-critic and one
exploration controller into the active-exploration loop. One call to
`agent_step` is one pass through the loop body, in this order:

    1. discrete action  ← softmax(Q(s,·) [+ Kalman bonus], β_t)
    2. parameters       ← Gaussian(θᵃ(s), σ_t [or σ_tᵃ])
    3. environment transition → e(t+1), r
    4. Q-learning update (skipped for Kalman: Q̂ is the Q source)
    5. critic and actor updates from one TD error
    6. controller update (meta: averages → β, σ; kalman: filter step)
    7. StepRecord

β_t and σ_t used at step t are the values left by step t-1.
Per step the RNG is consumed exactly once for the action (one uniform)
and once for the parameters (one normal call of size param_dim).
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

import config
from core.constants import AgentKind, SINGLE_STATE
from core.engagement_env import ActionTuple, EnvConfig, EnvState
from core import engagement_env
from core.exceptions import AgentStepError
from core.models import StepRecord
from learning.discrete_q import QConfig, QTable, new_q_table, q_update, sample_action, softmax_probs
from learning.continuous_ac import (
    ACConfig,
    ActorParams,
    CriticParams,
    actor_means,
    critic_value,
    new_actor,
    new_critic,
    one_hot,
    sample_parameters,
    td_error,
    update_actor,
    update_critic,
)
from exploration.meta_explorer import MetaConfig, MetaState, initial_meta_state, meta_step
from exploration.kalman_ql import (
    KalmanConfig,
    KalmanState,
    action_sigma,
    bonused_q_row,
    covariance_diagonal,
    kalman_step,
    new_kalman_state,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AgentConfig:
    """Agent variant plus every learner/controller setting"""
    kind: AgentKind = AgentKind.FIXED
    fixed_beta: float = config.FIXED_BETA
    fixed_sigma: float = config.FIXED_SIGMA
    q: QConfig = field(default_factory=QConfig)
    ac: ACConfig = field(default_factory=ACConfig)
    meta: MetaConfig = field(default_factory=MetaConfig)
    kalman: Optional[KalmanConfig] = field(default_factory=KalmanConfig)
    num_states: int = 1

    def __post_init__(self):
        object.__setattr__(self, "kind", AgentKind(self.kind))
        if self.fixed_beta <= 0:
            raise ValueError("fixed_beta must be positive")
        if self.fixed_sigma <= 0:
            raise ValueError("fixed_sigma must be positive")
        if self.num_states < 1:
            raise ValueError("num_states must be >= 1")


@dataclass
class AgentState:
    q_table: QTable
    critic: CriticParams
    actor: ActorParams
    rng: np.random.Generator
    meta: Optional[MetaState] = None
    kalman: Optional[KalmanState] = None
    state_index: int = SINGLE_STATE


def new_agent(agent_config: AgentConfig, env_config: EnvConfig, seed: int) -> AgentState:
    """Fresh agent: zero weights, zero Q, β₀ / σ₀ from the controller"""
    k = env_config.num_actions
    meta = initial_meta_state(agent_config.meta) if agent_config.kind == AgentKind.META else None
    kalman = None
    if agent_config.kind == AgentKind.KALMAN:
        kalman = new_kalman_state(agent_config.num_states, k, agent_config.kalman or KalmanConfig())
    return AgentState(
        q_table=new_q_table(agent_config.num_states, k),
        critic=new_critic(agent_config.num_states),
        actor=new_actor(k, env_config.param_dim, agent_config.num_states),
        rng=np.random.default_rng(seed),
        meta=meta,
        kalman=kalman,
    )


def _kalman_config(agent_config: AgentConfig) -> KalmanConfig:
    return agent_config.kalman or KalmanConfig()


def selection_q_row(agent: AgentState, agent_config: AgentConfig) -> np.ndarray:
    s = agent.state_index
    if agent_config.kind == AgentKind.KALMAN:
        return bonused_q_row(agent.kalman, _kalman_config(agent_config), s)
    return agent.q_table.row(s)


def current_exploration(agent: AgentState, agent_config: AgentConfig, num_actions: int) -> Tuple[float, np.ndarray]:
    """(β, σ per action) the next selection will use"""
    if agent_config.kind == AgentKind.META:
        return agent.meta.beta, np.full(num_actions, agent.meta.sigma)
    if agent_config.kind == AgentKind.KALMAN:
        kcfg = _kalman_config(agent_config)
        sigmas = np.array([action_sigma(agent.kalman, kcfg, agent.state_index, a) for a in range(num_actions)])
        return agent_config.fixed_beta, sigmas
    return agent_config.fixed_beta, np.full(num_actions, agent_config.fixed_sigma)


def agent_step(
    agent: AgentState,
    env_state: EnvState,
    agent_config: AgentConfig,
    env_config: EnvConfig,
    run_id: int = 0,
) -> Tuple[AgentState, EnvState, StepRecord]:
    try:
        return _agent_step(agent, env_state, agent_config, env_config, run_id)
    except AgentStepError:
        raise
    except Exception as e:
        raise AgentStepError(env_state.timestep, e) from e


def _agent_step(
    agent: AgentState,
    env_state: EnvState,
    agent_config: AgentConfig,
    env_config: EnvConfig,
    run_id: int,
) -> Tuple[AgentState, EnvState, StepRecord]:
    s = agent.state_index
    phi = one_hot(s, agent_config.num_states)
    k = env_config.num_actions
    phase = env_state.phase_index

    # 1. discrete action
    beta, sigmas = current_exploration(agent, agent_config, k)
    probs = softmax_probs(selection_q_row(agent, agent_config), beta)
    a = sample_action(probs, agent.rng)

    # 2. action parameters
    sigma = float(sigmas[a])
    theta_mean = actor_means(agent.actor, a, phi, env_config.bounds)
    theta_sampled = sample_parameters(theta_mean, sigma, env_config.bounds, agent.rng)

    # 3. transition
    next_env, r = engagement_env.step(env_state, env_config, ActionTuple.of(a, theta_sampled))
    s_next = s  # single-state task

    # 4. discrete Q-learning
    q_table = agent.q_table
    if agent_config.kind != AgentKind.KALMAN:
        q_table = q_update(q_table, agent_config.q, s, a, r, s_next)

    # 5. continuous actor-critic, one δ for both
    phi_next = one_hot(s_next, agent_config.num_states)
    delta = td_error(r, critic_value(agent.critic, phi_next), critic_value(agent.critic, phi), agent_config.ac.gamma)
    critic = update_critic(agent.critic, agent_config.ac, delta, phi)
    actor = update_actor(agent.actor, agent_config.ac, delta, a, theta_sampled, theta_mean, phi)

    # 6. exploration controller
    meta, kalman = agent.meta, agent.kalman
    if agent_config.kind == AgentKind.META:
        meta = meta_step(meta, agent_config.meta, r)
    elif agent_config.kind == AgentKind.KALMAN:
        kalman = kalman_step(kalman, _kalman_config(agent_config), s, a, r, s_next)

    new_agent_state = replace(agent, q_table=q_table, critic=critic, actor=actor, meta=meta, kalman=kalman)

    # 7. telemetry
    theta_means = tuple(
        tuple(float(v) for v in actor_means(actor, j, phi, env_config.bounds)) for j in range(k)
    )
    if agent_config.kind == AgentKind.KALMAN:
        q_values = tuple(float(v) for v in kalman.q_row(s))
    else:
        q_values = tuple(float(v) for v in q_table.row(s))

    record = StepRecord(
        t=env_state.timestep,
        run_id=run_id,
        phase=phase,
        action=a,
        params=tuple(float(v) for v in theta_sampled),
        theta_means=theta_means,
        engagement=next_env.engagement,
        reward=r,
        beta=float(beta),
        sigma=sigma,
        q_values=q_values,
        probs=tuple(float(p) for p in probs),
        sigma_per_action=tuple(float(v) for v in sigmas) if agent_config.kind == AgentKind.KALMAN else None,
        cov_diag=tuple(float(v) for v in covariance_diagonal(kalman, s)) if kalman is not None else None,
        r_bar=meta.r_bar if meta is not None else None,
        r_bbar=meta.r_bbar if meta is not None else None,
    )
    return new_agent_state, next_env, record
