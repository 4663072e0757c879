"""
PAMDP EXPLORER - Engagement Environment
=======================================

Single-state, non-stationary engagement task. The robot picks one of k
discrete actions plus a continuous parameter; the virtual human's
engagement e(t) rises when the action is the hidden optimum a* and the
parameter lands near μ*, and decays otherwise. Every `duration`
timesteps the schedule moves to the next (a*, μ*) phase.

Engagement update (H = reengagement of the chosen parameter):
    a == a* and H >= 0 :  e + η₁·(e_max - e)·H
    a == a* and H <  0 :  e - η₂·(e_min - e)·H
    otherwise          :  e + η₂·(e_min - e)
Reward: r(t+1) = (1 - λ)·e(t+1) + λ·(e(t+1) - e(t))

All functions are pure: states go in, new states come out.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import List, Sequence, Tuple

import numpy as np

import config
from core.constants import ScheduleMode
from core.exceptions import InvalidActionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Phase:
    """One stretch of the schedule: optimal action a*, optimal parameter μ*, length n"""
    optimal_action: int
    optimal_param: float
    duration: int

    def __post_init__(self):
        if self.duration < 1:
            raise ValueError(f"phase duration must be >= 1, got {self.duration}")


@dataclass(frozen=True)
class EnvConfig:
    num_actions: int = config.NUM_ACTIONS
    param_min: float = config.PARAM_MIN
    param_max: float = config.PARAM_MAX
    param_dim: int = config.PARAM_DIM
    eta1: float = config.ETA1
    eta2: float = config.ETA2
    e_max: float = config.E_MAX
    e_min: float = config.E_MIN
    e_init: float = config.E_INIT
    sigma_star: float = config.SIGMA_STAR
    reward_lambda: float = config.REWARD_LAMBDA
    schedule: Tuple[Phase, ...] = field(default_factory=lambda: (Phase(5, -20.0, 200), Phase(1, -20.0, 400)))
    schedule_mode: ScheduleMode = ScheduleMode(config.SCHEDULE_MODE)

    def __post_init__(self):
        if self.num_actions < 1:
            raise ValueError("num_actions must be >= 1")
        if self.param_dim < 1:
            raise ValueError("param_dim must be >= 1")
        if not self.param_min < self.param_max:
            raise ValueError("need param_min < param_max")
        if not 0.0 < self.eta1 < 1.0 or not 0.0 < self.eta2 < 1.0:
            raise ValueError("eta1 and eta2 must lie in (0, 1)")
        if not self.e_min < self.e_init < self.e_max:
            raise ValueError("need e_min < e_init < e_max")
        if self.sigma_star <= 0:
            raise ValueError("sigma_star must be positive")
        if not 0.0 <= self.reward_lambda <= 1.0:
            raise ValueError("reward_lambda must lie in [0, 1]")
        if not self.schedule:
            raise ValueError("schedule must not be empty")
        # tuple() so lists from callers stay hashable / immutable
        object.__setattr__(self, "schedule", tuple(self.schedule))
        for i, phase in enumerate(self.schedule):
            if not 0 <= phase.optimal_action < self.num_actions:
                raise ValueError(
                    f"phase {i}: optimal_action {phase.optimal_action} outside 0..{self.num_actions - 1}"
                )
            if not self.param_min <= phase.optimal_param <= self.param_max:
                raise ValueError(
                    f"phase {i}: optimal_param {phase.optimal_param} outside "
                    f"[{self.param_min}, {self.param_max}]"
                )

    @property
    def bounds(self) -> Tuple[float, float]:
        return (self.param_min, self.param_max)

    @property
    def total_duration(self) -> int:
        return sum(p.duration for p in self.schedule)

    def phase_starts(self) -> List[int]:
        """Start timestep of each phase in the first pass through the schedule"""
        starts, t = [], 0
        for phase in self.schedule:
            starts.append(t)
            t += phase.duration
        return starts


@dataclass(frozen=True)
class EnvState:
    engagement: float
    timestep: int = 0
    phase_index: int = 0


@dataclass(frozen=True)
class ActionTuple:
    """(a, θ₁ᵃ, …, θ_mᵃ): discrete index plus its parameter vector"""
    action: int
    params: Tuple[float, ...]

    @classmethod
    def of(cls, action: int, params: Sequence[float]) -> "ActionTuple":
        return cls(int(action), tuple(float(p) for p in np.atleast_1d(params)))


def initial_state(env_config: EnvConfig) -> EnvState:
    return EnvState(engagement=env_config.e_init, timestep=0, phase_index=0)


def reengagement(theta: float, mu_star: float, sigma_star: float) -> float:
    """H(θ) = 2·(exp(-(θ - μ*)² / (2σ*²)) - 0.5), in (-1, 1]"""
    if sigma_star <= 0:
        raise ValueError("sigma_star must be positive")
    return 2.0 * (math.exp(-((theta - mu_star) ** 2) / (2.0 * sigma_star ** 2)) - 0.5)


def phase_index_at(timestep: int, env_config: EnvConfig) -> int:
    """
    Phase active at `timestep`. A phase of length n covers [start, start+n);
    past the end of the schedule we clamp to the last phase or wrap around.
    """
    if timestep < 0:
        raise ValueError(f"timestep must be >= 0, got {timestep}")
    total = env_config.total_duration
    if timestep >= total:
        if env_config.schedule_mode == ScheduleMode.CYCLE:
            timestep = timestep % total
        else:
            return len(env_config.schedule) - 1
    ends = np.cumsum([p.duration for p in env_config.schedule])
    return int(np.searchsorted(ends, timestep, side="right"))


def current_phase(state: EnvState, env_config: EnvConfig) -> Phase:
    return env_config.schedule[phase_index_at(state.timestep, env_config)]


def validate_action(action: ActionTuple, env_config: EnvConfig) -> None:
    if not 0 <= action.action < env_config.num_actions:
        raise InvalidActionError(
            f"action index {action.action} outside 0..{env_config.num_actions - 1}: "
            f"agent and environment disagree on the action set"
        )
    if len(action.params) != env_config.param_dim:
        raise InvalidActionError(
            f"action carries {len(action.params)} parameters, environment expects {env_config.param_dim}"
        )
    for p in action.params:
        if not env_config.param_min <= p <= env_config.param_max:
            raise InvalidActionError(
                f"parameter {p} outside [{env_config.param_min}, {env_config.param_max}]"
            )


def step(state: EnvState, env_config: EnvConfig, action: ActionTuple) -> Tuple[EnvState, float]:
    """
    Advance one timestep. The returned reward is r(t+1), built from
    e(t+1) and Δe(t+1); the agent consumes it as r_t.
    """
    validate_action(action, env_config)
    phase = current_phase(state, env_config)
    e = state.engagement

    if action.action == phase.optimal_action:
        # m_a = 1 in this task: the first parameter is the one that matters
        h = reengagement(action.params[0], phase.optimal_param, env_config.sigma_star)
        if h >= 0.0:
            e_next = e + env_config.eta1 * (env_config.e_max - e) * h
        else:
            e_next = e - env_config.eta2 * (env_config.e_min - e) * h
    else:
        e_next = e + env_config.eta2 * (env_config.e_min - e)

    # guard against round-off creeping past the bounds
    e_next = min(max(e_next, env_config.e_min), env_config.e_max)

    lam = env_config.reward_lambda
    reward = (1.0 - lam) * e_next + lam * (e_next - e)

    t_next = state.timestep + 1
    next_state = replace(
        state,
        engagement=e_next,
        timestep=t_next,
        phase_index=phase_index_at(t_next, env_config),
    )
    if next_state.phase_index != state.phase_index:
        logger.debug(f"Phase switch at t={t_next}: {state.phase_index} → {next_state.phase_index}")
    return next_state, reward


def parse_schedule(text: str) -> Tuple[Phase, ...]:
    """
    Parse `a6:-20:200,a2:-20:400` (1-based action label, optimal
    parameter, duration) into 0-based phases.
    """
    phases = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(":")
        if len(parts) != 3 or not parts[0].lower().startswith("a"):
            raise ValueError(f"bad schedule entry {chunk!r}; expected a<k>:<mu>:<duration>")
        label = int(parts[0][1:])
        if label < 1:
            raise ValueError(f"action labels start at a1, got {parts[0]!r}")
        phases.append(Phase(optimal_action=label - 1, optimal_param=float(parts[1]), duration=int(parts[2])))
    if not phases:
        raise ValueError("schedule must not be empty")
    return tuple(phases)


def format_schedule(schedule: Sequence[Phase]) -> str:
    return ",".join(f"a{p.optimal_action + 1}:{p.optimal_param:g}:{p.duration}" for p in schedule)
