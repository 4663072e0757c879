"""
PAMDP EXPLORER - Experiment Configuration
=========================================

Presets are dotenv files (KEY=value, `#` comments) grouped into sections
by key prefix:

    RUN_*     run count, steps, seed, output, plots, agent kind
    ENV_*     engagement task and phase schedule
    LEARN_* / Q_* / AC_*   learners
    FIXED_* / META_* / KALMAN_*   exploration controllers

Precedence: config.py defaults < preset file < explicit overrides (CLI).
"""

import logging
from enum import Enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, Optional, Tuple

from dotenv import dotenv_values

import config
from config import ConfigValidator
from core.agent import AgentConfig
from core.constants import AgentKind, ScheduleMode
from core.engagement_env import EnvConfig, parse_schedule
from exploration.kalman_ql import KalmanConfig
from exploration.meta_explorer import MetaConfig
from learning.continuous_ac import ACConfig
from learning.discrete_q import QConfig

logger = logging.getLogger(__name__)


def _to_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off", ""):
        return False
    raise ValueError(f"not a boolean: {value!r}")


# key → (section, field name, caster)
KEYS: Dict[str, Tuple[str, str, Callable[[Any], Any]]] = {
    # Run
    "RUN_AGENT": ("run", "kind", AgentKind.from_string),
    "RUN_LABEL": ("run", "label", str),
    "RUN_TOTAL_STEPS": ("run", "total_steps", int),
    "RUN_NUM_RUNS": ("run", "num_runs", int),
    "RUN_BASE_SEED": ("run", "base_seed", int),
    "RUN_OUTPUT_DIR": ("run", "output_dir", Path),
    "RUN_EMIT_PLOTS": ("run", "emit_plots", _to_bool),
    "RUN_WORKERS": ("run", "workers", int),
    # Environment
    "ENV_NUM_ACTIONS": ("env", "num_actions", int),
    "ENV_PARAM_MIN": ("env", "param_min", float),
    "ENV_PARAM_MAX": ("env", "param_max", float),
    "ENV_PARAM_DIM": ("env", "param_dim", int),
    "ENV_ETA1": ("env", "eta1", float),
    "ENV_ETA2": ("env", "eta2", float),
    "ENV_E_MAX": ("env", "e_max", float),
    "ENV_E_MIN": ("env", "e_min", float),
    "ENV_E_INIT": ("env", "e_init", float),
    "ENV_SIGMA_STAR": ("env", "sigma_star", float),
    "ENV_LAMBDA": ("env", "reward_lambda", float),
    "ENV_SCHEDULE": ("env", "schedule", parse_schedule),
    "ENV_SCHEDULE_MODE": ("env", "schedule_mode", ScheduleMode.from_string),
    # Learners
    "LEARN_GAMMA": ("learn", "gamma", float),
    "Q_ALPHA": ("q", "alpha_q", float),
    "AC_ALPHA_CRITIC": ("ac", "alpha_c", float),
    "AC_ALPHA_ACTOR": ("ac", "alpha_a", float),
    # Fixed baseline
    "FIXED_BETA": ("agent", "fixed_beta", float),
    "FIXED_SIGMA": ("agent", "fixed_sigma", float),
    # Meta-learning
    "META_TAU1": ("meta", "tau1", float),
    "META_TAU2": ("meta", "tau2", float),
    "META_MU": ("meta", "mu", float),
    "META_F_INTERCEPT": ("meta", "f_intercept", float),
    "META_F_SLOPE": ("meta", "f_slope", float),
    "META_F_MIN": ("meta", "f_min", float),
    "META_G_MAX": ("meta", "g_max", float),
    "META_G_SLOPE": ("meta", "g_slope", float),
    "META_G_MID": ("meta", "g_mid", float),
    # Kalman
    "KALMAN_PROCESS_NOISE": ("kalman", "process_noise", float),
    "KALMAN_OBS_NOISE": ("kalman", "obs_noise", float),
    "KALMAN_PRIOR_VAR": ("kalman", "prior_var", float),
    "KALMAN_ETA": ("kalman", "eta", float),
    "KALMAN_SIGMA_MAX": ("kalman", "sigma_max", float),
    "KALMAN_SIGMA_SLOPE": ("kalman", "sigma_slope", float),
    "KALMAN_SIGMA_MID": ("kalman", "sigma_mid", float),
}


@dataclass(frozen=True)
class ExperimentConfig:
    env: EnvConfig = field(default_factory=EnvConfig)
    agent: AgentConfig = field(default_factory=AgentConfig)
    total_steps: int = config.TOTAL_STEPS
    num_runs: int = config.NUM_RUNS
    base_seed: int = config.BASE_SEED
    output_dir: Path = Path(config.OUTPUT_DIR)
    emit_plots: bool = config.EMIT_PLOTS
    workers: int = config.MAX_WORKERS
    label: str = ""
    source: Optional[str] = None

    @property
    def kind(self) -> AgentKind:
        return self.agent.kind

    @property
    def display_label(self) -> str:
        return self.label or self.agent.kind.value

    def seed_for(self, run_id: int) -> int:
        return self.base_seed + run_id


def build_experiment(values: Mapping[str, Any], source: Optional[str] = None) -> ExperimentConfig:
    """Assemble an ExperimentConfig from already-merged KEY → value pairs"""
    sections: Dict[str, Dict[str, Any]] = {
        "run": {}, "env": {}, "learn": {}, "q": {}, "ac": {}, "agent": {}, "meta": {}, "kalman": {}
    }
    for key, raw in values.items():
        if key not in KEYS:
            raise ValueError(f"unknown config key {key!r}" + (f" in {source}" if source else ""))
        if raw is None or (isinstance(raw, str) and raw.strip() == ""):
            continue
        section, name, cast = KEYS[key]
        try:
            sections[section][name] = cast(raw) if isinstance(raw, str) else _cast_typed(cast, raw)
        except ValueError as e:
            raise ValueError(f"{key}={raw!r}: {e}") from e

    gamma = sections["learn"].get("gamma", config.GAMMA)
    run = sections["run"]
    kind = run.pop("kind", AgentKind.FIXED)

    env = EnvConfig(**sections["env"])
    agent = AgentConfig(
        kind=kind,
        q=QConfig(gamma=gamma, **sections["q"]),
        ac=ACConfig(gamma=gamma, **sections["ac"]),
        meta=MetaConfig(**sections["meta"]),
        kalman=KalmanConfig(gamma=gamma, **sections["kalman"]),
        **sections["agent"],
    )
    experiment = ExperimentConfig(env=env, agent=agent, source=source, **run)
    ConfigValidator.validate_all(experiment)
    return experiment


def _cast_typed(cast: Callable[[Any], Any], raw: Any) -> Any:
    # CLI overrides arrive already typed; enums and parsed schedules pass through
    if isinstance(raw, (Enum, tuple)):
        return raw
    return cast(raw)


def load_experiment(path: Optional[str] = None, overrides: Optional[Mapping[str, Any]] = None) -> ExperimentConfig:
    """Read a preset file (optional) and apply overrides on top"""
    values: Dict[str, Any] = {}
    if path is not None:
        preset = Path(path)
        if not preset.is_file():
            raise FileNotFoundError(f"config file not found: {preset}")
        values.update({k: v for k, v in dotenv_values(preset).items()})
        logger.debug(f"Loaded {len(values)} keys from {preset}")
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    return build_experiment(values, source=str(path) if path else None)
