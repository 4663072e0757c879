"""
PAMDP EXPLORER - Meta-Learning Exploration Controller
=====================================================

Noiseless meta-learning of the two exploration knobs. Short- and
long-term reward running averages

    r̄  ← r̄  + (r  - r̄ ) / τ₁
    r̄̄ ← r̄̄ + (r̄ - r̄̄) / τ₂      (uses the r̄ just updated)

feed x = μ·(r̄ - r̄̄) into

    β = F(x) = max(f_min, f_intercept + f_slope·x)       affine, > 0
    σ = G(x) = g_max / (1 + exp(g_slope·(x - g_mid)))    falling sigmoid in (0, g_max)

A performance drop (r̄ below r̄̄) lowers β and widens σ; improvement
does the opposite.
"""

import logging
from dataclasses import dataclass, replace

import config
from utils.numerics import bounded_logistic, ensure_finite

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MetaConfig:
    tau1: float = config.META_TAU1
    tau2: float = config.META_TAU2
    mu: float = config.META_MU
    f_intercept: float = config.META_F_INTERCEPT
    f_slope: float = config.META_F_SLOPE
    f_min: float = config.META_F_MIN
    g_max: float = config.META_G_MAX
    g_slope: float = config.META_G_SLOPE
    g_mid: float = config.META_G_MID

    def __post_init__(self):
        if not 1.0 < self.tau1 < self.tau2:
            raise ValueError(f"need 1 < tau1 < tau2, got tau1={self.tau1}, tau2={self.tau2}")
        if self.mu <= 0:
            raise ValueError("mu must be positive")
        if self.f_intercept <= 0:
            raise ValueError("f_intercept must be positive")
        if self.f_min <= 0:
            raise ValueError("f_min must be positive")
        if not 0.0 < self.g_max <= 20.0:
            raise ValueError("g_max must lie in (0, 20]")
        if self.g_slope <= 0:
            raise ValueError("g_slope must be positive")


@dataclass(frozen=True)
class MetaState:
    r_bar: float
    r_bbar: float
    beta: float
    sigma: float

    @property
    def trend(self) -> float:
        """r̄ - r̄̄: positive while performance improves"""
        return self.r_bar - self.r_bbar


def update_averages(state: MetaState, meta_config: MetaConfig, r: float) -> MetaState:
    ensure_finite("reward", r)
    r_bar = state.r_bar + (r - state.r_bar) / meta_config.tau1
    r_bbar = state.r_bbar + (r_bar - state.r_bbar) / meta_config.tau2
    return replace(state, r_bar=r_bar, r_bbar=r_bbar)


def compute_beta(state: MetaState, meta_config: MetaConfig) -> float:
    x = meta_config.mu * state.trend
    return max(meta_config.f_min, meta_config.f_intercept + meta_config.f_slope * x)


def compute_sigma(state: MetaState, meta_config: MetaConfig) -> float:
    x = meta_config.mu * state.trend
    return bounded_logistic(
        x,
        upper=meta_config.g_max,
        slope=meta_config.g_slope,
        midpoint=meta_config.g_mid,
        increasing=False,
    )


def meta_step(state: MetaState, meta_config: MetaConfig, r: float) -> MetaState:
    """Averages first, then β and σ from the fresh averages"""
    updated = update_averages(state, meta_config, r)
    return replace(
        updated,
        beta=compute_beta(updated, meta_config),
        sigma=compute_sigma(updated, meta_config),
    )


def initial_meta_state(meta_config: MetaConfig) -> MetaState:
    blank = MetaState(r_bar=0.0, r_bbar=0.0, beta=meta_config.f_intercept, sigma=meta_config.g_max / 2)
    return replace(blank, beta=compute_beta(blank, meta_config), sigma=compute_sigma(blank, meta_config))
