"""
PAMDP EXPLORER - Scenario Checks
================================

Quantitative checks of the behaviour each shipped scenario is meant to
show. Every check is evaluated per seed; a scenario passes when at least
CHECK_PASS_RATIO of its seeds hold.

    wide_sigma_ceiling   fixed σ=20: steady-state window means stay below 7.5
    narrow_sigma_stuck   fixed σ=10: reaches 9.5 in phase one, then not
                         within 600 steps of a switch to a distant optimum
    meta_recovery        meta-learning: every later phase peaks ≥ 9.0 and
                         σ rises ≥ 2.0 within 200 steps of each switch
    fixed_plateau        tuned fixed σ: every phase plateau inside [5, 7]
    kalman_decay         Kalman: final phase peaks ≥ 1.0 lower than the
                         first, covariance diagonals never increase

Phase segments are read from the `phase` column of the records, so the
checks follow whatever schedule the run actually saw.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

import config
from core.constants import AgentKind, ScheduleMode
from core.models import RunLog
from utils.numerics import rolling_mean

logger = logging.getLogger(__name__)

Segment = Tuple[int, int]


# ---------- series metrics ----------

def window_means(engagement: Sequence[float], window: int = config.CHECK_WINDOW) -> np.ndarray:
    return rolling_mean(engagement, window)


def phase_segments(phases: Sequence[int]) -> List[Segment]:
    """[start, stop) index ranges of consecutive equal phase labels"""
    arr = np.asarray(phases)
    if arr.size == 0:
        return []
    cuts = np.flatnonzero(np.diff(arr)) + 1
    starts = np.concatenate(([0], cuts))
    stops = np.concatenate((cuts, [arr.size]))
    return [(int(a), int(b)) for a, b in zip(starts, stops)]


def switch_points(segments: Sequence[Segment]) -> List[int]:
    return [start for start, _ in segments[1:]]


def steady_state_max(
    engagement: Sequence[float],
    segments: Sequence[Segment],
    settle: int = config.CHECK_SETTLE,
    window: int = config.CHECK_WINDOW,
) -> float:
    """Largest window mean once each phase is `settle` steps old (nan if no full window)"""
    arr = np.asarray(engagement, dtype=float)
    best = -np.inf
    for start, stop in segments:
        means = window_means(arr[start + settle:stop], window)
        if means.size:
            best = max(best, float(means.max()))
    return best if np.isfinite(best) else float("nan")


def reaches_level(engagement: Sequence[float], start: int, stop: int, level: float) -> bool:
    return bool(np.any(np.asarray(engagement, dtype=float)[start:stop] >= level))


def phase_max_window_means(
    engagement: Sequence[float],
    segments: Sequence[Segment],
    window: int = config.CHECK_WINDOW,
) -> List[float]:
    arr = np.asarray(engagement, dtype=float)
    maxima = []
    for start, stop in segments:
        means = window_means(arr[start:stop], window)
        maxima.append(float(means.max()) if means.size else float("nan"))
    return maxima


def sigma_transients(
    sigma: Sequence[float],
    switches: Sequence[int],
    horizon: int = config.RECOVERY_SIGMA_HORIZON,
) -> List[float]:
    """
    Rise of σ above its level at each switch, over the next `horizon` steps.
    σ recorded at the switch step was set by the last pre-switch reward.
    """
    arr = np.asarray(sigma, dtype=float)
    rises = []
    for s in switches:
        after = arr[s + 1:s + 1 + horizon]
        rises.append(float(after.max() - arr[s]) if after.size else float("nan"))
    return rises


def phase_plateaus(
    engagement: Sequence[float],
    segments: Sequence[Segment],
    tail: int = config.PLATEAU_TAIL,
) -> List[float]:
    """Mean of the last `tail` steps of each phase"""
    arr = np.asarray(engagement, dtype=float)
    return [float(arr[max(start, stop - tail):stop].mean()) for start, stop in segments]


def covariance_non_increasing(cov_diag: np.ndarray, tolerance: float = 1e-12) -> bool:
    if len(cov_diag) < 2:
        return True
    return bool(np.all(np.diff(cov_diag, axis=0) <= tolerance))


# ---------- per-run claims ----------

def _segments_of(log: RunLog) -> List[Segment]:
    return phase_segments([r.phase for r in log.records])


def _check_ceiling(log: RunLog) -> Tuple[bool, Dict[str, Any]]:
    peak = steady_state_max(log.engagement, _segments_of(log))
    return bool(peak < config.CEILING_LEVEL), {"steady_state_max": peak}


def _check_stuck(log: RunLog) -> Tuple[bool, Dict[str, Any]]:
    segments = _segments_of(log)
    e = log.engagement
    first_start, first_stop = segments[0]
    reached_first = reaches_level(e, first_start, first_stop, config.STUCK_TARGET)
    if len(segments) < 2:
        return False, {"reached_first": reached_first, "reached_after_switch": None}
    switch = segments[1][0]
    reached_after = reaches_level(e, switch, switch + config.STUCK_POST_SWITCH_STEPS, config.STUCK_TARGET)
    return reached_first and not reached_after, {
        "reached_first": reached_first,
        "reached_after_switch": reached_after,
    }


def _check_recovery(log: RunLog) -> Tuple[bool, Dict[str, Any]]:
    segments = _segments_of(log)
    maxima = phase_max_window_means(log.engagement, segments)
    rises = sigma_transients(log.series("sigma"), switch_points(segments))
    later = maxima[1:]
    ok = (
        len(segments) > 1
        and all(m >= config.RECOVERY_TARGET for m in later)
        and all(r >= config.RECOVERY_SIGMA_RISE for r in rises)
    )
    return ok, {"phase_maxima": maxima, "sigma_rises": rises}


def _check_plateau(log: RunLog) -> Tuple[bool, Dict[str, Any]]:
    plateaus = phase_plateaus(log.engagement, _segments_of(log))
    low, high = config.PLATEAU_RANGE
    return all(low <= p <= high for p in plateaus), {"plateaus": plateaus}


def _check_decay(log: RunLog) -> Tuple[bool, Dict[str, Any]]:
    maxima = phase_max_window_means(log.engagement, _segments_of(log))
    decline = maxima[0] - maxima[-1] if len(maxima) > 1 else float("nan")
    cov = np.array([r.cov_diag for r in log.records if r.cov_diag is not None])
    monotone = covariance_non_increasing(cov)
    ok = bool(np.isfinite(decline) and decline >= config.DECAY_MIN_DECLINE and monotone)
    return ok, {"phase_maxima": maxima, "decline": decline, "covariance_non_increasing": monotone}


CLAIMS: Dict[str, Callable[[RunLog], Tuple[bool, Dict[str, Any]]]] = {
    "wide_sigma_ceiling": _check_ceiling,
    "narrow_sigma_stuck": _check_stuck,
    "meta_recovery": _check_recovery,
    "fixed_plateau": _check_plateau,
    "kalman_decay": _check_decay,
}


@dataclass
class ClaimVerdict:
    claim: str
    per_run: List[bool] = field(default_factory=list)
    details: List[Dict[str, Any]] = field(default_factory=list)
    seeds: List[int] = field(default_factory=list)
    required_ratio: float = config.CHECK_PASS_RATIO

    @property
    def pass_ratio(self) -> float:
        return sum(self.per_run) / len(self.per_run) if self.per_run else 0.0

    @property
    def passed(self) -> bool:
        return bool(self.per_run) and self.pass_ratio >= self.required_ratio

    def to_dict(self) -> Dict[str, Any]:
        return {
            "claim": self.claim,
            "passed": self.passed,
            "pass_ratio": self.pass_ratio,
            "required_ratio": self.required_ratio,
            "runs": [
                {"seed": seed, "holds": holds, **detail}
                for seed, holds, detail in zip(self.seeds, self.per_run, self.details)
            ],
        }


def infer_claim(experiment) -> str:
    """Pick the claim a preset was built to show"""
    kind = experiment.kind
    if kind == AgentKind.META:
        return "meta_recovery"
    if kind == AgentKind.KALMAN:
        return "kalman_decay"
    if experiment.agent.fixed_sigma <= 15:
        return "narrow_sigma_stuck"
    if experiment.env.schedule_mode == ScheduleMode.CYCLE:
        return "fixed_plateau"
    return "wide_sigma_ceiling"


def evaluate_claim(claim: str, logs: Sequence[RunLog], required_ratio: Optional[float] = None) -> ClaimVerdict:
    if claim not in CLAIMS:
        raise ValueError(f"unknown claim {claim!r}; choose from {list(CLAIMS)}")
    usable = [log for log in logs if log.ok and log.records]
    if not usable:
        raise ValueError(f"no successful runs to evaluate {claim!r}")

    check = CLAIMS[claim]
    verdict = ClaimVerdict(
        claim=claim,
        required_ratio=config.CHECK_PASS_RATIO if required_ratio is None else required_ratio,
    )
    for log in usable:
        holds, detail = check(log)
        verdict.per_run.append(bool(holds))
        verdict.details.append(detail)
        verdict.seeds.append(log.seed)

    icon = "✅" if verdict.passed else "❌"
    logger.info(
        f"{icon} {claim}: {sum(verdict.per_run)}/{len(verdict.per_run)} seeds hold "
        f"(need {verdict.required_ratio:.0%})"
    )
    return verdict
