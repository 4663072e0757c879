"""
PAMDP EXPLORER - Numeric helpers
================================

Single source of truth for the bounded logistic used by both
exploration controllers, plus small guards and series helpers.
"""

import math
from typing import Sequence, Union

import numpy as np
from scipy.special import expit

import config
from core.exceptions import NonFiniteValueError

ArrayLike = Union[Sequence[float], np.ndarray]


def ensure_finite(name: str, value: float) -> float:
    """Reject NaN / inf before it poisons a learner"""
    if not math.isfinite(value):
        raise NonFiniteValueError(f"{name} must be finite, got {value!r}")
    return value


def ensure_finite_array(name: str, values: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise NonFiniteValueError(f"{name} contains non-finite entries")
    return values


def bounded_logistic(
    x: float,
    upper: float,
    slope: float,
    midpoint: float,
    increasing: bool = True,
    floor: float = config.SIGMA_FLOOR,
) -> float:
    """
    upper / (1 + exp(∓slope·(x - midpoint))), strictly inside (0, upper).

    expit never overflows, but it does round to exactly 0 or 1 in the
    tails, so the result is clipped back into the open interval.
    """
    z = slope * (x - midpoint)
    raw = upper * float(expit(z if increasing else -z))
    return float(np.clip(raw, floor, np.nextafter(upper, 0.0)))


def rolling_mean(values: ArrayLike, window: int) -> np.ndarray:
    """
    Trailing window means: entry i averages values[i-window+1 : i+1].
    Only full windows are returned (len - window + 1 entries).
    """
    arr = np.asarray(values, dtype=float)
    if window < 1:
        raise ValueError("window must be >= 1")
    if len(arr) < window:
        return np.empty(0)
    csum = np.cumsum(np.insert(arr, 0, 0.0))
    return (csum[window:] - csum[:-window]) / window
