"""
PAMDP EXPLORER - Run Aggregation
Mean and sample standard deviation of engagement across runs, per timestep.
"""

import logging
from typing import Sequence

import numpy as np

from core.models import AggregateSeries, RunLog

logger = logging.getLogger(__name__)


def aggregate(runs: Sequence[RunLog], label: str = "") -> AggregateSeries:
    if not runs:
        raise ValueError("nothing to aggregate: no runs")
    lengths = {len(r.records) for r in runs}
    if len(lengths) != 1:
        raise ValueError(f"runs differ in length: {sorted(lengths)}")

    stacked = np.vstack([r.engagement for r in runs])
    mean = stacked.mean(axis=0)
    if len(runs) > 1:
        std = stacked.std(axis=0, ddof=1)
    else:
        std = np.zeros_like(mean)
    t = np.array([rec.t for rec in runs[0].records], dtype=int)

    logger.debug(f"Aggregated {len(runs)} runs × {len(t)} steps ({label or 'unlabelled'})")
    return AggregateSeries(t=t, mean=mean, std=std, num_runs=len(runs), label=label)
