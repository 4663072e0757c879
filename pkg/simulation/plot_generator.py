"""
PAMDP EXPLORER - Plot Generator
===============================

Static SVG charts rendered with matplotlib's Agg backend:

    emit_plot             mean engagement with a ±1 std band
    emit_comparison_plot  several labelled mean curves on one axis
    emit_run_plot         one run: engagement, sampled parameters with
                          learned means, action probabilities and the
                          β / σ traces

Output is byte-stable for identical input: the SVG id salt is fixed and
the Date metadata is dropped.
"""

import logging
from pathlib import Path
from typing import Mapping, Optional, Sequence, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

import config  # noqa: E402
from core.exceptions import ReportWriteError  # noqa: E402
from core.models import AggregateSeries, StepRecord  # noqa: E402

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

FALLBACK_COLORS = ["#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"]


def _save(fig, path: PathLike) -> Path:
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with matplotlib.rc_context({"svg.hashsalt": config.PLOT_HASH_SALT}):
            fig.savefig(target, format="svg", metadata={"Date": None})
    except OSError as e:
        logger.error(f"❌ Plot write failed: {target}: {e}")
        raise ReportWriteError(target, e) from e
    finally:
        plt.close(fig)
    logger.debug(f"📈 Plot saved: {target}")
    return target


def _color_for(label: str, index: int) -> str:
    key = label.lower()
    for kind, color in config.PLOT_COLORS.items():
        if kind in key:
            return color
    return FALLBACK_COLORS[index % len(FALLBACK_COLORS)]


def _engagement_axis(ax) -> None:
    ax.set_xlabel("timestep")
    ax.set_ylabel("engagement")
    ax.set_ylim(config.E_MIN - 0.5, config.E_MAX + 0.5)
    ax.grid(True, alpha=0.3)


def emit_plot(series: AggregateSeries, path: PathLike, title: Optional[str] = None) -> Path:
    if len(series) == 0:
        raise ValueError("cannot plot an empty series")
    color = _color_for(series.label, 0)
    fig, ax = plt.subplots(figsize=(8, 4))
    ax.plot(series.t, series.mean, color=color, linewidth=1.2, label=series.label or "mean")
    ax.fill_between(series.t, series.mean - series.std, series.mean + series.std, color=color, alpha=0.25)
    _engagement_axis(ax)
    ax.set_title(title or f"Engagement ({series.num_runs} runs)")
    ax.legend(loc="lower right")
    fig.tight_layout()
    return _save(fig, path)


def emit_comparison_plot(series_by_label: Mapping[str, AggregateSeries], path: PathLike,
                         title: str = "Engagement comparison") -> Path:
    if not series_by_label or any(len(s) == 0 for s in series_by_label.values()):
        raise ValueError("cannot plot an empty comparison")
    fig, ax = plt.subplots(figsize=(9, 4.5))
    for i, (label, series) in enumerate(series_by_label.items()):
        color = _color_for(label, i)
        ax.plot(series.t, series.mean, color=color, linewidth=1.2, label=label)
        ax.fill_between(series.t, series.mean - series.std, series.mean + series.std, color=color, alpha=0.15)
    _engagement_axis(ax)
    ax.set_title(title)
    ax.legend(loc="lower right")
    fig.tight_layout()
    return _save(fig, path)


def emit_run_plot(records: Sequence[StepRecord], path: PathLike, title: Optional[str] = None) -> Path:
    """Single-run panels: engagement / parameters per action / action probabilities / exploration"""
    if not records:
        raise ValueError("cannot plot an empty run")
    t = np.array([r.t for r in records])
    engagement = np.array([r.engagement for r in records])
    actions = np.array([r.action for r in records])
    sampled = np.array([r.params[0] for r in records])
    means = np.array([[m[0] for m in r.theta_means] for r in records])
    beta = np.array([r.beta for r in records])
    sigma = np.array([r.sigma for r in records])
    probs = np.array([r.probs for r in records])

    fig, (ax_e, ax_p, ax_pr, ax_x) = plt.subplots(4, 1, figsize=(9, 12), sharex=True)

    ax_e.plot(t, engagement, color="black", linewidth=1.0)
    _engagement_axis(ax_e)
    ax_e.set_xlabel("")

    cmap = plt.get_cmap("tab10")
    for a in range(means.shape[1]):
        chosen = actions == a
        color = cmap(a % 10)
        if chosen.any():
            ax_p.scatter(t[chosen], sampled[chosen], s=4, color=color, alpha=0.5, label=f"a{a + 1}")
        ax_p.plot(t, means[:, a], color=color, linewidth=1.0)
    ax_p.set_ylabel("parameter")
    ax_p.set_ylim(config.PARAM_MIN, config.PARAM_MAX)
    ax_p.grid(True, alpha=0.3)
    ax_p.legend(loc="upper right", fontsize="small", ncol=3, markerscale=3)

    for a in range(probs.shape[1]):
        ax_pr.plot(t, probs[:, a], color=cmap(a % 10), linewidth=1.0, label=f"a{a + 1}")
    ax_pr.set_ylabel("P(action)")
    ax_pr.set_ylim(-0.05, 1.05)
    ax_pr.grid(True, alpha=0.3)

    ax_x.plot(t, beta, color=config.PLOT_COLORS["fixed"], linewidth=1.0, label="β")
    ax_x.set_ylabel("β")
    ax_s = ax_x.twinx()
    ax_s.plot(t, sigma, color=config.PLOT_COLORS["meta"], linewidth=1.0, label="σ")
    ax_s.set_ylabel("σ")
    ax_x.set_xlabel("timestep")
    ax_x.grid(True, alpha=0.3)

    fig.suptitle(title or f"Run {records[0].run_id}")
    fig.tight_layout()
    return _save(fig, path)
