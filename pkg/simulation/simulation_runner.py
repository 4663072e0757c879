"""
PAMDP EXPLORER - Simulation Runner
==================================
Multi-run orchestration:

  1. run_experiment: num_runs seeded runs (seed = base_seed + run_id),
     executed in worker threads, at most `workers` at once
  2. aggregate the successful runs
  3. write run_<id>.csv, aggregate.csv, engagement.svg, run_status.json
     (plus run_<id>.svg with plots enabled)

A run that fails is recorded in run_status.json; the others continue.
`compare` does the same for several experiments and adds a joint
comparison.csv / comparison.svg.
"""

import asyncio
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from core.constants import RunStatus
from core.exceptions import ReportWriteError
from core.models import AggregateSeries, RunLog
from monitoring.run_status import RunStatusCollector
from simulation.aggregator import aggregate
from simulation.experiment_config import ExperimentConfig
from simulation.plot_generator import emit_comparison_plot, emit_plot, emit_run_plot
from simulation.report_generator import ReportGenerator
from simulation.simulation_engine import simulate_run

logger = logging.getLogger(__name__)


async def run_experiment_async(experiment: ExperimentConfig) -> List[RunLog]:
    """All runs of one experiment, ordered by run_id"""
    semaphore = asyncio.Semaphore(experiment.workers)

    async def _one(run_id: int) -> RunLog:
        async with semaphore:
            return await asyncio.to_thread(simulate_run, experiment, run_id)

    results = await asyncio.gather(
        *(_one(run_id) for run_id in range(experiment.num_runs)),
        return_exceptions=True,
    )

    logs: List[RunLog] = []
    for run_id, result in enumerate(results):
        if isinstance(result, BaseException):
            logger.error(f"❌ Run {run_id} crashed outside the step loop: {result}")
            result = RunLog(
                run_id=run_id,
                seed=experiment.seed_for(run_id),
                kind=experiment.kind,
                status=RunStatus.FAILED,
                error=f"{type(result).__name__}: {result}",
            )
        logs.append(result)
    return logs


def run_experiment(experiment: ExperimentConfig) -> List[RunLog]:
    return asyncio.run(run_experiment_async(experiment))


class SimulationRunner:

    def __init__(self, experiment: ExperimentConfig, output_dir: Optional[Union[str, Path]] = None):
        self.experiment = experiment
        self.output_dir = Path(output_dir) if output_dir is not None else Path(experiment.output_dir)
        self.reporter = ReportGenerator(self.output_dir)

    async def run_async(self) -> Dict[str, Any]:
        exp = self.experiment
        logger.info("=" * 60)
        logger.info(f"{exp.kind.emoji} EXPERIMENT: {exp.display_label}")
        logger.info("=" * 60)
        logger.info(
            f"{exp.num_runs} run(s) × {exp.total_steps} steps | seeds {exp.base_seed}.."
            f"{exp.seed_for(exp.num_runs - 1)} | workers={exp.workers}"
        )

        # ── Step 1: Simulate ─────────────────────────────────────────
        logs = await run_experiment_async(exp)
        status = RunStatusCollector(label=exp.display_label, total_steps=exp.total_steps)
        for log in logs:
            status.record_run(log)

        # ── Step 2: Persist ──────────────────────────────────────────
        files: Dict[str, Any] = {}
        try:
            files["runs"] = [
                str(self.reporter.write_records_csv(log, exp.env.num_actions, exp.env.param_dim))
                for log in logs
            ]
            files["status"] = str(self.reporter.write_status_json(status.summary()))
        except ReportWriteError as e:
            return {"error": str(e)}

        ok_logs = [log for log in logs if log.ok]
        if not ok_logs:
            msg = f"all {len(logs)} run(s) failed; see {files['status']}"
            logger.error(f"❌ {msg}")
            return {"error": msg, "files": files, "status": status.summary()}

        # ── Step 3: Aggregate + plots ────────────────────────────────
        series = aggregate(ok_logs, label=exp.display_label)
        try:
            files["aggregate"] = str(self.reporter.write_aggregate_csv(series))
            files["plot"] = str(emit_plot(series, self.output_dir / "engagement.svg"))
            if exp.emit_plots:
                files["run_plots"] = [
                    str(emit_run_plot(log.records, self.output_dir / f"run_{log.run_id}.svg"))
                    for log in ok_logs
                    if log.records
                ]
        except ReportWriteError as e:
            return {"error": str(e)}

        if status.failed_count:
            logger.warning(f"⚠️ {status.failed_count}/{len(logs)} run(s) failed")
        logger.info(
            f"✅ {exp.display_label}: final mean e={series.mean[-1]:.2f} ± {series.std[-1]:.2f} | "
            f"outputs in {self.output_dir}"
        )
        return {
            "label": exp.display_label,
            "logs": logs,
            "aggregate": series,
            "status": status.summary(),
            "files": files,
        }

    def run(self) -> Dict[str, Any]:
        return asyncio.run(self.run_async())


def _unique_labels(experiments: Sequence[ExperimentConfig]) -> List[str]:
    labels: List[str] = []
    for exp in experiments:
        label = exp.display_label.replace(" ", "_")
        candidate, n = label, 2
        while candidate in labels:
            candidate = f"{label}_{n}"
            n += 1
        labels.append(candidate)
    return labels


async def compare_async(experiments: Sequence[ExperimentConfig], output_dir: Union[str, Path]) -> Dict[str, Any]:
    """
    Run each experiment into <output_dir>/<label>/ and write the joint
    comparison.csv and comparison.svg at <output_dir>.
    """
    if not experiments:
        return {"error": "no experiments to compare"}
    out = Path(output_dir)
    series_by_label: Dict[str, AggregateSeries] = {}
    results: Dict[str, Dict[str, Any]] = {}

    for label, exp in zip(_unique_labels(experiments), experiments):
        result = await SimulationRunner(exp, output_dir=out / label).run_async()
        if "error" in result:
            return {"error": f"{label}: {result['error']}"}
        results[label] = result
        series_by_label[label] = result["aggregate"]

    reporter = ReportGenerator(out)
    try:
        csv_path = reporter.write_comparison_csv(series_by_label)
        svg_path = emit_comparison_plot(series_by_label, out / "comparison.svg")
    except ReportWriteError as e:
        return {"error": str(e)}

    logger.info(f"📊 Comparison of {len(series_by_label)} experiments → {out}")
    return {
        "labels": list(series_by_label),
        "series": series_by_label,
        "results": results,
        "files": {"csv": str(csv_path), "plot": str(svg_path)},
    }


def compare(experiments: Sequence[ExperimentConfig], output_dir: Union[str, Path]) -> Dict[str, Any]:
    return asyncio.run(compare_async(experiments, output_dir))
