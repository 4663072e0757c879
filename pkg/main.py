"""
PAMDP EXPLORER - Main Entry Point

    python main.py run --config presets/wide_sigma.env
    python main.py run --config presets/meta_difficult.env --runs 3 --plots --out results/meta
    python main.py compare --configs presets/meta_difficult.env,presets/fixed_difficult.env,presets/kalman_difficult.env --out results/compare
    python main.py check --config presets/narrow_sigma.env --runs 10

Exit code 0 on success, 1 with a one-line diagnostic on stderr otherwise.
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv

load_dotenv()

import config  # noqa: E402
from core.constants import AgentKind  # noqa: E402
from core.exceptions import SimulationError  # noqa: E402
from monitoring.logger import setup_logging  # noqa: E402
from simulation.experiment_config import ExperimentConfig, load_experiment  # noqa: E402
from simulation.report_generator import ReportGenerator  # noqa: E402
from simulation.scenario_checks import CLAIMS, evaluate_claim, infer_claim  # noqa: E402
from simulation.simulation_runner import SimulationRunner, compare, run_experiment  # noqa: E402

logger = logging.getLogger("main")


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """CLI flags → config keys; unset flags leave the preset value alone"""
    return {
        "RUN_BASE_SEED": getattr(args, "seed", None),
        "RUN_NUM_RUNS": getattr(args, "runs", None),
        "RUN_TOTAL_STEPS": getattr(args, "steps", None),
        "RUN_AGENT": AgentKind.from_string(args.agent) if getattr(args, "agent", None) else None,
        "RUN_OUTPUT_DIR": getattr(args, "out", None),
        "RUN_EMIT_PLOTS": True if getattr(args, "plots", False) else None,
        "RUN_WORKERS": getattr(args, "workers", None),
    }


def _load(path: str, args: argparse.Namespace) -> ExperimentConfig:
    return load_experiment(path, overrides=_overrides(args))


# ==================== Commands ====================

def cmd_run(args: argparse.Namespace) -> int:
    experiment = _load(args.config, args)
    result = SimulationRunner(experiment).run()
    if "error" in result:
        return _fail(result["error"])

    series = result["aggregate"]
    status = result["status"]
    logger.info(f"\n{'=' * 50}")
    logger.info(f"✅ RUN COMPLETE: {result['label']}")
    logger.info(f"   Runs:           {status['ok']}/{status['num_runs']} ok")
    logger.info(f"   Final mean e:   {series.mean[-1]:.3f} ± {series.std[-1]:.3f}")
    logger.info(f"   Peak mean e:    {series.mean.max():.3f}")
    logger.info(f"{'=' * 50}")
    for name, path in result["files"].items():
        logger.info(f"📁 {name}: {path}")
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    paths = [p.strip() for p in args.configs.split(",") if p.strip()]
    if len(paths) < 2:
        return _fail("compare needs at least two configs")
    overrides = _overrides(args)
    overrides["RUN_OUTPUT_DIR"] = None
    experiments = [load_experiment(p, overrides=overrides) for p in paths]
    result = compare(experiments, args.out)
    if "error" in result:
        return _fail(result["error"])
    for label, series in result["series"].items():
        logger.info(f"   {label:<20} final mean e={series.mean[-1]:.3f} ({series.num_runs} runs)")
    logger.info(f"📁 {result['files']['csv']}")
    logger.info(f"📁 {result['files']['plot']}")
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    experiment = _load(args.config, args)
    claim = args.claim or infer_claim(experiment)
    logs = run_experiment(experiment)
    verdict = evaluate_claim(claim, logs)

    for seed, holds, detail in zip(verdict.seeds, verdict.per_run, verdict.details):
        shown = ", ".join(f"{k}={_short(v)}" for k, v in detail.items())
        print(f"seed {seed:>4}: {'PASS' if holds else 'FAIL'}  {shown}")
    print(
        f"{claim}: {'PASS' if verdict.passed else 'FAIL'} "
        f"({sum(verdict.per_run)}/{len(verdict.per_run)} seeds, need {verdict.required_ratio:.0%})"
    )
    path = ReportGenerator(experiment.output_dir).write_status_json(verdict.to_dict(), name=f"check_{claim}.json")
    logger.info(f"📁 verdict: {path}")
    if not verdict.passed:
        return _fail(f"{claim} held for {sum(verdict.per_run)}/{len(verdict.per_run)} seeds")
    return 0


def _short(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.3f}"
    if isinstance(value, list):
        return "[" + ", ".join(_short(v) for v in value) + "]"
    return str(value)


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


# ==================== CLI ====================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="PAMDP EXPLORER - active exploration in parameterized action spaces",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    parser.add_argument("--log-level", default=config.LOG_LEVEL, help=f"Console log level (default: {config.LOG_LEVEL})")
    parser.add_argument("--log-dir", default=config.LOG_DIR, help=f"Rotating log directory (default: {config.LOG_DIR})")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_run_options(p: argparse.ArgumentParser) -> None:
        group = p.add_argument_group("Run overrides (beat preset values)")
        group.add_argument("--seed", type=int, default=None, help="Base seed; run i uses seed + i")
        group.add_argument("--runs", type=int, default=None, help="Number of seeded runs")
        group.add_argument("--steps", type=int, default=None, help="Timesteps per run")
        group.add_argument("--agent", choices=AgentKind.list(), default=None, help="Exploration controller")
        group.add_argument("--workers", type=int, default=None, help="Concurrent runs")

    run_p = sub.add_parser("run", help="Run one experiment preset")
    run_p.add_argument("--config", required=True, help="Preset file (KEY=value)")
    run_p.add_argument("--out", default=None, help="Output directory")
    run_p.add_argument("--plots", action="store_true", help="Also write per-run SVG panels")
    add_run_options(run_p)
    run_p.set_defaults(handler=cmd_run)

    cmp_p = sub.add_parser("compare", help="Run several presets and plot them together")
    cmp_p.add_argument("--configs", required=True, help="Comma-separated preset files")
    cmp_p.add_argument("--out", required=True, help="Output directory")
    add_run_options(cmp_p)
    cmp_p.set_defaults(handler=cmd_compare)

    chk_p = sub.add_parser("check", help="Evaluate the behaviour a preset is built to show")
    chk_p.add_argument("--config", required=True, help="Preset file (KEY=value)")
    chk_p.add_argument("--claim", choices=list(CLAIMS), default=None, help="Claim to evaluate (default: inferred)")
    chk_p.add_argument("--out", default=None, help="Directory for the verdict JSON")
    add_run_options(chk_p)
    chk_p.set_defaults(handler=cmd_check)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level, args.log_dir)
    try:
        return args.handler(args)
    except (ValueError, FileNotFoundError, SimulationError, OSError) as e:
        logger.debug("Command failed", exc_info=True)
        return _fail(str(e))


if __name__ == "__main__":
    sys.exit(main())
