"""
PAMDP EXPLORER - Simulation Module
"""

from .experiment_config import ExperimentConfig, build_experiment, load_experiment
from .simulation_engine import simulate_run
from .simulation_runner import SimulationRunner, compare, run_experiment, run_experiment_async
from .aggregator import aggregate

__all__ = [
    "ExperimentConfig",
    "build_experiment",
    "load_experiment",
    "simulate_run",
    "SimulationRunner",
    "run_experiment",
    "run_experiment_async",
    "compare",
    "aggregate",
]
