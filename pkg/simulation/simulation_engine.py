"""
PAMDP EXPLORER - Simulation Engine
==================================

Runs one seeded agent/environment pair for `total_steps` timesteps and
collects the StepRecords. Each call owns its agent and environment
state, so runs can execute in any order or in parallel threads.
"""

import logging
import time

from core.agent import agent_step, new_agent
from core.constants import RunStatus
from core.engagement_env import initial_state
from core.exceptions import AgentStepError
from core.models import RunLog

logger = logging.getLogger(__name__)


class SimulationEngine:
    """Single-run simulator for one ExperimentConfig"""

    def __init__(self, experiment):
        self.experiment = experiment

    def run(self, run_id: int) -> RunLog:
        exp = self.experiment
        seed = exp.seed_for(run_id)
        log = RunLog(run_id=run_id, seed=seed, kind=exp.kind)
        started = time.perf_counter()

        agent = new_agent(exp.agent, exp.env, seed)
        env_state = initial_state(exp.env)
        logger.debug(
            f"Run {run_id} [{exp.kind.value}] seed={seed} | {exp.total_steps} steps | "
            f"{len(exp.env.schedule)} phases ({exp.env.schedule_mode.value})"
        )

        try:
            for _ in range(exp.total_steps):
                agent, env_state, record = agent_step(agent, env_state, exp.agent, exp.env, run_id=run_id)
                log.records.append(record)
        except AgentStepError as e:
            log.status = RunStatus.FAILED
            log.error = str(e)
            logger.error(f"❌ Run {run_id} aborted at t={e.timestep}: {e.cause}")

        log.wall_time_s = time.perf_counter() - started
        if log.ok:
            final = log.records[-1].engagement if log.records else float("nan")
            logger.info(
                f"✅ Run {run_id} done: {len(log.records)} steps | final e={final:.2f} | "
                f"{log.wall_time_s:.2f}s"
            )
        return log


def simulate_run(experiment, run_id: int) -> RunLog:
    return SimulationEngine(experiment).run(run_id)
