import json

import numpy as np
import pytest

import simulation.simulation_engine as engine
from core.constants import AgentKind, RunStatus
from core.exceptions import AgentStepError
from simulation.experiment_config import load_experiment
from simulation.simulation_engine import simulate_run
from simulation.simulation_runner import (
    SimulationRunner,
    compare_async,
    run_experiment,
    run_experiment_async,
)
from tests.factories import make_experiment


async def test_logs_ordered_with_derived_seeds(tmp_path):
    logs = await run_experiment_async(make_experiment(tmp_path, RUN_NUM_RUNS=4))
    assert [log.run_id for log in logs] == [0, 1, 2, 3]
    assert [log.seed for log in logs] == [7, 8, 9, 10]
    assert all(log.ok and len(log.records) == 60 for log in logs)


def test_worker_count_does_not_change_results(tmp_path):
    serial = run_experiment(make_experiment(tmp_path, RUN_NUM_RUNS=3, RUN_WORKERS=1))
    parallel = run_experiment(make_experiment(tmp_path, RUN_NUM_RUNS=3, RUN_WORKERS=3))
    assert [log.records for log in serial] == [log.records for log in parallel]


def test_run_matches_standalone_engine(tmp_path):
    exp = make_experiment(tmp_path, RUN_NUM_RUNS=2, RUN_AGENT="meta")
    logs = run_experiment(exp)
    assert logs[1].records == simulate_run(exp, 1).records


def test_single_preset_run_length(preset_dir):
    logs = run_experiment(load_experiment(str(preset_dir / "wide_sigma.env")))
    assert len(logs) == 1
    assert len(logs[0].records) == 600
    assert logs[0].records[-1].t == 599
    phases = [r.phase for r in logs[0].records]
    assert phases[199] == 0 and phases[200] == 1


@pytest.mark.slow
def test_ten_runs_on_the_difficult_schedule(preset_dir):
    logs = run_experiment(load_experiment(str(preset_dir / "meta_difficult.env")))
    assert len(logs) == 10
    assert all(len(log.records) == 4000 for log in logs)
    phases = np.array([r.phase for r in logs[0].records])
    assert phases[:1000].max() == 0
    assert phases[1000:2000].min() == 1
    assert phases[2000] == 0


class TestRunnerOutputs:

    def test_files_written(self, tmp_path):
        exp = make_experiment(tmp_path, RUN_EMIT_PLOTS="true")
        result = SimulationRunner(exp).run()
        out = tmp_path / "out"
        for name in ("run_0.csv", "run_1.csv", "aggregate.csv", "engagement.svg", "run_status.json",
                     "run_0.svg", "run_1.svg"):
            assert (out / name).is_file(), name
        assert result["label"] == "fixed"
        assert result["aggregate"].num_runs == 2
        assert result["status"]["ok"] == 2

    def test_byte_identical_reruns(self, tmp_path):
        exp = make_experiment(tmp_path, RUN_AGENT="kalman")
        SimulationRunner(exp, output_dir=tmp_path / "a").run()
        SimulationRunner(exp, output_dir=tmp_path / "b").run()
        names = sorted(p.name for p in (tmp_path / "a").iterdir())
        assert names == sorted(p.name for p in (tmp_path / "b").iterdir())
        for name in names:
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes(), name

    def test_failed_run_is_isolated(self, tmp_path, monkeypatch):
        real_step = engine.agent_step

        def flaky(agent, env_state, agent_config, env_config, run_id=0):
            if run_id == 1 and env_state.timestep == 5:
                raise AgentStepError(5, ValueError("boom"))
            return real_step(agent, env_state, agent_config, env_config, run_id=run_id)

        monkeypatch.setattr(engine, "agent_step", flaky)
        result = SimulationRunner(make_experiment(tmp_path, RUN_NUM_RUNS=3)).run()

        failed = result["logs"][1]
        assert failed.status is RunStatus.FAILED
        assert len(failed.records) == 5
        assert "boom" in failed.error
        assert result["aggregate"].num_runs == 2

        status = json.loads((tmp_path / "out" / "run_status.json").read_text())
        assert status["failed"] == 1
        assert status["runs"][1]["steps_completed"] == 5
        assert status["runs"][1]["status"] == "failed"

    def test_every_run_failing_is_an_error(self, tmp_path, monkeypatch):
        def broken(*args, **kwargs):
            raise AgentStepError(0, RuntimeError("dead"))

        monkeypatch.setattr(engine, "agent_step", broken)
        result = SimulationRunner(make_experiment(tmp_path)).run()
        assert "all 2 run(s) failed" in result["error"]
        assert (tmp_path / "out" / "run_status.json").is_file()
        assert not (tmp_path / "out" / "aggregate.csv").exists()

    def test_unwritable_output(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("x")
        result = SimulationRunner(make_experiment(tmp_path), output_dir=blocker / "out").run()
        assert "cannot write" in result["error"]


async def test_compare_writes_joint_outputs(tmp_path):
    experiments = [
        make_experiment(tmp_path, RUN_AGENT="meta", RUN_LABEL="meta"),
        make_experiment(tmp_path, RUN_AGENT="fixed", RUN_LABEL="fixed"),
    ]
    result = await compare_async(experiments, tmp_path / "cmp")
    assert result["labels"] == ["meta", "fixed"]
    header = (tmp_path / "cmp" / "comparison.csv").read_text().splitlines()[0]
    assert header == "t,mean_meta,std_meta,mean_fixed,std_fixed"
    assert (tmp_path / "cmp" / "comparison.svg").is_file()
    assert (tmp_path / "cmp" / "meta" / "aggregate.csv").is_file()


async def test_compare_deduplicates_labels(tmp_path):
    experiments = [make_experiment(tmp_path), make_experiment(tmp_path, RUN_BASE_SEED=100)]
    result = await compare_async(experiments, tmp_path / "cmp")
    assert result["labels"] == ["fixed", "fixed_2"]


async def test_compare_needs_experiments(tmp_path):
    assert "error" in await compare_async([], tmp_path)


def test_kind_recorded_on_logs(tmp_path):
    logs = run_experiment(make_experiment(tmp_path, RUN_AGENT="kalman", RUN_NUM_RUNS=1))
    assert logs[0].kind is AgentKind.KALMAN
    assert logs[0].records[0].cov_diag is not None
