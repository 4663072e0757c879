from pathlib import Path

import pytest

from core.constants import AgentKind, ScheduleMode
from core.engagement_env import Phase
from simulation.experiment_config import build_experiment, load_experiment
from tests.conftest import PRESET_DIR

PRESETS = sorted(p.name for p in PRESET_DIR.glob("*.env"))


@pytest.mark.parametrize("name", PRESETS)
def test_every_preset_loads(name):
    exp = load_experiment(str(PRESET_DIR / name))
    assert exp.source.endswith(name)
    assert exp.total_steps > 0
    assert exp.agent.q.gamma == exp.agent.ac.gamma == exp.agent.kalman.gamma


def test_preset_values(preset_dir):
    exp = load_experiment(str(preset_dir / "meta_difficult.env"))
    assert exp.kind is AgentKind.META
    assert exp.num_runs == 10
    assert exp.total_steps == 4000
    assert exp.env.schedule == (Phase(1, -50.0, 1000), Phase(5, 50.0, 1000))
    assert exp.env.schedule_mode is ScheduleMode.CYCLE
    assert exp.output_dir == Path("results/meta_difficult")


def test_overrides_beat_preset(preset_dir, tmp_path):
    exp = load_experiment(
        str(preset_dir / "wide_sigma.env"),
        overrides={"RUN_NUM_RUNS": 3, "RUN_AGENT": AgentKind.META, "RUN_OUTPUT_DIR": str(tmp_path), "RUN_BASE_SEED": None},
    )
    assert exp.num_runs == 3
    assert exp.kind is AgentKind.META
    assert exp.output_dir == tmp_path
    assert exp.base_seed == 0


def test_defaults_without_preset():
    exp = load_experiment()
    assert exp.kind is AgentKind.FIXED
    assert exp.agent.fixed_sigma == 20.0
    assert exp.display_label == "fixed"
    assert exp.source is None


def test_seed_per_run():
    exp = build_experiment({"RUN_BASE_SEED": "40"})
    assert [exp.seed_for(i) for i in range(3)] == [40, 41, 42]


def test_gamma_reaches_every_learner():
    exp = build_experiment({"LEARN_GAMMA": "0.5"})
    assert exp.agent.q.gamma == exp.agent.ac.gamma == exp.agent.kalman.gamma == 0.5


def test_blank_values_fall_back_to_defaults():
    assert build_experiment({"RUN_NUM_RUNS": ""}).num_runs == 1


@pytest.mark.parametrize("text, expected", [("true", True), ("1", True), ("off", False)])
def test_boolean_values(text, expected):
    assert build_experiment({"RUN_EMIT_PLOTS": text}).emit_plots is expected


def test_unknown_key(tmp_path):
    preset = tmp_path / "typo.env"
    preset.write_text("RUN_STEPS=10\n")
    with pytest.raises(ValueError, match="RUN_STEPS"):
        load_experiment(str(preset))


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_experiment(str(tmp_path / "nope.env"))


@pytest.mark.parametrize("values", [
    {"RUN_TOTAL_STEPS": "0"},
    {"RUN_NUM_RUNS": "0"},
    {"RUN_WORKERS": "0"},
    {"RUN_AGENT": "greedy"},
    {"RUN_EMIT_PLOTS": "maybe"},
    {"ENV_SCHEDULE": "a9:0:10"},
    {"ENV_SCHEDULE_MODE": "bounce"},
    {"META_TAU1": "0.5"},
    {"KALMAN_OBS_NOISE": "-1"},
])
def test_invalid_values(values):
    with pytest.raises(ValueError):
        build_experiment(values)
