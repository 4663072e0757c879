import json

import pytest

from main import build_parser, main
from tests.conftest import PRESET_DIR

WIDE = str(PRESET_DIR / "wide_sigma.env")
META = str(PRESET_DIR / "meta_difficult.env")


def cli(tmp_path, *args):
    return main(["--log-dir", str(tmp_path / "logs"), *args])


def test_run(tmp_path):
    out = tmp_path / "out"
    assert cli(tmp_path, "run", "--config", WIDE, "--out", str(out), "--steps", "30", "--runs", "2") == 0
    assert (out / "aggregate.csv").read_text().count("\n") == 31
    status = json.loads((out / "run_status.json").read_text())
    assert status["ok"] == 2
    assert (tmp_path / "logs" / "pamdp.log").is_file()


def test_run_agent_override(tmp_path):
    out = tmp_path / "out"
    assert cli(tmp_path, "run", "--config", WIDE, "--out", str(out), "--steps", "10", "--agent", "kalman") == 0
    header = (out / "run_0.csv").read_text().splitlines()[0]
    assert header.endswith("cov_a5")


def test_compare(tmp_path):
    out = tmp_path / "cmp"
    code = cli(tmp_path, "compare", "--configs", f"{META},{WIDE}", "--out", str(out), "--steps", "20", "--runs", "2")
    assert code == 0
    assert (out / "comparison.csv").read_text().splitlines()[0] == "t,mean_meta,std_meta,mean_fixed,std_fixed"


def test_compare_needs_two_configs(tmp_path, capsys):
    assert cli(tmp_path, "compare", "--configs", WIDE, "--out", str(tmp_path)) == 1
    assert "at least two" in capsys.readouterr().err


def test_check_reports_every_seed(tmp_path, capsys):
    code = cli(
        tmp_path, "check", "--config", WIDE, "--claim", "fixed_plateau", "--runs", "2", "--steps", "300", "--out", str(tmp_path)
    )
    printed = capsys.readouterr().out.splitlines()
    assert printed[0].startswith("seed    0:")
    assert printed[1].startswith("seed    1:")
    summary = printed[-1]
    assert summary.startswith("fixed_plateau: ")
    assert code == (0 if "PASS" in summary else 1)


def test_check_writes_verdict_json(tmp_path):
    out = tmp_path / "chk"
    code = cli(
        tmp_path, "check", "--config", WIDE, "--claim", "wide_sigma_ceiling", "--runs", "2", "--steps", "200", "--out", str(out)
    )
    verdict = json.loads((out / "check_wide_sigma_ceiling.json").read_text())
    assert verdict["claim"] == "wide_sigma_ceiling"
    assert [run["seed"] for run in verdict["runs"]] == [0, 1]
    assert "steady_state_max" in verdict["runs"][0]
    assert code == (0 if verdict["passed"] else 1)


def test_missing_config(tmp_path, capsys):
    assert cli(tmp_path, "run", "--config", str(tmp_path / "missing.env")) == 1
    assert "error: " in capsys.readouterr().err


def test_bad_override(tmp_path, capsys):
    assert cli(tmp_path, "run", "--config", WIDE, "--out", str(tmp_path), "--runs", "0") == 1
    assert "num_runs" in capsys.readouterr().err


def test_parser_rejects_unknown_claim():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["check", "--config", WIDE, "--claim", "nope"])
