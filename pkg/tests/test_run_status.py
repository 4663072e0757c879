from core.constants import AgentKind, RunStatus
from core.models import RunLog
from monitoring.run_status import RunStatusCollector
from tests.factories import make_log


def test_summary_counts_and_order():
    status = RunStatusCollector(label="meta", total_steps=3)
    status.record_run(make_log([5.0, 5.0, 5.0], run_id=1, kind=AgentKind.META))
    status.record_run(RunLog(run_id=0, seed=10, kind=AgentKind.META, status=RunStatus.FAILED, error="boom"))

    summary = status.summary()
    assert summary["label"] == "meta"
    assert summary["num_runs"] == 2
    assert (summary["ok"], summary["failed"]) == (1, 1)
    assert [r["run_id"] for r in summary["runs"]] == [0, 1]
    assert summary["runs"][0] == {
        "run_id": 0,
        "seed": 10,
        "agent": "meta",
        "status": "failed",
        "steps_completed": 0,
        "error": "boom",
    }
    assert summary["runs"][1]["steps_completed"] == 3


def test_all_failed():
    status = RunStatusCollector()
    assert not status.all_failed
    status.record_run(RunLog(run_id=0, seed=0, kind=AgentKind.FIXED, status=RunStatus.FAILED))
    assert status.all_failed
    status.record_run(make_log([1.0], run_id=1))
    assert not status.all_failed
