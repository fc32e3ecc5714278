import asyncio

import pytest

from src.config.tolerance import Tolerances
from src.graph.builder import create_graph
from src.oracle.suites import SuiteReport, TrialOutcome, run_batch
from src.state.state import merge_reports


def run_graph(trials, suites, batch_size, seed=0):
    state = {
        "seed": seed,
        "trials": trials,
        "suites": suites,
        "batch_size": batch_size,
        "tolerances": Tolerances().model_dump(),
        "reports": {},
        "passed": None,
    }
    return asyncio.run(create_graph().ainvoke(state, config={"max_concurrency": 2}))


def test_merge_reports():
    failed = TrialOutcome(suite="identities", trial=1, checks=4, residual=0.5, passed=False, case={})
    left = {"identities": SuiteReport(suite="identities", trials=2, checks=8)}
    right = {"identities": SuiteReport.from_outcome(failed), "membership": SuiteReport(suite="membership")}

    merged = merge_reports(left, right)
    assert merged["identities"].trials == 3
    assert merged["identities"].failure == failed
    assert "membership" in merged
    assert merge_reports(None, None) == {}
    assert merge_reports(left, {}) == left


def test_graph_collects_all_trials():
    result = run_graph(6, ["identities", "interpolation"], batch_size=4)
    assert result["passed"]
    assert set(result["reports"]) == {"identities", "interpolation"}
    assert all(report.trials == 6 for report in result["reports"].values())


def test_reports_do_not_depend_on_batch_size():
    single = run_graph(5, ["identities"], batch_size=5)["reports"]["identities"]
    split = run_graph(5, ["identities"], batch_size=2)["reports"]["identities"]
    assert single == split
    assert single == run_batch("identities", 0, 0, 5, Tolerances())


def test_zero_trials_pass():
    result = run_graph(0, ["membership"], batch_size=3)
    assert result["passed"]
    assert result["reports"]["membership"].trials == 0


@pytest.mark.parametrize("seed", [1, 2])
def test_other_seeds_run(seed):
    report = run_graph(2, ["identities"], batch_size=1, seed=seed)["reports"]["identities"]
    assert report.trials == 2
