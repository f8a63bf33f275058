import json

import pytest

from reedykit import io
from reedykit import suites
from reedykit.suites import Check, SuiteReport

SMALL_RUNS = {
    "reedy-classification": dict(instances=1, max_objects=2),
    "fibration-oracle": dict(instances=1, max_objects=2),
    "slice-corollary": dict(instances=1, max_objects=2),
    "properness": dict(instances=3),
    "adjunction-two-variables": dict(instances=1, max_objects=2),
    "enrichment-sm7": dict(instances=1, max_objects=2),
    "exterior-quillen": dict(instances=3),
    "diagonal-monoidal": dict(instances=2, max_objects=5),
    "delta-slice-example": dict(instances=1, max_objects=5),
}


def test_every_suite_has_a_small_run():
    assert set(SMALL_RUNS) == set(suites.SUITES)


@pytest.mark.parametrize("name", list(SMALL_RUNS))
def test_small_runs_pass(name):
    rep = suites.run_suite(name, seed=3, **SMALL_RUNS[name])
    assert rep.ok, [c.to_json() for c in rep.failures()]
    data = rep.to_json()
    keys = [c["key"] for c in data["checks"]]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    assert all("witness" not in c for c in data["checks"])


@pytest.mark.parametrize("name", ["properness", "exterior-quillen"])
def test_reports_are_byte_identical(name):
    a = suites.run_suite(name, seed=5, **SMALL_RUNS[name])
    b = suites.run_suite(name, seed=5, **SMALL_RUNS[name])
    assert io.dumps(a.to_json()) == io.dumps(b.to_json())
    assert a.to_text() == b.to_text()
    assert "duration" not in a.to_json()


def test_seed_changes_instances():
    a = suites.run_suite("properness", seed=1, instances=3)
    b = suites.run_suite("properness", seed=2, instances=3)
    assert io.dumps(a.to_json()) != io.dumps(b.to_json())


def test_unknown_suite():
    with pytest.raises(suites.UnknownSuite):
        suites.run_suite("nope")


def test_failures_carry_replayable_witness():
    ctx = suites.Context("properness", 4, 2, 3)
    w = ctx.replay(instance=1)
    rep = SuiteReport("properness", 4, 2, 3, [Check("b", True), Check("a", False, w, {"why": "test"})])
    assert not rep.ok and rep.failed == 1
    data = json.loads(io.dumps(rep.to_json()))
    first = data["checks"][0]
    assert first["key"] == "a" and first["status"] == "fail"
    assert first["witness"]["replay"].startswith("reedykit suite properness --seed 4")
    assert "FAIL" in rep.to_text()


def test_empty_report_is_not_ok():
    assert not SuiteReport("x", 0, None, 1, []).ok


def test_zero_to_constant_example():
    phi, reedy, objectwise = suites.zero_to_constant_example()
    assert objectwise.cof and not reedy.cof


def test_fibration_oracle_summary_checks():
    checks = suites.fibration_oracle_checks(["terminal", "parallel-pair", "discrete2"], None, sides=("left",))
    by_key = {c.key: c for c in checks}
    assert by_key["summary/genuine-negative"].ok
    assert all(c.ok for c in checks)
