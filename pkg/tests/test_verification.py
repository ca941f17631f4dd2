"""随机化验证：种子派生、三类目标与可重放性"""

import pytest

from src.core.verification import (
    TrialStatus,
    VerificationHarness,
    splitmix64,
    trial_seed,
)


@pytest.fixture(scope="module")
def harness(catalog):
    return VerificationHarness(catalog)


def test_splitmix64_reference_value():
    assert trial_seed(0, 0) == 0xE220A8397B1DCDAF
    assert splitmix64(0) == 0


def test_trial_seeds_are_distinct():
    seeds = {trial_seed(7, t) for t in range(1000)}
    assert len(seeds) == 1000
    assert all(0 <= s < 2 ** 64 for s in seeds)


def test_negative_master_seed_wraps():
    assert trial_seed(-1, 0) == trial_seed(2 ** 64 - 1, 0)


def test_seed_diagrams_are_adequate(harness):
    names = [d.name for d in harness.seeds()]
    assert "unknot" not in names
    assert "trefoil" in names and "10_152" in names


def test_unknown_target(harness):
    with pytest.raises(ValueError, match="unknown verification target"):
        harness.run("jones", 1, 0)


def test_determinant_formula(harness):
    report = harness.run("det-lemma", 30, 7)
    assert report.ok, [r.detail for r in report.records if r.status is TrialStatus.FAIL]
    assert report.summary()["trials"] == 30
    assert report.count(TrialStatus.PASS) + report.count(TrialStatus.XY_ZERO) == 30


def test_bracket_prop(harness):
    report = harness.run("bracket-prop", 20, 11)
    assert report.ok, [r.detail for r in report.records if r.status is TrialStatus.FAIL]


def test_preservation(harness):
    report = harness.run("preservation", 10, 3)
    assert report.ok, [r.detail for r in report.records if r.status is TrialStatus.FAIL]
    assert all(r.measured["adequate"] for r in report.records)


def test_runs_are_deterministic(harness):
    first = [r.to_dict() for r in harness.run("det-lemma", 10, 42).records]
    second = [r.to_dict() for r in harness.run("det-lemma", 10, 42).records]
    assert first == second


def test_single_trial_replays(harness):
    report = harness.run("bracket-prop", 5, 99)
    record = report.records[3]
    assert harness.replay("bracket-prop", 3, record.seed) == record
    assert record.seed == trial_seed(99, 3)


def test_report_records(harness):
    report = harness.run("det-lemma", 3, 1)
    header = report.header()
    assert header["record"] == "header"
    assert header["seed_derivation"].startswith("splitmix64")
    trial = report.records[0].to_dict()
    assert trial["record"] == "trial"
    assert trial["status"] in ("pass", "fail", "xy-zero")
    assert set(report.summary()) == {"record", "target", "trials", "passed", "failed", "xy_zero"}


@pytest.mark.slow
@pytest.mark.parametrize("target", ["det-lemma", "bracket-prop", "preservation"])
def test_full_suites(harness, target):
    report = harness.run(target, 500, 2024)
    assert report.ok


@pytest.mark.parametrize("seed_is_homogeneous, direction", [(True, "lost"), (False, "gained")])
def test_preservation_flags_either_direction(catalog, trefoil, mocker, seed_is_homogeneous, direction):
    harness = VerificationHarness(catalog)
    harness._seeds = [trefoil]
    mocker.patch(
        "src.core.verification.is_homogeneous",
        side_effect=lambda diagram: (diagram is trefoil) == seed_is_homogeneous,
    )
    report = harness.run("preservation", 8, 5)
    oriented = [r for r in report.records if "oriented" in r.block]
    assert oriented
    for record in oriented:
        assert record.status is TrialStatus.FAIL
        assert f"homogeneous {direction}" in record.detail
        assert record.measured["homogeneous"] is not seed_is_homogeneous
