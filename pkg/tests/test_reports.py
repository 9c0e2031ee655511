"""Session cache, check registry, suites and canonical reports at q=8."""

import json

import pytest

from ovgeo.errors import NotRealizableError, TierExceededError
from ovgeo.reports import (
    CHECKS,
    SUITES,
    Session,
    chamber_info,
    export_data,
    field_info,
    group_info,
    run_suite,
)


@pytest.fixture(scope="module")
def sess():
    return Session(1, 5, "full")


@pytest.fixture(scope="module")
def report(sess):
    return run_suite(sess, "all", 0)


def test_session_describe(sess):
    d = sess.describe()
    assert d["q"] == 8 and d["order"] == 29120
    assert d["alpha"] == 13 and d["beta"] == 5
    assert d["base_point"] == 3 and d["tier"] == "full"


def test_session_caches(sess):
    assert sess.table is sess.table
    assert sess.geometry is sess.geometry
    assert sess.duality is sess.duality
    assert sess.hypermap is sess.hypermap


def test_session_validation():
    with pytest.raises(ValueError):
        Session(0)
    with pytest.raises(ValueError):
        Session(1, tier="bogus")
    with pytest.raises(TierExceededError):
        Session(4, tier="full")
    # degree 5 has no triality: parameter error before any tier question
    from ovgeo.errors import NoTrialityError

    with pytest.raises(NoTrialityError):
        Session(2, tier="spot")


def test_all_suite_passes(report):
    assert report.passed
    assert [o.name for o in report.outcomes] == list(CHECKS)
    assert report.counts() == {"pass": 13, "fail": 0, "skipped": 0}


def test_canonical_json_shape(report):
    data = json.loads(report.canonical_json())
    assert data["schema"] == "ovgeo/1"
    assert data["kind"] == "verification-report"
    assert data["q"] == 8 and data["m"] == 5 and data["seed"] == 0
    assert data["passed"] is True
    assert len(data["checks"]) == 13
    assert all(c["status"] == "pass" for c in data["checks"])


def test_canonical_json_deterministic(sess, report):
    again = run_suite(sess, "all", 0)
    assert again.canonical_json() == report.canonical_json()


def test_seed_changes_only_sampled_details(sess, report):
    other = run_suite(sess, "all", 1)
    assert other.passed
    # statuses agree; sampled details may differ
    assert [o.status for o in other.outcomes] == [o.status for o in report.outcomes]


def test_named_suites(sess):
    for name, checks in SUITES.items():
        if name == "all":
            continue
        rep = run_suite(sess, name, 0)
        assert [o.name for o in rep.outcomes] == checks
        assert rep.passed
    with pytest.raises(ValueError):
        run_suite(sess, "nonsense", 0)


def test_spot_tier_at_q8():
    # the sampled code paths must agree with full tier where both run
    rep = run_suite(Session(1, 5, "spot"), "all", 0)
    statuses = {o.name: o.status for o in rep.outcomes}
    assert statuses["group_order"] == "skipped"
    assert statuses["chamber_system"] == "skipped"
    assert statuses["diagram"] == "skipped"
    assert all(
        v == "pass" for k, v in statuses.items()
        if k not in ("group_order", "chamber_system", "diagram")
    )
    assert rep.passed


def test_unrealizable_m_aborts():
    s = Session(1, 9, "full")
    with pytest.raises(NotRealizableError):
        run_suite(s, "triangle", 0)


def test_improper_m7_fails_honestly():
    rep = run_suite(Session(1, 7, "full"), "triangle", 0)
    assert not rep.passed
    assert rep.outcomes[0].status == "fail"
    assert rep.outcomes[0].details["proper"] is False


def test_field_info():
    fi = field_info(1)
    assert fi["q"] == 8 and fi["modulus"] == 0b1011 and fi["has_triality"]
    assert field_info(2)["has_triality"] is False
    with pytest.raises(ValueError):
        field_info(0)


def test_group_info():
    gi = group_info(1, enumerate_table=True)
    assert gi["order"] == 29120 and gi["enumerated"] == 29120
    assert gi["order_factors"] == [65, 64, 7]
    gi512 = group_info(4)
    assert gi512["order"] == 35115786567680
    assert "enumerated" not in gi512
    with pytest.raises(TierExceededError):
        group_info(4, enumerate_table=True)


def test_chamber_info(sess):
    ci = chamber_info(sess)
    assert ci["census_orders"] == [5, 7, 7, 7, 13, 13, 13]
    assert ci["base_involution_fingerprint"] == [19, 15, 52]
    assert ci["candidates_with_m"] == 1
    assert ci["triangle"]["proper"]


def test_export_data_targets(sess):
    assert len(export_data(sess, "incidence")["nodes"]) == 8736
    assert len(export_data(sess, "chamber-graph")["nodes"]) == 29120
    assert len(export_data(sess, "hypermap")["nodes"]) == 8736
    with pytest.raises(ValueError):
        export_data(sess, "nonsense")


def test_export_data_tier_gate():
    spot = Session(1, 5, "spot")
    with pytest.raises(TierExceededError):
        export_data(spot, "incidence")
