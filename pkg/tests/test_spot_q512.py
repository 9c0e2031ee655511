"""Spot-tier checks at q=512: sampled laws, triangle, duality scan."""

import random

import pytest

from ovgeo.chamber_system import (
    flag_transitivity_product_facts,
    residual_connectedness_facts,
    triangle_facts,
)
from ovgeo.coset_geometry import correlation_summary
from ovgeo.fastops import VectorOvoid
from ovgeo.hypermap import alpha_beta_facts
from ovgeo.reports import CHECKS, Session, run_suite


@pytest.fixture(scope="module")
def sess():
    return Session(4, 5, "spot")


def test_parameters(sess):
    d = sess.describe()
    assert d["q"] == 512
    assert d["order"] == 35115786567680
    assert d["alpha"] == 545 and d["beta"] == 481
    assert d["points"] == 262145
    assert sess.base_point == 3


def test_field_laws_sampled(sess):
    ok, details = CHECKS["field_laws"](sess, random.Random("0:field_laws"))
    assert ok
    assert details["mode"] == "sampled" and details["samples"] >= 10**4


def test_triality_fixed_points(sess):
    assert sess.tau.fixed_point_count() == 65
    assert len(sess.tau.fixed_points()) == 65
    rng = random.Random(1)
    for _ in range(30):
        p = rng.randrange(262145)
        assert sess.tau.power_point(p, 3) == p


def test_census(sess):
    cf = sess.census
    assert cf["multiset_matches"] and cf["all_odd"] and cf["coprime_parts"]
    assert sum(1 for d in cf["orders"] if d == 5) == 1
    assert len(cf["orders"]) == 511


def test_triangle(sess):
    tri = sess.triangle
    assert tri.rho[0].fingerprint == (222723, 134612, 245916)
    tf = triangle_facts(tri)
    assert tf["proper"] and not tf["degenerate"]
    assert tf["sizes"] == [5, 5, 5]
    assert tf["pairwise_are_third_fixed_points"]
    assert tf["triple_intersection"] == []


def test_residual_connectedness(sess):
    rc = residual_connectedness_facts(sess.triangle)
    assert rc["ok"] and rc["triples"] == 512


def test_flag_transitivity_products(sess):
    ft = flag_transitivity_product_facts(sess.triangle)
    assert ft["ok"]
    for row in ft["rows"]:
        assert row["product_set_size"] == 50
        assert row["intersection_size"] == 4


def test_duality_scan(sess):
    du = sess.duality
    assert len(du["rows"]) == 54
    solvable = sorted(k for k, v in du["rows"].items() if v)
    assert solvable == ["t0_p012", "t3_p120", "t6_p201"]
    transp = [r for r in du["meta"] if r["is_transposition"]]
    assert len(transp) == 27
    assert all(r["solutions"] == 0 for r in transp)
    summary = correlation_summary(sess.group, du)
    assert summary["correlation_index"] == 3
    assert summary["no_dualities"]
    assert summary["correlations"] == 3 * 35115786567680


def test_alpha_beta(sess):
    ab = alpha_beta_facts(sess.field)
    assert ab["alpha"] == 545 and ab["beta"] == 481
    assert ab["selector_mod3"] == 545
    assert ab["five_divides"] == 545


def test_vectorized_ops_match_scalar(sess):
    vec = VectorOvoid(sess.group)
    import numpy as np

    rng = random.Random(17)
    f = sess.field
    for _ in range(15):
        word = []
        for _ in range(rng.randrange(1, 6)):
            kind = rng.randrange(4)
            if kind == 0:
                word.append(("T", rng.randrange(f.q), rng.randrange(f.q)))
            elif kind == 1:
                word.append(("M", 1 + rng.randrange(f.q - 1)))
            elif kind == 2:
                word.append(("W",))
            else:
                word.append(("F", rng.randrange(1, f.degree)))
        g = sess.group.from_word(tuple(word))
        pts = [rng.randrange(262145) for _ in range(50)]
        got = vec.eval_word(tuple(word), np.array(pts, dtype=np.int64))
        want = [g.apply(p) for p in pts]
        assert got.tolist() == want


def test_spot_suite_deterministic(sess):
    rep = run_suite(sess, "all", 0)
    statuses = {o.name: o.status for o in rep.outcomes}
    assert rep.passed
    assert statuses["group_order"] == "skipped"
    assert statuses["chamber_system"] == "skipped"
    assert statuses["diagram"] == "skipped"
    assert sum(1 for v in statuses.values() if v == "pass") == 10
    again = run_suite(sess, "all", 0)
    assert again.canonical_json() == rep.canonical_json()
