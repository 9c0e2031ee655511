"""Acceptance gate: twelve criteria, one pass/fail line each.

Run with -s to see the per-criterion lines as they execute.
"""

import random
import time

import pytest

from ovgeo import SuzukiGroup, make_field, make_triality
from ovgeo.chamber_system import (
    flag_transitivity_product_facts,
    residual_connectedness_facts,
    triangle_facts,
)
from ovgeo.cli import main
from ovgeo.coset_geometry import (
    correlation_summary,
    diagram_facts,
    flag_transitivity_facts,
    triality_correlation_facts,
)
from ovgeo.hypermap import duality_absence_facts, hypermap_facts, triality_operation_facts
from ovgeo.reports import CHECKS, Session


def _criterion(n: int, name: str, ok: bool) -> None:
    print(f"AC{n:02d} {name}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"acceptance criterion {n} ({name}) failed"


@pytest.fixture(scope="module")
def full():
    return Session(1, 5, "full")


@pytest.fixture(scope="module")
def spot():
    return Session(4, 5, "spot")


def test_ac01_group_order():
    t0 = time.perf_counter()
    g = SuzukiGroup(make_field(3))
    table = g.enumerate()
    elapsed = time.perf_counter() - t0
    q = 8
    ok = len(table) == 29120 == (q * q + 1) * q * q * (q - 1) and elapsed < 10.0
    _criterion(1, "group order 29120 by enumeration", ok)


def test_ac02_ovoid(full):
    ok, details = CHECKS["ovoid_points"](full, random.Random("ac:2"))
    ok = ok and details["points"] == 65 and details["membership_mode"] == "exhaustive"
    _criterion(2, "ovoid of 65 points preserved by generators and products", ok)


def test_ac03_census(full):
    cf = full.census
    ok = (
        len(cf["orders"]) == 7
        and cf["orders"] == [5, 7, 7, 7, 13, 13, 13]
        and cf["pairwise_nonconjugate"]
        and sum(1 for d in cf["orders"] if d == 5) == 1
    )
    _criterion(3, "census multiset {5,7,7,7,13,13,13} pairwise non-conjugate", ok)


def test_ac04_triangle(full):
    tf = triangle_facts(full.triangle)
    ok = (
        not tf["degenerate"]
        and tf["proper"]
        and tf["sizes"] == [5, 5, 5]
        and all(len(v) == 1 for v in tf["pairwise_intersections"].values())
        and tf["triple_intersection"] == []
    )
    _criterion(4, "m=5 triangle proper and non-degenerate", ok)


def test_ac05_chamber_system(full):
    from ovgeo.chamber_system import chamber_system_facts

    cf = chamber_system_facts(full.chamber_system, random.Random("ac:5"), samples=1000)
    ok = (
        cf["chambers"] == 29120
        and cf["thin"]
        and cf["connected"]
        and cf["geometric_adjacency"]["ok"]
        and cf["geometric_adjacency"]["checked"] >= 1000
    )
    _criterion(5, "29120 thin connected chambers, geometric cross-check", ok)


def test_ac06_residual_connectedness(full):
    rc = residual_connectedness_facts(full.triangle)
    ok = rc["ok"] and rc["triples"] == 512 and rc["failures"] == []
    _criterion(6, "residual connectedness over all 512 subset triples", ok)


def test_ac07_flag_transitivity(full):
    ft = flag_transitivity_product_facts(full.triangle)
    gf = flag_transitivity_facts(full.geometry)
    ok = (
        ft["ok"]
        and all(r["intersection_size"] == 4 for r in ft["rows"])
        and gf["chamber_count"] == 29120
        and gf["regular"]
    )
    _criterion(7, "flag transitivity: 4-element intersections, regular action", ok)


def test_ac08_diagram(full):
    df = diagram_facts(full.geometry)
    ok = df["all_equal_m"] and df["per_type_gonalities"] == [[5], [5], [5]]
    _criterion(8, "all rank-2 residues have gonality 5", ok)


def test_ac09_correlations(full):
    tc = triality_correlation_facts(full.geometry, full.tau)
    du = full.duality
    summary = correlation_summary(full.group, du)
    transp = [r for r in du["meta"] if r["is_transposition"]]
    ok = (
        tc["ok"]
        and tc["order_three"]
        and tc["incidence_preserving"]
        and len(transp) == 9
        and all(r["solutions"] == 0 for r in transp)
        and summary["correlations"] == 87360
    )
    _criterion(9, "triality correlation of order 3, no dualities, |Cor|=87360", ok)


def test_ac10_hypermap(full):
    hf = hypermap_facts(full.hypermap, random.Random("ac:10"))
    op = triality_operation_facts(full.hypermap, full.tau)
    da = duality_absence_facts(full.duality)
    ok = (
        hf["type"] == [5, 5, 5]
        and hf["flags"] == 29120
        and hf["hypervertices"] == hf["hyperedges"] == hf["hyperfaces"] == 2912
        and hf["regular"]
        and op["ok"]
        and da["no_dualities"]
    )
    _criterion(10, "regular (5,5,5) hypermap with triality, no dualities", ok)


def test_ac11_spot_q512(spot):
    ok_laws, laws = CHECKS["field_laws"](spot, random.Random("ac:11"))
    tau_ok = spot.tau.fixed_point_count() == 65 and all(
        spot.tau.power_point(p, 3) == p for p in (0, 1, 2, 77, 100000)
    )
    cf = spot.census
    base_ok = sum(1 for d in cf["orders"] if d == 5) == 1
    tf = triangle_facts(spot.triangle)
    tri_ok = tf["proper"] and not tf["degenerate"]
    ft = flag_transitivity_product_facts(spot.triangle)
    transp = [r for r in spot.duality["meta"] if r["is_transposition"]]
    du_ok = len(transp) == 27 and all(r["solutions"] == 0 for r in transp)
    ok = (
        ok_laws
        and laws["samples"] >= 10**4
        and tau_ok
        and base_ok
        and tri_ok
        and ft["ok"]
        and du_ok
    )
    _criterion(11, "spot tier q=512 invariant suites", ok)


def test_ac12_determinism(tmp_path):
    p1, p2 = tmp_path / "r1.json", tmp_path / "r2.json"
    c1 = main(["verify", "--e", "1", "--m", "5", "--suite", "all",
               "--tier", "full", "--seed", "0", "--json", str(p1)])
    c2 = main(["verify", "--e", "1", "--m", "5", "--suite", "all",
               "--tier", "full", "--seed", "0", "--json", str(p2)])
    ok = c1 == 0 and c2 == 0 and p1.read_bytes() == p2.read_bytes()
    _criterion(12, "byte-identical verify reports at fixed seed", ok)
