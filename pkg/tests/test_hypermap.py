"""Hypermap structure, triality operation and duality absence at q=8."""

import random

import pytest

from ovgeo import SuzukiGroup, make_field, make_triality
from ovgeo.chamber_system import build_triangle, find_base_involution
from ovgeo.coset_geometry import duality_search
from ovgeo.hypermap import (
    alpha_beta_facts,
    build_hypermap,
    duality_absence_facts,
    hypermap_facts,
    triality_operation_facts,
    triality_operation_sampled,
)


@pytest.fixture(scope="module")
def g8():
    return SuzukiGroup(make_field(3))


@pytest.fixture(scope="module")
def tau8(g8):
    return make_triality(g8)


@pytest.fixture(scope="module")
def tri8(g8, tau8):
    rho0, _ = find_base_involution(g8, tau8, 3, 5)
    return build_triangle(g8, rho0, tau8)


@pytest.fixture(scope="module")
def hm8(g8, tri8):
    return build_hypermap(g8, tri8)


def test_alpha_beta_q8(g8):
    ab = alpha_beta_facts(g8.field)
    assert ab["alpha"] == 13 and ab["beta"] == 5
    assert ab["product_is_point_count"]
    assert ab["selector_mod3"] == 5 and ab["selector_is_2_mod_3"]
    assert ab["five_divides_point_count"] and ab["five_divides"] == 5


def test_alpha_beta_other_degrees():
    ab9 = alpha_beta_facts(make_field(9))
    assert (ab9["alpha"], ab9["beta"]) == (545, 481)
    assert ab9["selector_mod3"] == 545 and ab9["five_divides"] == 545
    # degree 5: the 5-divisor and the mod-3 selector are different factors
    ab5 = alpha_beta_facts(make_field(5))
    assert (ab5["alpha"], ab5["beta"]) == (41, 25)
    assert ab5["selector_mod3"] == 41 and ab5["five_divides"] == 25


def test_hypermap_counts(hm8):
    rng = random.Random(0)
    hf = hypermap_facts(hm8, rng)
    assert hf["type"] == [5, 5, 5] and hf["uniform_type_m"]
    assert hf["flags"] == 29120
    assert hf["hypervertices"] == hf["hyperedges"] == hf["hyperfaces"] == 2912
    assert hf["counts_equal"]
    assert hf["connected"] and hf["regular"]


def test_hypermap_euler(hm8):
    # chi = V + E + F - flags/2 with all orbit counts 2912
    assert hm8.euler_characteristic() == 3 * 2912 - 29120 // 2 == -5824
    # the color-pair words generate the whole (simple) group, so no
    # index-2 even subgroup exists and the hypermap is non-orientable
    assert hm8.orientable() is False
    rng = random.Random(0)
    assert hypermap_facts(hm8, rng)["genus"] == 2 + 5824


def test_triality_operation_exact(hm8, tau8):
    tof = triality_operation_facts(hm8, tau8)
    assert tof["bijective"]
    assert tof["shifts_colors"]
    assert tof["order_three"]
    assert tof["orbit_classes_cycle"]
    assert tof["ok"]


def test_triality_operation_sampled(g8, tri8, tau8):
    out = triality_operation_sampled(g8, tri8, tau8, random.Random(1))
    assert out["ok"] and out["checked"] == 40


def test_duality_absence(g8, tri8):
    du = duality_search(g8, tri8)
    da = duality_absence_facts(du)
    assert da["transposition_rows"] == 9
    assert da["transposition_solutions"] == 0
    assert da["no_dualities"]
