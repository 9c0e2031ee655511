"""Triality point action and the induced outer symmetry of the group."""

import random

import pytest

from ovgeo.errors import NoTrialityError
from ovgeo.gf2m import make_field
from ovgeo.ovoid_group import SuzukiGroup
from ovgeo.triality import make_triality


@pytest.fixture(scope="module")
def g8():
    return SuzukiGroup(make_field(3))


@pytest.fixture(scope="module")
def tau8(g8):
    return make_triality(g8)


@pytest.fixture(scope="module")
def g512():
    return SuzukiGroup(make_field(9))


@pytest.fixture(scope="module")
def tau512(g512):
    return make_triality(g512)


def test_requires_degree_divisible_by_three():
    g = SuzukiGroup(make_field(5))
    with pytest.raises(NoTrialityError):
        make_triality(g)


def test_exponents(tau8, tau512):
    assert tau8.exponent == 1
    assert tau512.exponent == 3


def test_point_action_squares_coordinates(g8, tau8):
    ov = g8.ovoid
    assert tau8.apply_point(ov.affine_index(2, 0)) == ov.affine_index(4, 0)
    f = g8.field
    for x in range(8):
        for y in range(8):
            img = tau8.apply_point(ov.affine_index(x, y))
            assert ov.coords(img) == (f.frobenius(x), f.frobenius(y))


def test_cube_is_identity_on_points(g8, tau8):
    for p in range(65):
        assert tau8.power_point(p, 3) == p


def test_fixed_points_q8(g8, tau8):
    ov = g8.ovoid
    expected = sorted(
        [0, ov.affine_index(0, 0), ov.affine_index(0, 1),
         ov.affine_index(1, 0), ov.affine_index(1, 1)]
    )
    assert tau8.fixed_points() == expected
    assert tau8.fixed_point_count() == 5
    assert len(tau8.subfield()) == 2
    # no other point is fixed
    fixed = set(tau8.fixed_points())
    for p in range(65):
        assert (tau8.apply_point(p) == p) == (p in fixed)


def test_element_conjugation_is_homomorphism(g8, tau8):
    tab = g8.enumerate()
    rng = random.Random(20)
    for _ in range(60):
        a = tab.element(rng.randrange(len(tab)))
        b = tab.element(rng.randrange(len(tab)))
        assert tau8.apply(a * b).fingerprint == (tau8.apply(a) * tau8.apply(b)).fingerprint


def test_conjugation_on_generators(g8, tau8):
    f = g8.field
    assert tau8.apply(g8.w()).fingerprint == g8.w().fingerprint
    for lam in range(2, 8):
        assert tau8.apply(g8.torus(lam)).fingerprint == g8.torus(f.frobenius(lam)).fingerprint
    for a in range(8):
        for b in range(8):
            if a or b:
                img = tau8.apply(g8.translation(a, b))
                assert img.fingerprint == g8.translation(f.frobenius(a), f.frobenius(b)).fingerprint


def test_cube_fixes_every_element(g8, tau8):
    tab = g8.enumerate()
    rng = random.Random(21)
    for _ in range(40):
        el = tab.element(rng.randrange(len(tab)))
        assert tau8.apply(tau8.apply(tau8.apply(el))).fingerprint == el.fingerprint


def test_triality_is_outer_q8(g8, tau8):
    """No group element conjugates every generator the way the triality does."""
    tab = g8.enumerate()
    probes = [g8.translation(1, 0), g8.translation(0, 1), g8.torus(g8.field.generator), g8.w()]
    targets = [tau8.apply(p).perm for p in probes]
    witnesses = 0
    for i in range(len(tab)):
        h = tab.element(i)
        hi = h.inverse()
        if all((h * p * hi).perm == t for p, t in zip(probes, targets)):
            witnesses += 1
    assert witnesses == 0


def test_point_action_q512(g512, tau512):
    ov = g512.ovoid
    f = g512.field
    rng = random.Random(22)
    for _ in range(300):
        x, y = rng.randrange(512), rng.randrange(512)
        img = tau512.apply_point(ov.affine_index(x, y))
        assert ov.coords(img) == (f.auto(x, 3), f.auto(y, 3))
        assert tau512.power_point(ov.affine_index(x, y), 3) == ov.affine_index(x, y)


def test_fixed_point_count_q512(tau512):
    assert len(tau512.subfield()) == 8
    assert tau512.fixed_point_count() == 65
    assert len(tau512.fixed_points()) == 65
    for p in tau512.fixed_points():
        assert tau512.apply_point(p) == p


def test_element_conjugation_q512(g512, tau512):
    rng = random.Random(23)
    el = g512.translation(13, 200) * g512.w() * g512.torus(77)
    img = tau512.apply(el)
    f = g512.field
    direct = g512.translation(f.auto(13, 3), f.auto(200, 3)) * g512.w() * g512.torus(f.auto(77, 3))
    assert img.fingerprint == direct.fingerprint
    t3 = tau512.apply(tau512.apply(tau512.apply(el)))
    assert t3.fingerprint == el.fingerprint
