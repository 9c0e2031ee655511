"""Field layer: modulus selection, tables, twist and automorphism laws."""

import random

import pytest

from ovgeo.errors import DegreeTooSmallError, EvenDegreeError
from ovgeo.gf2m import FieldParams, is_irreducible, make_field, smallest_irreducible


# -- independent slow-path oracles, deliberately not sharing code with the package


def _slow_mul(a: int, b: int, modulus: int, degree: int) -> int:
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if (a >> degree) & 1:
            a ^= modulus
    return acc


def _slow_rem(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm and a:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def _slow_irreducible(m: int) -> bool:
    d = m.bit_length() - 1
    for f in range(2, 1 << (d // 2 + 1)):
        if f.bit_length() - 1 >= 1 and _slow_rem(m, f) == 0:
            return False
    return True


def test_modulus_is_smallest_irreducible_degree3():
    # oracle: trial-division sieve over every degree-3 polynomial
    expected = None
    for m in range(1 << 3, 1 << 4):
        if _slow_irreducible(m):
            expected = m
            break
    assert expected == 0b1011
    assert make_field(3).modulus == 0b1011


def test_modulus_choices_match_sieve_for_small_degrees():
    for d in (3, 5, 7, 9, 11, 13):
        cands = [m for m in range(1 << d, 1 << (d + 1)) if _slow_irreducible(m)]
        assert smallest_irreducible(d) == cands[0]


def test_is_irreducible_agrees_with_trial_division():
    for m in range(1 << 3, 1 << 6):
        assert is_irreducible(m) == _slow_irreducible(m), bin(m)


def test_degree_validation():
    with pytest.raises(EvenDegreeError):
        make_field(4)
    with pytest.raises(DegreeTooSmallError):
        make_field(1)


def test_basic_parameters():
    f = make_field(3)
    assert (f.q, f.e, f.r) == (8, 1, 4)
    assert f.r * f.r == 2 * f.q
    assert f.triality_exponent == 1
    f9 = make_field(9)
    assert (f9.q, f9.r, f9.triality_exponent) == (512, 32, 3)
    assert f9.r * f9.r == 2 * f9.q
    assert make_field(5).triality_exponent is None


def test_multiplication_table_against_slow_oracle():
    f = make_field(3)
    for a in range(8):
        for b in range(8):
            assert f.mul(a, b) == _slow_mul(a, b, f.modulus, 3)
    # frozen sample values
    assert f.mul(3, 5) == 4
    assert f.inv(2) == 5
    assert f.mul(2, 5) == 1


def test_multiplication_sampled_against_slow_oracle_q512():
    f = make_field(9)
    rng = random.Random(0)
    for _ in range(2000):
        a, b = rng.randrange(512), rng.randrange(512)
        assert f.mul(a, b) == _slow_mul(a, b, f.modulus, 9)


def test_twist_and_frobenius_values():
    f = make_field(3)
    assert f.theta(2) == 6
    assert f.frobenius(2) == 4
    for x in range(8):
        assert f.theta(f.theta(x)) == f.frobenius(x)
        assert f.frobenius(x) == f.mul(x, x)
        assert f.theta_inv(f.theta(x)) == x
        assert f.auto(x, 0) == x


def test_twist_squares_to_frobenius_q512():
    f = make_field(9)
    for x in range(512):
        assert f.theta(f.theta(x)) == f.frobenius(x)
        assert f.auto(f.auto(x, 4), 5) == x


def test_automorphisms_are_additive_and_multiplicative():
    f = make_field(3)
    for a in range(8):
        for b in range(8):
            assert f.theta(a ^ b) == f.theta(a) ^ f.theta(b)
            assert f.theta(f.mul(a, b)) == f.mul(f.theta(a), f.theta(b))


def test_field_laws_sampled_q512():
    f = make_field(9)
    rng = random.Random(1)
    for _ in range(10_000):
        a, b, c = rng.randrange(512), rng.randrange(512), rng.randrange(512)
        assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
        assert f.mul(a, b ^ c) == f.mul(a, b) ^ f.mul(a, c)
        assert f.theta(a ^ b) == f.theta(a) ^ f.theta(b)
        if a:
            assert f.mul(a, f.inv(a)) == 1
            assert f.pow(a, f.q - 1) == 1


def test_inverse_and_pow_edge_cases():
    f = make_field(3)
    with pytest.raises(ZeroDivisionError):
        f.inv(0)
    with pytest.raises(ZeroDivisionError):
        f.pow(0, -1)
    assert f.pow(0, 0) == 1
    assert f.pow(0, 5) == 0
    assert f.pow(3, -1) == f.inv(3)
    for x in range(1, 8):
        assert f.pow(x, 7) == 1


def test_construction_is_deterministic():
    a, b = make_field(9), make_field(9)
    assert a.modulus == b.modulus
    assert a.generator == b.generator
    assert a.exp == b.exp


def test_explicit_modulus_must_be_irreducible():
    with pytest.raises(ValueError):
        FieldParams(3, modulus=0b1111)
