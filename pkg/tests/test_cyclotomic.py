from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp

from chowla.cyclotomic import (
    CyclotomicNumber,
    apply_automorphism,
    cot_element,
    cyclotomic_polynomial,
    embed,
    euler_phi,
    format_polynomial,
    inv,
    lift,
    make_field,
    rational,
    sqrt3,
    zeta_pow,
)
from chowla.errors import FieldMismatch, NotAUnit, NotDivisible, OutOfRange

from conftest import numeric_value, rand_element


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@pytest.mark.parametrize("n", range(1, 61))
def test_polynomial_matches_sympy(n):
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(n)) == [int(c) for c in expected]


def test_phi12_and_phi6():
    assert format_polynomial(cyclotomic_polynomial(12)) == "x^4 - x^2 + 1"
    assert cyclotomic_polynomial(6) == (1, -1, 1)


@pytest.mark.parametrize("n", [1, 2, 12, 30, 60])
def test_divisor_product_is_xn_minus_one(n):
    prod = [1]
    for d in sympy.divisors(n):
        prod = _poly_mul(prod, cyclotomic_polynomial(d))
    assert prod == [-1] + [0] * (n - 1) + [1]


def test_euler_phi_matches_sympy():
    assert all(euler_phi(n) == sympy.totient(n) for n in range(1, 200))


def test_sqrt3_squares_to_three():
    s = sqrt3()
    assert s * s == rational(3, 12)
    assert abs(s.to_complex() - math.sqrt(3)) < 1e-15


def test_sqrt3_automorphisms():
    s = sqrt3()
    assert apply_automorphism(s, 5) == -s
    assert apply_automorphism(s, 11) == s


def test_zeta_power_wraps():
    K = make_field(12)
    z = K.gen()
    assert z**12 == K.one()
    assert zeta_pow(K, 13) == z
    assert zeta_pow(K, -1) == z.conjugate()


def test_canonical_form_equality():
    K = make_field(7)
    # 1 + z + ... + z^6 = 0 in Q(zeta_7)
    total = sum((zeta_pow(K, k) for k in range(7)), K.zero())
    assert total.is_zero()


def test_cross_field_comparison_raises():
    with pytest.raises(FieldMismatch):
        _ = make_field(5).one() == make_field(7).one()


def test_lift_and_not_divisible():
    z4 = zeta_pow(4, 1)
    assert lift(z4, 12) == zeta_pow(12, 3)
    with pytest.raises(NotDivisible):
        lift(z4, 6)


def test_automorphism_needs_unit():
    with pytest.raises(NotAUnit):
        apply_automorphism(zeta_pow(12, 1), 3)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        inv(make_field(5).zero())


@pytest.mark.parametrize("r,q,expected", [(1, 2, 0.0), (1, 4, 1.0), (1, 12, 2 + math.sqrt(3)), (1, 3, 1 / math.sqrt(3))])
def test_cot_values(r, q, expected):
    assert abs(cot_element(r, q).to_complex() - expected) < 1e-12


def test_cot_out_of_range():
    with pytest.raises(OutOfRange):
        cot_element(0, 5)


def test_cot_matches_mpmath():
    with mp.workdps(50):
        for q in range(2, 20):
            for r in range(1, q):
                err = abs(numeric_value(cot_element(r, q), 50) - mp.cot(mp.pi * r / q))
                assert err < mp.mpf("1e-40")


def test_json_roundtrip():
    a = make_field(12).element([Fraction(1, 2), -3, 0, Fraction(5, 7)])
    assert CyclotomicNumber.from_json(a.to_json()) == a


def test_embed_contains_independent_value():
    rng = random.Random(5)
    for _ in range(20):
        a = rand_element(rng, rng.choice([5, 8, 12, 15]))
        with mp.workprec(400):
            assert embed(a, 256).contains(numeric_value(a, 110))
        assert embed(a, 256).width() < mp.mpf("1e-70")


orders = st.sampled_from([1, 3, 4, 5, 8, 12, 15, 24])


@st.composite
def elements(draw, N=None):
    N = N or draw(orders)
    K = make_field(N)
    coeffs = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=K.degree, max_size=K.degree))
    return K.element(coeffs)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_field_axioms(data):
    N = data.draw(orders)
    a, b, c = (data.draw(elements(N)) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - b) + b == a
    if not a.is_zero():
        assert a * a.inv() == make_field(N).one()


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_embedding_is_ring_homomorphism(data):
    N = data.draw(orders)
    a, b = data.draw(elements(N)), data.draw(elements(N))
    assert abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-9 * (1 + abs(a.to_complex() * b.to_complex()))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_automorphism_is_multiplicative(data):
    N = data.draw(st.sampled_from([5, 8, 12, 15]))
    t = data.draw(st.sampled_from([u for u in range(1, N) if math.gcd(u, N) == 1]))
    a, b = data.draw(elements(N)), data.draw(elements(N))
    assert apply_automorphism(a * b, t) == apply_automorphism(a, t) * apply_automorphism(b, t)
    assert apply_automorphism(a + b, t) == apply_automorphism(a, t) + apply_automorphism(b, t)
