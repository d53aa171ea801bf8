from __future__ import annotations

import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chowla.characters import enumerate_characters
from chowla.cyclotomic import lift, make_field, rational, sqrt3
from chowla.errors import LengthMismatch, ModulusMismatch, NotAUnit, NotPrime, OutOfRange
from chowla.linalg import in_span
from chowla.lvalue import odd_exact_value, odd_kernel_basis
from chowla.periodic import (
    PeriodicFunction,
    b_twist,
    bbw_span_generators,
    chowla12_demo,
    cmp_even_generators,
    condition_i,
    condition_ii,
    dft,
    euler_damped,
    evaluate,
    from_character,
    from_values,
    galois_twist,
    idft,
    is_even,
    is_odd,
    lift_period,
    parity_split,
    period_sum,
    zero_function,
)

from conftest import rand_function


def _ints(f):
    return [int(v.rational_value()) for v in f.values]


# construction and evaluation -------------------------------------------------


def test_from_values_examples():
    assert _ints(from_values(3, [1, 1, 1])) == [1, 1, 1]
    assert from_values(4, [1, -3, 1, 1]) == euler_damped(2)
    assert from_values(1, [0]).is_zero()
    with pytest.raises(LengthMismatch):
        from_values(3, [1, 2])


def test_evaluate_storage_convention():
    f = euler_damped(2)
    assert evaluate(f, -1) == rational(1)
    assert evaluate(f, 0) == f.values[-1]
    rng = random.Random(0)
    g = rand_function(rng, 7)
    for _ in range(20):
        n = rng.randint(-100, 100)
        assert g(n + 7) == g(n)


def test_period_sum_examples():
    assert period_sum(euler_damped(2)).is_zero()
    assert period_sum(from_values(3, [1, 1, 1])) == rational(3)
    assert period_sum(from_character(enumerate_characters(12)[1])).is_zero()


def test_parity_examples(rng):
    chi_a, _, _ = chowla12_demo()
    odd, even = parity_split(chi_a)
    assert odd == chi_a and even.is_zero()
    odd, even = parity_split(euler_damped(2))
    assert odd.is_zero() and even == euler_damped(2)
    f = rand_function(rng, 11)
    odd, even = parity_split(f)
    assert odd + even == f
    assert is_odd(odd) and is_even(even)
    assert all(odd(11 - n) == -odd(n) for n in range(1, 12))


# Fourier pair ----------------------------------------------------------------


def test_dft_examples():
    g = dft(from_values(5, [1] * 5))
    assert all(v.is_zero() for v in g.values[:-1]) and g.values[-1].rational_value() == 1
    assert _ints(dft(euler_damped(2))) == [1, -1, 1, 0]


def test_dft_matches_direct_sum(rng):
    for q in (3, 6, 10):
        f = rand_function(rng, q)
        g = dft(f)
        for s in range(1, q + 1):
            direct = sum(f(r).to_complex() * cmath.exp(-2j * cmath.pi * r * s / q) for r in range(1, q + 1)) / q
            assert abs(g(s).to_complex() - direct) < 1e-9


def test_idft_examples():
    delta = from_values(6, [0] * 5 + [1])
    assert idft(delta) == from_values(6, [1] * 6)
    assert idft(dft(euler_damped(3))) == euler_damped(3)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 36), st.integers(0, 2**32))
def test_fourier_inversion(q, seed):
    f = rand_function(random.Random(seed), q)
    assert idft(dft(f)) == f


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 30), st.integers(0, 2**32))
def test_period_sum_iff_g0(q, seed):
    f = rand_function(random.Random(seed), q)
    assert period_sum(f).is_zero() == dft(f)(0).is_zero()


def test_lift_period_examples(rng):
    f = rand_function(rng, 5)
    assert lift_period(f, 1) == f
    F = lift_period(f, 3)
    assert period_sum(F) == period_sum(f) * 3
    g = dft(F)
    assert all(g(s).is_zero() for s in range(1, 16) if s % 3)
    with pytest.raises(OutOfRange):
        lift_period(f, 0)


# conditions and twists -------------------------------------------------------


def test_condition_i_examples():
    assert condition_i(from_values(7, range(7)))
    assert not condition_i(euler_damped(2))
    assert condition_i(from_character(enumerate_characters(12)[2]))


def test_condition_ii_examples():
    _, _, f = chowla12_demo()
    assert not condition_ii(f)
    assert condition_ii(from_values(7, [1, 2, 0, 0, -1, 3, 0]))
    assert condition_ii(from_values(4, [1, 5, 2, 0]))


@pytest.mark.parametrize("q", [3, 5, 7, 11, 13])
def test_condition_ii_corollary_for_rational(q):
    assert math.gcd(q, q - 1) == 1
    f = from_values(q, [Fraction(n * n % 5, 3) for n in range(q)])
    assert condition_ii(f)


def test_galois_twist_examples(rng):
    f = rand_function(rng, 12)
    assert galois_twist(f, 1) == f
    r = from_values(10, range(10))
    tw = galois_twist(r, 3)
    h = 7  # 3^-1 mod 10
    assert all(tw(n) == r(h * n) for n in range(1, 11))
    with pytest.raises(NotAUnit):
        galois_twist(f, 2)


def test_b_twist_examples():
    chi0 = enumerate_characters(3)[0]
    assert _ints(b_twist(from_values(3, [1, 0, 0]), chi0)) == [1, 1, 0]
    assert b_twist(zero_function(5), enumerate_characters(5)[1]).is_zero()
    with pytest.raises(ModulusMismatch):
        b_twist(zero_function(5), enumerate_characters(7)[1])


# named functions -------------------------------------------------------------


def test_euler_damped_examples():
    assert _ints(euler_damped(2)) == [1, -3, 1, 1]
    f = euler_damped(3)
    assert (f(3), f(9), f(1)) == (rational(-5), rational(4), rational(1))
    assert all(f(n + 9) == f(n) for n in range(-10, 10))
    with pytest.raises(NotPrime):
        euler_damped(4)


def test_chowla12_demo():
    chi_a, chi_b, f = chowla12_demo()
    units = (1, 5, 7, 11)
    assert [int(chi_a(n).rational_value()) for n in units] == [1, 1, -1, -1]
    assert [int(chi_b(n).rational_value()) for n in units] == [1, -1, 1, -1]
    for chi in (chi_a, chi_b):
        for m in units:
            for n in units:
                assert chi(m * n) == chi(m) * chi(n)
    assert f(1) == rational(2, 12) - sqrt3()
    assert period_sum(f).is_zero()
    assert f == chi_b.scale(2) - chi_a.scale(sqrt3())


def test_bbw_generator_shape():
    gens = bbw_span_generators(5)
    assert len(gens) == 1 and gens[0].modulus == 10
    for q in (5, 7, 8, 9, 10):
        for g in bbw_span_generators(q):
            assert g(1) == rational(1, g.field_order)
            assert all(g(k * q).is_zero() for k in (1, 2))
            # sin^l is q-antiperiodic for odd l; the cosine weight flips the sign back
            sign = 1 if q % 2 == 0 else -1
            assert all(g(n + q) == g(n) * sign for n in range(1, q + 1))
    assert len(bbw_span_generators(8)) == 2
    with pytest.raises(OutOfRange):
        bbw_span_generators(2)


def test_bbw_generators_against_sine_powers():
    q = 7
    for l, g in zip(range(3, q - 1, 2), bbw_span_generators(q)):
        for n in range(1, 2 * q + 1):
            expected = (math.sin(n * math.pi / q) / math.sin(math.pi / q)) ** l
            assert abs(g(n).to_complex() - expected) < 1e-9


@pytest.mark.parametrize("q", range(5, 13))
def test_alternating_bbw_contains_odd_kernel(q):
    gens = bbw_span_generators(q, alternating=True)
    assert all(g.modulus == q and is_odd(g) for g in gens)
    assert all(odd_exact_value(g).is_zero() for g in gens)
    M = math.lcm(*(g.field_order for g in gens))
    vecs = [[lift(v, M) for v in g.values] for g in gens]
    for f in odd_kernel_basis(q):
        K = math.lcm(M, f.field_order)
        assert in_span([[lift(v, K) for v in vec] for vec in vecs], [lift(v, K) for v in f.values]) is not None


def test_cmp_generator_counts():
    assert cmp_even_generators(3) == []
    assert len(cmp_even_generators(4)) == 1
    assert all(period_sum(g).is_zero() for q in (6, 8, 12) for g in cmp_even_generators(q))


def test_json_roundtrip(rng):
    f = rand_function(rng, 6)
    assert PeriodicFunction.from_json(f.to_json()) == f
    g = PeriodicFunction.from_json({"modulus": 4, "rational_values": ["1", "-3", "1", "1"]})
    assert g == euler_damped(2)
