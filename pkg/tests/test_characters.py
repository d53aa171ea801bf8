from __future__ import annotations

import cmath
import itertools
import math
import random

import pytest
import sympy

from chowla.characters import (
    DirichletCharacter,
    conductor,
    enumerate_characters,
    eval_character,
    is_primitive,
    is_principal,
    multiplicative_order,
    orthogonality_check,
    unit_group,
)
from chowla.cyclotomic import lift
from chowla.errors import NotAUnit
from chowla.periodic import from_character, period_sum


def _units(q):
    return [n for n in range(1, q + 1) if math.gcd(n, q) == 1]


def _same(a, b):
    M = math.lcm(a.order, b.order)
    return lift(a, M) == lift(b, M)


def _demo_character(pattern):
    for chi in enumerate_characters(12):
        if [chi(n) for n in (1, 5, 7, 11)] == pattern:
            return chi
    raise AssertionError(pattern)


def test_unit_group_examples():
    assert unit_group(7).orders == (6,)
    assert unit_group(2).generators == ()
    assert unit_group(12).size == 4
    assert unit_group(16).orders in ((2, 4), (4, 2))


@pytest.mark.parametrize("q", range(1, 41))
def test_character_count_and_distinct_values(q):
    chars = enumerate_characters(q)
    assert len(chars) == sympy.totient(q)
    tables = {tuple(chi.values()) for chi in chars}
    assert len(tables) == len(chars)
    assert is_principal(chars[0]) and not any(is_principal(c) for c in chars[1:])


@pytest.mark.parametrize("q", [3, 8, 12, 15, 16, 21, 24])
def test_completely_multiplicative_and_periodic(q):
    rng = random.Random(q)
    for chi in enumerate_characters(q):
        for _ in range(30):
            n, m = rng.randint(-50, 50), rng.randint(-50, 50)
            assert chi(n * m) == chi(n) * chi(m)
            assert chi(n + q) == chi(n)


@pytest.mark.parametrize("q", range(1, 25))
def test_group_law_closed(q):
    chars = enumerate_characters(q)
    tables = [chi.values() for chi in chars]
    for a in chars:
        for b in chars:
            assert (a * b).values() in tables


def test_values_match_brute_force_generator_powers():
    # chi is fixed by its values on the generators; recompute from scratch

    q = 21
    grp = unit_group(q)
    for chi in enumerate_characters(q):
        for n in _units(q):
            # find exponents by brute force
            for exps in itertools.product(*(range(o) for o in grp.orders)):
                if math.prod(pow(g, e, q) for g, e in zip(grp.generators, exps)) % q == n:
                    break
            angle = sum(c * e / o for c, e, o in zip(chi.exponents, exps, grp.orders))
            assert abs(chi(n).to_complex() - cmath.exp(2j * cmath.pi * angle)) < 1e-12


def test_zero_off_units():
    chi = enumerate_characters(12)[1]
    assert all(eval_character(chi, n).is_zero() for n in (2, 3, 4, 6, 12, 0))


@pytest.mark.parametrize("q", range(1, 41))
def test_orthogonality(q):
    assert orthogonality_check(q)


def test_principal_examples():
    assert is_principal(DirichletCharacter(12, (0, 0)))
    assert is_principal(enumerate_characters(1)[0])
    assert not is_principal(_demo_character([1, 1, -1, -1]))


def test_conductor_examples():
    assert conductor(enumerate_characters(12)[0]) == 1
    assert conductor(_demo_character([1, 1, -1, -1])) == 4
    assert conductor(_demo_character([1, -1, 1, -1])) == 3
    assert not is_primitive(_demo_character([1, 1, -1, -1]))
    assert is_primitive(_demo_character([1, -1, -1, 1]))


@pytest.mark.parametrize("q", [8, 12, 15, 20, 24, 36])
def test_conductor_divides_and_induces(q):
    for chi in enumerate_characters(q):
        d = conductor(chi)
        assert q % d == 0
        prim = [psi for psi in enumerate_characters(d) if all(_same(psi(n), chi(n)) for n in _units(q))]
        assert prim and is_primitive(prim[0])


def test_multiplicative_order():
    assert multiplicative_order(2, 7) == 3
    assert multiplicative_order(1, 9) == 1
    assert multiplicative_order(3, 5) == 4
    with pytest.raises(NotAUnit):
        multiplicative_order(2, 8)


@pytest.mark.parametrize("q", range(3, 25))
def test_nonprincipal_period_sum_vanishes(q):
    for chi in enumerate_characters(q)[1:]:
        assert period_sum(from_character(chi)).is_zero()


def test_json_roundtrip():
    for chi in enumerate_characters(15):
        assert DirichletCharacter.from_json(chi.to_json()) == chi
