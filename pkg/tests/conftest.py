from __future__ import annotations

import random
from fractions import Fraction

import pytest
from mpmath import mp

from chowla.cyclotomic import make_field
from chowla.periodic import from_values


def numeric_value(v, dps: int = 60):
    """Power-basis coefficients summed against exp(2 pi i k / N) in plain mpmath."""
    with mp.workdps(dps):
        return sum(
            (mp.mpf(c.numerator) / c.denominator * mp.expjpi(mp.mpf(2 * k) / v.order) for k, c in enumerate(v.coeffs) if c),
            mp.mpc(0),
        )


def digamma_oracle(f, dps: int = 60):
    """L(1, f) = -(1/q) sum_r f(r) psi(r/q), valid when the period sum vanishes."""
    q = f.modulus
    with mp.workdps(dps):
        total = mp.mpc(0)
        for r in range(1, q + 1):
            v = f.values[r - 1]
            if v:
                total += numeric_value(v, dps) * mp.digamma(mp.mpf(r) / q)
        return -total / q


def rand_element(rng: random.Random, N: int = 12, spread: int = 4):
    K = make_field(N)
    return K.element([Fraction(rng.randint(-spread, spread), rng.randint(1, 3)) for _ in range(K.degree)])


def rand_function(rng: random.Random, q: int, N: int = 12):
    return from_values(q, [rand_element(rng, N) for _ in range(q)])


@pytest.fixture
def rng():
    return random.Random(1234)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
