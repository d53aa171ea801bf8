"""Runnable verification suites wired from module-level invariants.

Each suite returns a list of ``(name, passed, detail)`` triples and is
deterministic: random cases come from a seeded generator.
"""
from __future__ import annotations

import random
from fractions import Fraction

from mpmath import iv, mp

from .characters import orthogonality_check
from .cyclotomic import embed, make_field
from .enclosure import DEFAULT_PRECISION
from .lvalue import dirichlet_nonvanishing, eval_log_form, kernel_dimension_with_condition_i, log_form, odd_exact_value
from .periodic import PeriodicFunction, dft, from_values, idft

Result = tuple[str, bool, str]


def random_function(rng: random.Random, q: int, field_order: int = 12, spread: int = 3) -> PeriodicFunction:
    K = make_field(field_order)
    return from_values(
        q,
        [K.element([Fraction(rng.randint(-spread, spread), rng.randint(1, 3)) for _ in range(K.degree)]) for _ in range(q)],
    )


def random_odd_rational(rng: random.Random, q: int, spread: int = 5) -> PeriodicFunction:
    vals: list[Fraction] = [Fraction(0)] * q
    for r in range(1, q):
        if r < q - r:
            v = Fraction(rng.randint(-spread, spread), rng.randint(1, 4))
            vals[r - 1] = v
            vals[q - r - 1] = -v
    return from_values(q, vals)


def pi_times(a, precision: int):
    """Enclosure of pi * a."""
    return embed(a, precision).scale(iv.pi)


def orthogonality_suite(max_q: int = 40) -> list[Result]:
    return [(f"orthogonality q={q}", orthogonality_check(q), "") for q in range(1, max_q + 1)]


def roundtrip_suite(cases: int = 100, max_q: int = 36, seed: int = 20240601) -> list[Result]:
    rng = random.Random(seed)
    out = []
    for i in range(cases):
        q = rng.randint(1, max_q)
        f = random_function(rng, q)
        out.append((f"roundtrip #{i} q={q}", idft(dft(f)) == f, ""))
    return out


def nonvanishing_suite(max_q: int = 50, precision: int = DEFAULT_PRECISION) -> list[Result]:
    out = []
    for q in range(3, max_q + 1):
        report = dirichlet_nonvanishing(q, precision)
        ok = all(entry["enclosure"].excludes_zero() for entry in report)
        out.append((f"nonvanishing q={q}", ok, f"{len(report)} non-principal characters"))
    return out


def kernel_suite(moduli=(7,)) -> list[Result]:
    out = []
    for q in moduli:
        dim = kernel_dimension_with_condition_i(q)
        out.append((f"kernel q={q}", dim == 0, f"dimension {dim}"))
    return out


def engines_suite(cases: int = 50, max_q: int = 24, precision: int = DEFAULT_PRECISION, seed: int = 7) -> list[Result]:
    """Cotangent closed form against the log-form enclosure on random odd rational f."""
    rng = random.Random(seed)
    out = []
    for i in range(cases):
        q = rng.randint(3, max_q)
        f = random_odd_rational(rng, q)
        closed = pi_times(odd_exact_value(f), precision)
        logged = eval_log_form(log_form(f), precision)
        combined = closed.width() + logged.width()
        ok = closed.overlaps(logged) and combined < mp.mpf("1e-40")
        out.append((f"engines #{i} q={q}", ok, f"combined width {mp.nstr(combined, 3)}"))
    return out


SUITES = {
    "orthogonality": orthogonality_suite,
    "roundtrip": roundtrip_suite,
    "nonvanishing": nonvanishing_suite,
    "kernel": kernel_suite,
    "engines": engines_suite,
}
