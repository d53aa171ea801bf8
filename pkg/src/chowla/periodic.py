"""q-periodic functions with cyclotomic values, their Fourier pair and named families.

Values are stored for residues 1..q, with residue 0 kept in the last slot, so
``values[n - 1] == f(n)`` for 1 <= n <= q.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from sympy import divisors, isprime

from .characters import DirichletCharacter, eval_character, unit_group
from .cyclotomic import (
    CyclotomicNumber,
    apply_automorphism,
    as_cyclotomic,
    euler_phi,
    int_array,
    lift,
    lift_all,
    make_field,
    rational,
    reduce_cyclic_rows,
    sqrt3,
    zeta_pow,
)
from .errors import LengthMismatch, ModulusMismatch, NotAUnit, NotPrime, OutOfRange


@dataclass(frozen=True, eq=False)
class PeriodicFunction:
    modulus: int
    values: tuple[CyclotomicNumber, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise OutOfRange("modulus must be positive")
        if len(self.values) != self.modulus:
            raise LengthMismatch(f"expected {self.modulus} values, got {len(self.values)}")
        orders = {v.order for v in self.values}
        if len(orders) > 1:
            raise ValueError("values must share one field; build through from_values")

    @property
    def field_order(self) -> int:
        return self.values[0].order

    def __call__(self, n: int) -> CyclotomicNumber:
        return evaluate(self, n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PeriodicFunction):
            return NotImplemented
        if self.modulus != other.modulus:
            return False
        a, b = _common(self, other)
        return a.values == b.values

    __hash__ = None

    # pointwise arithmetic, lifting to a common field as needed
    def __add__(self, other: PeriodicFunction) -> PeriodicFunction:
        a, b = _common(self, other)
        return type(self)(a.modulus, tuple(x + y for x, y in zip(a.values, b.values)))

    def __neg__(self) -> PeriodicFunction:
        return type(self)(self.modulus, tuple(-x for x in self.values))

    def __sub__(self, other: PeriodicFunction) -> PeriodicFunction:
        return self + (-other)

    def scale(self, c) -> PeriodicFunction:
        c = as_cyclotomic(c)
        M = math.lcm(c.order, self.field_order)
        c = lift(c, M)
        return type(self)(self.modulus, tuple(c * lift(v, M) for v in self.values))

    def __rmul__(self, c) -> PeriodicFunction:
        return self.scale(c)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def is_rational(self) -> bool:
        return all(v.is_rational() for v in self.values)

    def lifted(self, M: int) -> PeriodicFunction:
        return type(self)(self.modulus, tuple(lift(v, M) for v in self.values))

    # serialization
    def to_json(self) -> dict:
        return {"modulus": self.modulus, "values": [v.to_json() for v in self.values]}

    @classmethod
    def from_json(cls, data: dict) -> PeriodicFunction:
        q = int(data["modulus"])
        if "rational_values" in data:
            vals = [Fraction(str(x)) for x in data["rational_values"]]
        elif "values" in data:
            vals = [CyclotomicNumber.from_json(v) for v in data["values"]]
        else:
            raise ValueError("function table needs 'values' or 'rational_values'")
        f = from_values(q, vals)
        return f if cls is PeriodicFunction else cls(f.modulus, f.values)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(q={self.modulus}, [{', '.join(str(v) for v in self.values)}])"


class SpectralFunction(PeriodicFunction):
    """The g side of the Fourier pair; same storage convention as PeriodicFunction."""


def _common(f: PeriodicFunction, g: PeriodicFunction) -> tuple[PeriodicFunction, PeriodicFunction]:
    if f.modulus != g.modulus:
        raise ModulusMismatch(f"moduli {f.modulus} and {g.modulus} differ")
    M = math.lcm(f.field_order, g.field_order)
    return f.lifted(M), g.lifted(M)


def from_values(q: int, values: Iterable) -> PeriodicFunction:
    values = list(values)
    if len(values) != q:
        raise LengthMismatch(f"expected {q} values, got {len(values)}")
    return PeriodicFunction(q, tuple(lift_all(values)))


def zero_function(q: int, N: int = 1) -> PeriodicFunction:
    return PeriodicFunction(q, tuple(rational(0, N) for _ in range(q)))


def evaluate(f: PeriodicFunction, n: int) -> CyclotomicNumber:
    r = n % f.modulus
    return f.values[(r or f.modulus) - 1]


def period_sum(f: PeriodicFunction) -> CyclotomicNumber:
    return sum(f.values[1:], f.values[0])


def parity_split(f: PeriodicFunction) -> tuple[PeriodicFunction, PeriodicFunction]:
    """(odd part, even part)."""
    q = f.modulus
    odd, even = [], []
    for n in range(1, q + 1):
        a, b = evaluate(f, n), evaluate(f, -n)
        odd.append((a - b) / 2)
        even.append((a + b) / 2)
    return PeriodicFunction(q, tuple(odd)), PeriodicFunction(q, tuple(even))


def is_odd(f: PeriodicFunction) -> bool:
    return all(evaluate(f, -n) == -evaluate(f, n) for n in range(1, f.modulus + 1))


def is_even(f: PeriodicFunction) -> bool:
    return all(evaluate(f, -n) == evaluate(f, n) for n in range(1, f.modulus + 1))


# ---------------------------------------------------------------------------
# Fourier pair


def _transform(values: Sequence[CyclotomicNumber], q: int, sign: int) -> list[CyclotomicNumber]:
    """out(s) = sum_{r=1}^{q} v(r) zeta_q^(sign*r*s) for s = 1..q, exactly.

    Works on unreduced coefficient vectors over z^0..z^(M-1) (multiplying by a
    root of unity is a rotation there) and reduces each output once.
    """
    N = values[0].order
    M = math.lcm(q, N)
    den = math.lcm(*(v.den for v in values))
    step_val = M // N
    step_root = M // q
    base = [[0] * M for _ in range(q)]
    for r, v in enumerate(values, start=1):
        scale = den // v.den
        row = base[r % q]
        for k, n in enumerate(v.nums):
            if n:
                row[(k * step_val) % M] += n * scale
    F = int_array(base, growth=q)
    cols = np.arange(M)
    rs = np.arange(q)
    out_rows = np.empty((q, M), dtype=F.dtype)
    for s in range(q):
        # coefficient at z^k collects v(r) placed at k - sign*r*s*step_root
        shift = (-sign * rs * s * step_root) % M
        idx = (cols[None, :] + shift[:, None]) % M
        out_rows[s] = F[rs[:, None], idx].sum(axis=0)
    reduced = reduce_cyclic_rows(out_rows, M)
    res = [CyclotomicNumber._make(M, row, den) for row in reduced.tolist()]
    # res[s] is the output at residue s (0..q-1); storage puts residue 0 last
    return res[1:] + res[:1]


def dft(f: PeriodicFunction) -> SpectralFunction:
    """g(s) = (1/q) sum_{r=1}^{q} f(r) zeta_q^(-r s)."""
    q = f.modulus
    out = _transform(f.values, q, -1)
    return SpectralFunction(q, tuple(v / q for v in out))


def idft(g: PeriodicFunction) -> PeriodicFunction:
    """f(r) = sum_{s=1}^{q} g(s) zeta_q^(r s)."""
    return PeriodicFunction(g.modulus, tuple(_transform(g.values, g.modulus, 1)))


# ---------------------------------------------------------------------------
# conditions and twists


def condition_i(f: PeriodicFunction) -> bool:
    """f(r) = 0 whenever 1 < gcd(r, q) < q."""
    q = f.modulus
    return all(f.values[r - 1].is_zero() for r in range(1, q + 1) if 1 < math.gcd(r, q) < q)


def condition_ii(f: PeriodicFunction) -> bool:
    """Phi_q stays irreducible over the field generated by the values of f.

    Decided by search: every class h mod q must be reached by some sigma_t,
    t = h (mod q), that fixes all values.
    """
    q, N = f.modulus, f.field_order
    M = math.lcm(q, N)
    distinct = list(dict.fromkeys(f.values))
    reached = set()
    for t in range(1, M + 1):
        if math.gcd(t, M) != 1 or t % q in reached:
            continue
        if all(apply_automorphism(v, t) == v for v in distinct):
            reached.add(t % q)
    needed = {h % q for h in range(1, q + 1) if math.gcd(h, q) == 1}
    return needed <= reached


def galois_twist(f: PeriodicFunction, t: int) -> PeriodicFunction:
    """f'(n) = sigma_t(f(h n)) with h = t^-1 mod q."""
    q, N = f.modulus, f.field_order
    M = math.lcm(q, N)
    if math.gcd(t, M) != 1:
        raise NotAUnit(f"{t} is not a unit modulo {M}")
    h = pow(t, -1, q) if q > 1 else 0
    vals = [apply_automorphism(evaluate(f, h * n), t) for n in range(1, q + 1)]
    return PeriodicFunction(q, tuple(vals))


def from_character(chi: DirichletCharacter) -> PeriodicFunction:
    return PeriodicFunction(chi.modulus, tuple(chi.values()))


def b_twist(f: PeriodicFunction, chi: DirichletCharacter) -> PeriodicFunction:
    """b(n) = sum_{h=1}^{q} chi(h) f(h n)."""
    q = f.modulus
    if chi.modulus != q:
        raise ModulusMismatch(f"character modulus {chi.modulus} differs from {q}")
    chi_vals = chi.values()
    M = math.lcm(f.field_order, chi_vals[0].order)
    chi_vals = [lift(c, M) for c in chi_vals]
    fv = [lift(v, M) for v in f.values]
    out = []
    for n in range(1, q + 1):
        total = rational(0, M)
        for h in range(1, q + 1):
            c = chi_vals[h - 1]
            if c:
                total = total + c * fv[(h * n - 1) % q]
        out.append(total)
    return PeriodicFunction(q, tuple(out))


def lift_period(f: PeriodicFunction, m: int) -> PeriodicFunction:
    """The same function viewed with modulus m q."""
    if m < 1:
        raise OutOfRange("lift factor must be positive")
    return PeriodicFunction(f.modulus * m, tuple(evaluate(f, n) for n in range(1, f.modulus * m + 1)))


# ---------------------------------------------------------------------------
# named functions


def euler_damped(p: int) -> PeriodicFunction:
    """Coefficients of (1 - p^(1-s))^2 zeta(s): 1 - 2p[p | n] + p^2[p^2 | n], period p^2."""
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    q = p * p
    vals = [1 - 2 * p * (n % p == 0) + p * p * (n % q == 0) for n in range(1, q + 1)]
    return from_values(q, vals)


def chowla12_demo() -> tuple[PeriodicFunction, PeriodicFunction, PeriodicFunction]:
    """(chi_a, chi_b, f): the two odd characters mod 12 and f = 2 chi_b - sqrt(3) chi_a."""
    pattern_a = {1: 1, 5: 1, 7: -1, 11: -1}
    pattern_b = {1: 1, 5: -1, 7: 1, 11: -1}
    chi_a = from_values(12, [pattern_a.get(n, 0) for n in range(1, 13)])
    chi_b = from_values(12, [pattern_b.get(n, 0) for n in range(1, 13)])
    f = chi_b.scale(2) - chi_a.scale(sqrt3())
    return chi_a, chi_b, f


def _sin_cos_elements(q: int) -> tuple[int, list[CyclotomicNumber], list[CyclotomicNumber]]:
    """sin(n pi / q) and cos(n pi / q) for n = 0..2q-1 in Q(zeta_L), L = lcm(4, 2q)."""
    L = math.lcm(4, 2 * q)
    w = L // (2 * q)
    two_i_inv = (zeta_pow(L, L // 4) * 2).inv()
    sins, coss = [], []
    for n in range(2 * q):
        up, down = zeta_pow(L, w * n), zeta_pow(L, -w * n)
        sins.append((up - down) * two_i_inv)
        coss.append((up + down) / 2)
    return L, sins, coss


def bbw_span_generators(q: int, alternating: bool = False) -> list[PeriodicFunction]:
    """Span generators for odd functions with vanishing L(1, f).

    Odd q:  (sin(n pi/q) / sin(pi/q))^l,                   l = 3, 5, ..., q-2
    Even q: cos(n pi/q)/cos(pi/q) (sin(n pi/q)/sin(pi/q))^l, l = 3, 5, ..., q-3

    These are q-antiperiodic for odd q, so they are returned with modulus 2q.
    With ``alternating=True`` each generator is multiplied by (-1)^(n+1); the
    result is q-periodic and is returned with modulus q.
    """
    if q < 3:
        raise OutOfRange("bbw_span_generators needs q >= 3")
    L, sins, coss = _sin_cos_elements(q)
    top = q - 2 if q % 2 else q - 3
    gens = []
    sin1_inv, cos1_inv = sins[1].inv(), coss[1].inv()
    period = q if alternating else 2 * q
    for l in range(3, top + 1, 2):
        vals = []
        for n in range(1, period + 1):
            v = (sins[n % (2 * q)] * sin1_inv) ** l
            if q % 2 == 0:
                v = v * coss[n % (2 * q)] * cos1_inv
            if alternating and n % 2 == 0:
                v = -v
            vals.append(v)
        gens.append(PeriodicFunction(period, tuple(vals)))
    return gens


def cmp_even_indicator_vectors(q: int) -> list[tuple[int, int, tuple[int, ...]]]:
    """(d, c, F) with F(n) = [n = c mod d] - [n = qc/d mod q] for n = 1..q; zero vectors dropped."""
    out = []
    seen = set()
    for d in divisors(q):
        if d == 1:
            continue
        for c in range(1, d):
            target = (q * c // d) % q
            F = tuple(int(n % d == c) - int(n % q == target) for n in range(1, q + 1))
            if any(F) and F not in seen:
                seen.add(F)
                out.append((d, c, F))
    return out


@lru_cache(maxsize=None)
def _cmp_even_cached(q: int) -> tuple[PeriodicFunction, ...]:
    return tuple(idft(from_values(q, F)) for _, _, F in cmp_even_indicator_vectors(q))


def cmp_even_generators(q: int) -> list[PeriodicFunction]:
    """Hat F_{d,c}(n) = sum_{a=1}^{q} F_{d,c}(a) zeta_q^(a n) over divisors 1 < d | q, 1 <= c < d."""
    if q < 2:
        raise OutOfRange("cmp_even_generators needs q >= 2")
    return list(_cmp_even_cached(q))


def dumps_table(f: PeriodicFunction) -> str:
    return json.dumps(f.to_json(), sort_keys=True)
