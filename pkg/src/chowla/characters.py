"""Dirichlet characters modulo q via the structure of (Z/qZ)^*."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from sympy import divisors, factorint, n_order, primitive_root

from .cyclotomic import CyclotomicNumber, euler_phi, make_field, rational, zeta_pow
from .errors import ModulusMismatch, NotAUnit, OutOfRange


@dataclass(frozen=True)
class UnitGroupStructure:
    """Generators of (Z/qZ)^* with their orders; every unit is prod g_i^(k_i) uniquely."""

    modulus: int
    generators: tuple[int, ...]
    orders: tuple[int, ...]

    @property
    def exponent(self) -> int:
        return math.lcm(*self.orders) if self.orders else 1

    @property
    def size(self) -> int:
        return math.prod(self.orders)


def _local_generators(p: int, k: int) -> list[tuple[int, int]]:
    """(generator mod p^k, order) pairs for the unit group of Z/p^kZ."""
    pk = p**k
    if p == 2:
        if k == 1:
            return []
        if k == 2:
            return [(3, 2)]
        return [(pk - 1, 2), (5, 2 ** (k - 2))]
    return [(primitive_root(pk), (p - 1) * p ** (k - 1))]


def _crt_lift(residue: int, pk: int, q: int) -> int:
    """Unit mod q congruent to residue mod pk and to 1 modulo q / pk."""
    rest = q // pk
    if rest == 1:
        return residue % q
    # x = residue + pk * t with x = 1 mod rest
    t = ((1 - residue) * pow(pk, -1, rest)) % rest
    return (residue + pk * t) % q


@lru_cache(maxsize=None)
def unit_group(q: int) -> UnitGroupStructure:
    if q < 1:
        raise OutOfRange("modulus must be positive")
    gens: list[int] = []
    orders: list[int] = []
    for p, k in sorted(factorint(q).items()):
        pk = p**k
        for g, o in _local_generators(p, k):
            gens.append(_crt_lift(g, pk, q))
            orders.append(o)
    return UnitGroupStructure(q, tuple(gens), tuple(orders))


@lru_cache(maxsize=None)
def _discrete_logs(q: int) -> dict[int, tuple[int, ...]]:
    """Map each unit residue mod q to its exponent tuple over the fixed generators."""
    group = unit_group(q)
    table: dict[int, tuple[int, ...]] = {}
    for exps in itertools.product(*(range(o) for o in group.orders)):
        u = 1
        for g, e in zip(group.generators, exps):
            u = u * pow(g, e, q) % q
        table[u % q] = exps
    if len(table) != euler_phi(q):
        raise ArithmeticError(f"generator presentation for q={q} is not a basis")
    return table


def unit_exponents(n: int, q: int) -> tuple[int, ...] | None:
    """Exponent tuple of n over unit_group(q).generators, or None if n is not a unit."""
    return _discrete_logs(q).get(n % q)


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        orders = unit_group(self.modulus).orders
        if len(self.exponents) != len(orders):
            raise ValueError(f"modulus {self.modulus} characters need {len(orders)} exponents")
        object.__setattr__(self, "exponents", tuple(e % o for e, o in zip(self.exponents, orders)))

    @property
    def value_order(self) -> int:
        """Values lie in Q(zeta_e), e = exponent of the unit group."""
        return unit_group(self.modulus).exponent

    def __call__(self, n: int) -> CyclotomicNumber:
        return eval_character(self, n)

    def __mul__(self, other: DirichletCharacter) -> DirichletCharacter:
        if other.modulus != self.modulus:
            raise ModulusMismatch("characters have different moduli")
        return DirichletCharacter(self.modulus, tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def conjugate(self) -> DirichletCharacter:
        return DirichletCharacter(self.modulus, tuple(-e for e in self.exponents))

    def values(self) -> list[CyclotomicNumber]:
        """chi(1), ..., chi(q)."""
        return [eval_character(self, n) for n in range(1, self.modulus + 1)]

    def to_json(self) -> dict:
        units = [n for n in range(1, self.modulus + 1) if math.gcd(n, self.modulus) == 1]
        return {
            "modulus": self.modulus,
            "exponents": list(self.exponents),
            "values": [{"n": n, "value": eval_character(self, n).to_json()} for n in units],
        }

    @classmethod
    def from_json(cls, data: dict) -> DirichletCharacter:
        return cls(int(data["modulus"]), tuple(int(e) for e in data["exponents"]))


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters, lexicographic in exponent tuples; the principal one comes first."""
    orders = unit_group(q).orders
    return [DirichletCharacter(q, exps) for exps in itertools.product(*(range(o) for o in orders))]


def eval_character(chi: DirichletCharacter, n: int) -> CyclotomicNumber:
    q = chi.modulus
    group = unit_group(q)
    e = group.exponent
    logs = unit_exponents(n, q)
    if logs is None:
        return rational(0, e)
    k = sum(a * b * (e // o) for a, b, o in zip(chi.exponents, logs, group.orders))
    return zeta_pow(make_field(e), k)


def is_principal(chi: DirichletCharacter) -> bool:
    return not any(chi.exponents)


def conductor(chi: DirichletCharacter) -> int:
    """Smallest d | q such that chi is trivial on units congruent to 1 mod d."""
    q = chi.modulus
    units = [n for n in range(1, q + 1) if math.gcd(n, q) == 1]
    for d in divisors(q):
        if all(eval_character(chi, n) == 1 for n in units if n % d == 1 % d):
            return d
    return q


def is_primitive(chi: DirichletCharacter) -> bool:
    return conductor(chi) == chi.modulus


def multiplicative_order(p: int, k: int) -> int:
    if k < 1:
        raise OutOfRange("modulus must be positive")
    if math.gcd(p, k) != 1:
        raise NotAUnit(f"{p} is not a unit modulo {k}")
    if k == 1:
        return 1
    return int(n_order(p, k))


def orthogonality_check(q: int) -> bool:
    """Both orthogonality relations, exactly.

    Row sums: sum_a chi(a) vanishes for non-principal chi and equals phi(q) for the
    principal one.  Column sums: sum_chi chi(a) is phi(q) at a = 1 and 0 elsewhere.
    """
    chars = enumerate_characters(q)
    phi = euler_phi(q)
    table = [chi.values() for chi in chars]
    for chi, row in zip(chars, table):
        total = sum(row[1:], row[0])
        if total != (phi if is_principal(chi) else 0):
            return False
    for a in range(1, q + 1):
        column = [row[a - 1] for row in table]
        total = sum(column[1:], column[0])
        expected = phi if a % q == 1 % q else 0
        if total != expected:
            return False
    return len(chars) == phi
