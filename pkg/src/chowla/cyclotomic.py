"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis 1, z, ..., z^(phi(N)-1) reduced modulo
the N-th cyclotomic polynomial, as integer numerators over one positive common
denominator.  The reduced form is canonical, so equality is a coefficient
comparison.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from mpmath import iv
from sympy import divisors, totient

from .enclosure import DEFAULT_PRECISION, MIN_PRECISION, ComplexEnclosure, working_precision
from .errors import DivisionByZero, FieldMismatch, NotAUnit, NotDivisible, OutOfRange

_INT64_SAFE = 1 << 62


def euler_phi(n: int) -> int:
    return int(totient(n))


# ---------------------------------------------------------------------------
# integer polynomials (coefficient tuples, lowest degree first)


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_exact_div(num: Sequence[int], den: Sequence[int]) -> list[int]:
    """Quotient of ``num`` by the monic ``den``; the remainder must vanish."""
    num = list(num)
    d = len(den) - 1
    q = [0] * (len(num) - d)
    for k in range(len(num) - 1, d - 1, -1):
        c = num[k]
        if c:
            q[k - d] = c
            for j in range(d + 1):
                num[k - d + j] -= c * den[j]
    if any(num[:d]):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first: (x^n - 1) / prod_{d | n, d < n} Phi_d."""
    if n < 1:
        raise OutOfRange("cyclotomic_polynomial needs n >= 1")
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        num = _poly_exact_div(num, cyclotomic_polynomial(d))
    return tuple(num)


def format_polynomial(coeffs: Sequence[int], var: str = "x") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    return head + "".join(f" {s} {b}" for s, b in terms[1:])


# ---------------------------------------------------------------------------
# reduction tables


@lru_cache(maxsize=None)
def _power_table(N: int) -> np.ndarray:
    """Row k holds the reduced coordinates of z^k, for 0 <= k < N (object dtype)."""
    phi = euler_phi(N)
    poly = cyclotomic_polynomial(N)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(N):
        rows.append(list(cur))
        lead = cur[-1]
        cur = [0] + cur[:-1]
        if lead:
            for j in range(phi):
                cur[j] -= lead * poly[j]
    table = np.array(rows, dtype=object).reshape(N, phi)
    return table


@lru_cache(maxsize=None)
def _high_rows(N: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Sparse form of table rows phi..N-1, for scalar Python reductions."""
    table = _power_table(N)
    phi = table.shape[1]
    return tuple(
        tuple((j, int(c)) for j, c in enumerate(table[k]) if c) for k in range(phi, N)
    )


@lru_cache(maxsize=None)
def _high_matrix(N: int) -> tuple[np.ndarray | None, int]:
    """int64 copy of table rows phi..N-1 (None if entries are large) and its max column sum."""
    table = _power_table(N)
    phi = table.shape[1]
    high = table[phi:]
    if high.size == 0:
        return np.zeros((0, phi), dtype=np.int64), 0
    mx = max(abs(int(c)) for c in high.flat)
    colsum = max(sum(abs(int(c)) for c in high[:, j]) for j in range(phi))
    if mx > 1 << 40:
        return None, colsum
    return high.astype(np.int64), colsum


def reduce_cyclic_rows(rows: np.ndarray, N: int) -> np.ndarray:
    """Reduce rows of coefficients on z^0..z^(N-1) to the power basis (batched)."""
    table = _power_table(N)
    phi = table.shape[1]
    low = rows[:, :phi]
    high = rows[:, phi:]
    if high.shape[1] == 0:
        return low
    mat, colsum = _high_matrix(N)
    if rows.dtype == np.int64 and mat is not None:
        bound = int(np.abs(rows).max()) if rows.size else 0
        if bound * (colsum + 1) < _INT64_SAFE:
            return low + high @ mat
    obj = rows.astype(object)
    return obj[:, :phi] + obj[:, phi:].dot(table[phi:])


def int_array(rows: Sequence[Sequence[int]], growth: int = 1) -> np.ndarray:
    """Pack integer rows as int64 when ``growth`` times the largest entry is safe, else object."""
    arr = np.array(rows, dtype=object)
    if arr.size == 0:
        return arr.astype(np.int64)
    bound = max(abs(int(x)) for x in arr.flat)
    if bound * growth < _INT64_SAFE:
        return arr.astype(np.int64)
    return arr


# ---------------------------------------------------------------------------
# fields and elements


@dataclass(frozen=True)
class CyclotomicField:
    order: int
    degree: int
    modulus_poly: tuple[int, ...]

    def element(self, coeffs: Iterable) -> CyclotomicNumber:
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != self.degree:
            raise ValueError(f"Q(zeta_{self.order}) elements need {self.degree} coefficients")
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        return CyclotomicNumber._make(self.order, [int(c * den) for c in coeffs], den)

    def rational(self, value) -> CyclotomicNumber:
        value = Fraction(value)
        nums = [0] * self.degree
        nums[0] = value.numerator
        return CyclotomicNumber._make(self.order, nums, value.denominator)

    def zero(self) -> CyclotomicNumber:
        return self.rational(0)

    def one(self) -> CyclotomicNumber:
        return self.rational(1)

    def gen(self) -> CyclotomicNumber:
        return zeta_pow(self, 1)

    def __str__(self) -> str:
        return f"Q(zeta_{self.order})"


@lru_cache(maxsize=None)
def make_field(N: int) -> CyclotomicField:
    if N < 1:
        raise OutOfRange("field order must be positive")
    return CyclotomicField(N, euler_phi(N), cyclotomic_polynomial(N))


def _from_cyclic(N: int, vec: Sequence[int], den: int) -> CyclotomicNumber:
    """Element with coefficient vec[k] on z^k (k < N), divided by den."""
    phi = euler_phi(N)
    out = list(vec[:phi])
    for k, row in enumerate(_high_rows(N), start=phi):
        c = vec[k]
        if c:
            for j, t in row:
                out[j] += c * t
    return CyclotomicNumber._make(N, out, den)


class CyclotomicNumber:
    """An element of Q(zeta_N) in canonical reduced form.  Immutable."""

    __slots__ = ("order", "nums", "den", "_hash")

    def __init__(self, order: int, coeffs: Sequence) -> None:
        elem = make_field(order).element(coeffs)
        self.order, self.nums, self.den, self._hash = elem.order, elem.nums, elem.den, None

    @classmethod
    def _make(cls, order: int, nums: Sequence[int], den: int) -> CyclotomicNumber:
        nums = [int(x) for x in nums]
        den = int(den)
        if den < 0:
            nums = [-x for x in nums]
            den = -den
        g = math.gcd(den, *nums)
        if g > 1:
            nums = [x // g for x in nums]
            den //= g
        if not any(nums):
            den = 1
        self = object.__new__(cls)
        self.order = order
        self.nums = tuple(nums)
        self.den = den
        self._hash = None
        return self

    # views ---------------------------------------------------------------
    @property
    def field(self) -> CyclotomicField:
        return make_field(self.order)

    @property
    def field_order(self) -> int:
        return self.order

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self.den) for n in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.nums[0], self.den)

    # comparison ----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.nums[0], self.den) == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        if self.order != other.order:
            raise FieldMismatch(f"cannot compare Q(zeta_{self.order}) with Q(zeta_{other.order})")
        return self.nums == other.nums and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.order, self.nums, self.den))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> CyclotomicNumber | None:
        if isinstance(other, CyclotomicNumber):
            if other.order != self.order:
                raise FieldMismatch(f"Q(zeta_{self.order}) vs Q(zeta_{other.order}); lift first")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return CyclotomicNumber._make(self.order, [a + b for a, b in zip(self.nums, other.nums)], self.den)
        den = math.lcm(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        return CyclotomicNumber._make(
            self.order, [a * fa + b * fb for a, b in zip(self.nums, other.nums)], den
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._make(self.order, [-a for a in self.nums], self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def _scale(self, num: int, den: int) -> CyclotomicNumber:
        return CyclotomicNumber._make(self.order, [a * num for a in self.nums], self.den * den)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_rational():
            return self._scale(other.nums[0], other.den)
        if self.is_rational():
            return other._scale(self.nums[0], self.den)
        N = self.order
        prod = [0] * N
        for i, x in enumerate(self.nums):
            if x:
                for j, y in enumerate(other.nums):
                    if y:
                        prod[(i + j) % N] += x * y
        return _from_cyclic(N, prod, self.den * other.den)

    __rmul__ = __mul__

    def inv(self) -> CyclotomicNumber:
        return inv(self)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if other == 0:
                raise DivisionByZero("division by zero")
            return self._scale(other.denominator, other.numerator)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * inv(other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * inv(self)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return inv(self) ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> CyclotomicNumber:
        return apply_automorphism(self, -1)

    # numeric views -------------------------------------------------------
    def embed(self, precision: int = DEFAULT_PRECISION) -> ComplexEnclosure:
        return embed(self, precision)

    def to_complex(self) -> complex:
        """Float approximation; not rigorous, for display and float-only routines."""
        N = self.order
        return sum(n * cmath.exp(2j * math.pi * k / N) for k, n in enumerate(self.nums) if n) / self.den

    # serialization -------------------------------------------------------
    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> CyclotomicNumber:
        order = int(data["order"])
        coeffs = data["coeffs"]
        field = make_field(order)
        if len(coeffs) != field.degree:
            raise ValueError(f"expected {field.degree} coefficients for order {order}, got {len(coeffs)}")
        return field.element(Fraction(str(c)) for c in coeffs)

    def __repr__(self) -> str:
        return f"CyclotomicNumber({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else (f"z{self.order}" if k == 1 else f"z{self.order}^{k}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


# ---------------------------------------------------------------------------
# operations


def zeta_pow(field: CyclotomicField | int, k: int) -> CyclotomicNumber:
    """Canonical form of zeta_N^k."""
    N = field if isinstance(field, int) else field.order
    vec = [0] * N
    vec[k % N] = 1
    return _from_cyclic(N, vec, 1)


def rational(value, N: int = 1) -> CyclotomicNumber:
    return make_field(N).rational(value)


def as_cyclotomic(value, N: int = 1) -> CyclotomicNumber:
    if isinstance(value, CyclotomicNumber):
        return value
    return rational(value, N)


def add(a: CyclotomicNumber, b: CyclotomicNumber) -> CyclotomicNumber:
    return a + b


def mul(a: CyclotomicNumber, b: CyclotomicNumber) -> CyclotomicNumber:
    return a * b


def neg(a: CyclotomicNumber) -> CyclotomicNumber:
    return -a


def _frac_poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _frac_poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] -= c * bj
        a.pop()
        _frac_poly_trim(a)
    return q, a


def _frac_poly_sub_mul(x: list[Fraction], q: list[Fraction], y: list[Fraction]) -> list[Fraction]:
    """x - q*y."""
    out = list(x) + [Fraction(0)] * max(0, len(q) + len(y) - 1 - len(x))
    for i, qi in enumerate(q):
        if qi:
            for j, yj in enumerate(y):
                out[i + j] -= qi * yj
    return _frac_poly_trim(out)


def inv(a: CyclotomicNumber) -> CyclotomicNumber:
    """Inverse via the extended Euclidean algorithm against Phi_N."""
    if a.is_zero():
        raise DivisionByZero("zero has no inverse")
    if a.is_rational():
        return a.field.rational(1 / a.rational_value())
    field = a.field
    r0 = [Fraction(c) for c in field.modulus_poly]
    r1 = _frac_poly_trim(list(a.coeffs))
    s0: list[Fraction] = []
    s1 = [Fraction(1)]
    while len(r1) > 1:
        q, r = _frac_poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _frac_poly_sub_mul(s0, q, s1)
    # r1 is a nonzero constant because Phi_N is irreducible
    c = r1[0]
    coeffs = [x / c for x in s1] + [Fraction(0)] * (field.degree - len(s1))
    return field.element(coeffs[: field.degree])


def _remap(a: CyclotomicNumber, M: int, index) -> CyclotomicNumber:
    vec = [0] * M
    for k, n in enumerate(a.nums):
        if n:
            vec[index(k) % M] += n
    return _from_cyclic(M, vec, a.den)


def lift(a: CyclotomicNumber, M: int) -> CyclotomicNumber:
    """The same number viewed in Q(zeta_M), using zeta_N = zeta_M^(M/N)."""
    N = a.order
    if M % N:
        raise NotDivisible(f"cannot lift Q(zeta_{N}) into Q(zeta_{M})")
    if M == N:
        return a
    step = M // N
    return _remap(a, M, lambda k: k * step)


def lift_all(values: Iterable, M: int | None = None) -> list[CyclotomicNumber]:
    """Lift a mixed sequence (ints, Fractions, elements) into one field, by default the smallest."""
    values = [as_cyclotomic(v) for v in values]
    if M is None:
        M = math.lcm(*(v.order for v in values)) if values else 1
    return [lift(v, M) for v in values]


def apply_automorphism(a: CyclotomicNumber, t: int) -> CyclotomicNumber:
    """Image of a under sigma_t : zeta_N -> zeta_N^t."""
    N = a.order
    if math.gcd(t, N) != 1:
        raise NotAUnit(f"{t} is not a unit modulo {N}")
    if t % N == 1 % N:
        return a
    return _remap(a, N, lambda k: k * t)


@lru_cache(maxsize=64)
def _root_table(N: int, precision: int) -> tuple[tuple, ...]:
    phi = euler_phi(N)
    with working_precision(precision + 16):
        out = []
        for k in range(phi):
            angle = 2 * iv.pi * k / N
            out.append((iv.cos(angle), iv.sin(angle)))
    return tuple(out)


def embed(a: CyclotomicNumber, precision: int = DEFAULT_PRECISION) -> ComplexEnclosure:
    """Rigorous box around the complex value sum_k c_k exp(2 pi i k / N)."""
    if precision < MIN_PRECISION:
        raise ValueError(f"precision must be at least {MIN_PRECISION} bits")
    return _embed_cached(a, precision)


@lru_cache(maxsize=8192)
def _embed_cached(a: CyclotomicNumber, precision: int) -> ComplexEnclosure:
    if a.is_zero():
        return ComplexEnclosure.zero(precision)
    roots = _root_table(a.order, precision)
    with working_precision(precision):
        re = iv.mpf(0)
        im = iv.mpf(0)
        for (c, s), n in zip(roots, a.nums):
            if n:
                m = iv.mpf(n)
                re += m * c
                im += m * s
        return ComplexEnclosure(re / a.den, im / a.den, precision)


def is_zero(a: CyclotomicNumber) -> bool:
    return a.is_zero()


def equals(a: CyclotomicNumber, b: CyclotomicNumber) -> bool:
    if a.order != b.order:
        raise FieldMismatch(f"Q(zeta_{a.order}) vs Q(zeta_{b.order}); lift first")
    return a == b


def cot_element(r: int, q: int) -> CyclotomicNumber:
    """cot(pi r / q) as i (w^r + w^-r) / (w^r - w^-r), w = zeta_2q, in Q(zeta_lcm(4, 2q))."""
    if not 1 <= r <= q - 1:
        raise OutOfRange(f"cot_element needs 1 <= r <= q-1, got r={r}, q={q}")
    return _cot_cached(r, q)


@lru_cache(maxsize=None)
def _cot_cached(r: int, q: int) -> CyclotomicNumber:
    L = math.lcm(4, 2 * q)
    w = L // (2 * q)
    up = zeta_pow(L, w * r)
    down = zeta_pow(L, -w * r)
    return zeta_pow(L, L // 4) * (up + down) * inv(up - down)


def sqrt3() -> CyclotomicNumber:
    """sqrt(3) = zeta_12 + zeta_12^11."""
    return zeta_pow(12, 1) + zeta_pow(12, 11)
