"""Arithmetic in GF(2^n) for n <= 8.

Elements are stored as integers whose bit i is the coefficient of eta^i, where
eta is a root of the field modulus.  The scalar API (:class:`FieldElement`,
``fe_*``) works on single elements; the bulk code paths use the numpy lookup
tables hanging off :class:`FieldSpec`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import UsageError

MAX_DEGREE = 8


def poly_degree(p: int) -> int:
    return p.bit_length() - 1


def poly_mod(a: int, b: int) -> int:
    """Remainder of a modulo b over F_2."""
    db = poly_degree(b)
    while a and poly_degree(a) >= db:
        a ^= b << (poly_degree(a) - db)
    return a


def poly_mulmod(a: int, b: int, modulus: int) -> int:
    """Carry-less product of a and b reduced modulo ``modulus``."""
    n = poly_degree(modulus)
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if (a >> n) & 1:
            a ^= modulus
    return result


def is_irreducible(p: int) -> bool:
    """Trial division by every polynomial of degree 1 .. deg(p)//2."""
    d = poly_degree(p)
    if d < 1:
        return False
    for divisor in range(2, 1 << (d // 2 + 1)):
        if poly_mod(p, divisor) == 0:
            return False
    return True


def default_modulus(n: int) -> int:
    """Lexicographically smallest irreducible polynomial of degree n.

    For n = 1 this returns y + 1 rather than y, so that GF(2) is the prime field
    with eta = 1.
    """
    if not 1 <= n <= MAX_DEGREE:
        raise UsageError(f"extension degree must be in 1..{MAX_DEGREE}, got {n}")
    if n == 1:
        return 0b11
    for p in range((1 << n) | 1, 1 << (n + 1), 2):
        if is_irreducible(p):
            return p
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


@dataclass(frozen=True)
class FieldSpec:
    """GF(2^n) = F_2[y]/(modulus)."""

    n: int
    modulus: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_DEGREE:
            raise UsageError(f"extension degree must be in 1..{MAX_DEGREE}, got {self.n}")
        if poly_degree(self.modulus) != self.n:
            raise UsageError(f"modulus {self.modulus:#b} does not have degree {self.n}")
        if not is_irreducible(self.modulus):
            raise UsageError(f"modulus {self.modulus:#b} is reducible over F_2")

    @property
    def q(self) -> int:
        return 1 << self.n

    def __str__(self):
        return f"GF(2^{self.n}) mod {self.modulus:#b}"

    def element(self, coeffs: int) -> FieldElement:
        return FieldElement(self, coeffs)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def eta(self) -> FieldElement:
        """The generator eta (for n = 1 this is 1)."""
        return FieldElement(self, 2 if self.n > 1 else 1)

    def elements(self):
        return [FieldElement(self, c) for c in range(self.q)]

    # bulk tables ---------------------------------------------------------

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.q
        table = np.zeros((q, q), dtype=np.uint8)
        for a in range(q):
            for b in range(a, q):
                table[a, b] = table[b, a] = poly_mulmod(a, b, self.modulus)
        table.flags.writeable = False
        return table

    @cached_property
    def inv_table(self) -> np.ndarray:
        inv = np.zeros(self.q, dtype=np.uint8)
        for a in range(1, self.q):
            inv[a] = int(np.flatnonzero(self.mul_table[a] == 1)[0])
        inv.flags.writeable = False
        return inv

    @cached_property
    def basis_traces(self) -> tuple[int, ...]:
        """Tr(eta^i) for i = 0 .. n-1."""
        # eta^i = 1 << i needs no reduction for i < n
        return tuple(_trace_by_squaring(1 << i, self.n, self.modulus) for i in range(self.n))

    @cached_property
    def trace_table(self) -> np.ndarray:
        table = np.array([trace_int(self, x) for x in range(self.q)], dtype=np.uint8)
        table.flags.writeable = False
        return table


@lru_cache(maxsize=None)
def gf(n: int, modulus: int | None = None) -> FieldSpec:
    """Cached FieldSpec constructor; ``modulus`` defaults to :func:`default_modulus`."""
    return FieldSpec(n, default_modulus(n) if modulus is None else modulus)


def _power(x: int, e: int, modulus: int) -> int:
    result = 1
    while e:
        if e & 1:
            result = poly_mulmod(result, x, modulus)
        x = poly_mulmod(x, x, modulus)
        e >>= 1
    return result


def _trace_by_squaring(x: int, n: int, modulus: int) -> int:
    total, y = 0, x
    for _ in range(n):
        total ^= y
        y = poly_mulmod(y, y, modulus)
    assert total in (0, 1), "trace must land in the prime field"
    return total


def trace_int(field: FieldSpec, x: int) -> int:
    """Tr(x) for x given as its coefficient integer, using linearity over the basis."""
    t = 0
    for i, tr in enumerate(field.basis_traces):
        if (x >> i) & 1:
            t ^= tr
    return t


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    coeffs: int

    def __post_init__(self):
        if not 0 <= self.coeffs < self.field.q:
            raise UsageError(f"{self.coeffs} is not an element of {self.field}")

    def _check(self, other: FieldElement):
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise UsageError(f"field mismatch: {self.field} vs {other.field}")
        return None

    def __add__(self, other):
        bad = self._check(other)
        if bad is NotImplemented:
            return bad
        return FieldElement(self.field, self.coeffs ^ other.coeffs)

    __sub__ = __add__

    def __mul__(self, other):
        bad = self._check(other)
        if bad is NotImplemented:
            return bad
        return FieldElement(self.field, poly_mulmod(self.coeffs, other.coeffs, self.field.modulus))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.field, _power(self.coeffs, e, self.field.modulus))

    def inverse(self) -> FieldElement:
        if self.coeffs == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        return self * other.inverse()

    def __int__(self):
        return self.coeffs

    def __bool__(self):
        return self.coeffs != 0

    def __repr__(self):
        return f"FieldElement({self.coeffs}, n={self.field.n})"

    def __str__(self):
        return str(self.coeffs)


def fe_add(x: FieldElement, y: FieldElement) -> FieldElement:
    return x + y


def fe_mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * y


def fe_trace(x: FieldElement) -> int:
    """Absolute trace Tr(x) = x + x^2 + ... + x^(2^(n-1)), as 0 or 1."""
    return trace_int(x.field, x.coeffs)


def fe_decompose(x: FieldElement) -> tuple[int, ...]:
    """Coordinates (a_0, ..., a_{n-1}) of x in the basis 1, eta, ..., eta^(n-1)."""
    return tuple((x.coeffs >> i) & 1 for i in range(x.field.n))


def fe_compose(field: FieldSpec, coords) -> FieldElement:
    value = 0
    for i, a in enumerate(coords):
        if a & 1:
            value |= 1 << i
    return FieldElement(field, value)


def multiplicative_order(x: FieldElement) -> int:
    if not x:
        raise UsageError("zero has no multiplicative order")
    order, y = 1, x
    while y.coeffs != 1:
        y = y * x
        order += 1
    return order
