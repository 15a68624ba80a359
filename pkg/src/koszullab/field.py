"""Exact arithmetic in GF(p) for an odd prime p."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DivisionByZero, FieldMismatch, InputError

DEFAULT_CHARACTERISTIC = 32003

# Deterministic Miller-Rabin witnesses for n < 3,215,031,751.
_MR_BASES = (2, 3, 5, 7)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    if n >= 3_215_031_751:
        # outside the deterministic range; fall back to trial division
        q = 17
        while q * q <= n:
            if n % q == 0:
                return False
            q += 2
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def inverse_mod(a: int, p: int) -> int:
    """Inverse of ``a`` modulo ``p`` by the extended Euclidean algorithm."""
    a %= p
    if a == 0:
        raise DivisionByZero(f"0 has no inverse modulo {p}")
    x, next_x = 1, 0
    g, next_g = a, p
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        g, next_g = next_g, g - q * next_g
    return x % p


@lru_cache(maxsize=None)
def _checked_prime(p: int) -> int:
    if p % 2 == 0 or not is_prime(p):
        raise InputError(f"characteristic must be an odd prime, got {p}")
    return p


@dataclass(frozen=True)
class PrimeField:
    characteristic: int = DEFAULT_CHARACTERISTIC

    def __post_init__(self):
        _checked_prime(self.characteristic)

    @property
    def p(self) -> int:
        return self.characteristic

    def __call__(self, value: int) -> PrimeFieldScalar:
        return PrimeFieldScalar(self, value % self.characteristic)

    def inv(self, a: int) -> int:
        return inverse_mod(a, self.characteristic)

    def __repr__(self):
        return f"GF({self.characteristic})"


@dataclass(frozen=True)
class PrimeFieldScalar:
    field: PrimeField
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.p:
            object.__setattr__(self, "value", self.value % self.field.p)

    def _coerce(self, other) -> int:
        if isinstance(other, PrimeFieldScalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return PrimeFieldScalar(self.field, (self.value + b) % self.field.p)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return PrimeFieldScalar(self.field, (self.value - b) % self.field.p)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return PrimeFieldScalar(self.field, (b - self.value) % self.field.p)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return PrimeFieldScalar(self.field, self.value * b % self.field.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return PrimeFieldScalar(self.field, self.value * inverse_mod(b, self.field.p) % self.field.p)

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return PrimeFieldScalar(self.field, b * inverse_mod(self.value, self.field.p) % self.field.p)

    def __neg__(self):
        return PrimeFieldScalar(self.field, -self.value % self.field.p)

    def inverse(self) -> PrimeFieldScalar:
        return PrimeFieldScalar(self.field, inverse_mod(self.value, self.field.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, PrimeFieldScalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.value))

    def __repr__(self):
        return f"{self.value} mod {self.field.p}"


def field_arith(a: PrimeFieldScalar, b: PrimeFieldScalar, op: str) -> PrimeFieldScalar:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise InputError(f"unknown field operation {op!r}")


def signed(c: int, p: int) -> int:
    """Symmetric representative of ``c`` in (-p/2, p/2], used for printing."""
    return c - p if c > p // 2 else c
