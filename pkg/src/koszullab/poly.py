"""Graded polynomial rings over GF(p), grevlex, and graded free modules.

Terms are stored as single Python integers ("keys").  A key packs

    [ block | degree | (EMAX - e_n) ... (EMAX - e_1) | QMAX - component ]

with 16-bit exponent fields.  Because exponents are stored complemented and
the last variable sits in the most significant field, integer comparison of
two keys in the same component is exactly grevlex, ties broken by component
(lower index is larger).  Multiplying a term by a monomial ``m`` is adding
the constant ``key(m) - key(1)``, so shifting a whole vector by a monomial is
one integer addition per term.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Sequence

from .errors import AmbientMismatch, ExponentOverflow, InputError, NotHomogeneous, RingMismatch
from .field import DEFAULT_CHARACTERISTIC, PrimeField, PrimeFieldScalar, inverse_mod, signed

FW = 16
EMAX = (1 << (FW - 1)) - 1
QB = 24
QMAX = (1 << QB) - 1
QMASK = QMAX


class Ordering(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"
    module: str = "TOP"  # or "POT"

    def __post_init__(self):
        if self.kind != "grevlex":
            raise InputError(f"unsupported monomial order {self.kind!r}")
        if self.module not in ("TOP", "POT"):
            raise InputError(f"unsupported module order {self.module!r}")


GREVLEX = MonomialOrder()


@dataclass(frozen=True)
class Monomial:
    exponents: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def __mul__(self, other: Monomial) -> Monomial:
        if len(other.exponents) != len(self.exponents):
            raise RingMismatch("monomials from rings of different dimension")
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def divides(self, other: Monomial) -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))


@dataclass(frozen=True, eq=False)
class PolyRing:
    variables: tuple[str, ...]
    field: PrimeField = field(default_factory=PrimeField)
    order: MonomialOrder = GREVLEX

    def __post_init__(self):
        vs = tuple(self.variables)
        object.__setattr__(self, "variables", vs)
        if not vs:
            raise InputError("a polynomial ring needs at least one variable")
        if len(set(vs)) != len(vs):
            raise InputError(f"duplicate variable names in {vs}")
        for v in vs:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise InputError(f"invalid variable name {v!r}")
        n = len(vs)
        s = object.__setattr__
        s(self, "n", n)
        s(self, "p", self.field.p)
        s(self, "dshift", FW * n)
        s(self, "pshift", QB + FW * (n + 1))
        s(self, "fmask", (1 << (FW * n)) - 1)
        s(self, "guard", sum(1 << (FW * i + FW - 1) for i in range(n)))
        one = sum(EMAX << (FW * i) for i in range(n))
        s(self, "one_mono", one)
        s(self, "one_key", (one << QB) | QMAX)

    # identity is by (p, variables): rings built twice from the same header agree
    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.p == other.p and self.variables == other.variables

    def __hash__(self):
        return hash((self.p, self.variables))

    def __repr__(self):
        return f"GF({self.p})[{','.join(self.variables)}]"

    # -- key encoding -------------------------------------------------------
    def encode(self, exps: Sequence[int], comp: int = 0) -> int:
        if len(exps) != self.n:
            raise RingMismatch(f"expected {self.n} exponents, got {len(exps)}")
        mono = 0
        deg = 0
        for i, e in enumerate(exps):
            if e < 0 or e > EMAX:
                raise ExponentOverflow(f"exponent {e} outside [0, {EMAX}]")
            mono |= (EMAX - e) << (FW * i)
            deg += e
        if deg > EMAX:
            raise ExponentOverflow(f"degree {deg} exceeds {EMAX}")
        return (((deg << self.dshift) | mono) << QB) | (QMAX - comp)

    def decode(self, key: int) -> tuple[int, tuple[int, ...]]:
        comp = QMAX - (key & QMASK)
        m = key >> QB
        return comp, tuple(EMAX - ((m >> (FW * i)) & 0xFFFF) for i in range(self.n))

    def key_degree(self, key: int) -> int:
        return (key >> (QB + self.dshift)) & 0xFFFF

    def key_comp(self, key: int) -> int:
        return QMAX - (key & QMASK)

    def key_exps(self, key: int) -> tuple[int, ...]:
        m = key >> QB
        return tuple(EMAX - ((m >> (FW * i)) & 0xFFFF) for i in range(self.n))

    def with_comp(self, key: int, comp: int) -> int:
        return (key & ~QMASK) | (QMAX - comp)

    def monomial_shift(self, exps: Sequence[int]) -> int:
        """Integer to add to a key to multiply it by the monomial ``exps``."""
        return self.encode(exps) - self.one_key

    def divides_key(self, a: int, b: int) -> bool:
        """Does term ``a`` divide term ``b`` (same component required)?"""
        if (a ^ b) & QMASK:
            return False
        fa = (a >> QB) & self.fmask
        fb = (b >> QB) & self.fmask
        g = self.guard
        return ((fa | g) - fb) & g == g

    def lcm_key(self, a: int, b: int) -> int:
        ea = self.key_exps(a)
        eb = self.key_exps(b)
        return self.encode([x if x > y else y for x, y in zip(ea, eb)], self.key_comp(a))

    # -- construction helpers ---------------------------------------------
    def var(self, name_or_index) -> GradedPolynomial:
        i = self.variables.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.n
        e[i] = 1
        return GradedPolynomial(self, {self.encode(e): 1})

    def gens(self) -> list[GradedPolynomial]:
        return [self.var(i) for i in range(self.n)]

    def one(self) -> GradedPolynomial:
        return GradedPolynomial(self, {self.one_key: 1})

    def zero(self) -> GradedPolynomial:
        return GradedPolynomial(self, {})

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> GradedPolynomial:
        c = coeff % self.p
        return GradedPolynomial(self, {self.encode(exps): c} if c else {})

    def from_terms(self, terms: Iterable[tuple[Sequence[int], int]]) -> GradedPolynomial:
        """Build a polynomial from (exponents, coefficient) pairs; must be homogeneous."""
        raw = list(terms)
        ok, _ = is_homogeneous(raw)
        if not ok:
            raise NotHomogeneous(f"terms of mixed degree: {raw}")
        d: dict[int, int] = {}
        for exps, c in raw:
            k = self.encode(exps)
            d[k] = (d.get(k, 0) + c) % self.p
        return GradedPolynomial(self, {k: c for k, c in d.items() if c})

    def parse(self, text: str) -> GradedPolynomial:
        return self.from_terms(parse_terms(text, self.variables))

    def monomials_of_degree(self, d: int) -> list[tuple[int, ...]]:
        return list(_compositions(d, self.n))

    def format_key(self, key: int) -> str:
        exps = self.key_exps(key)
        parts = []
        for v, e in zip(self.variables, exps):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts)


def _compositions(d: int, n: int):
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, n - 1):
            yield (first,) + rest


# -- raw term utilities -------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[\^*+-]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            err = InputError(f"unexpected character {text[pos:].lstrip()[:1]!r} at offset {pos} in {text!r}")
            err.offset = pos
            raise err
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return out


def parse_terms(text: str, variables: Sequence[str]) -> list[tuple[tuple[int, ...], int]]:
    """Parse ``3*x1^2*x2 - y1*y2`` into a raw (exponents, coefficient) list.

    Errors carry the character offset of the offending token in ``.offset``.
    """
    index = {v: i for i, v in enumerate(variables)}
    toks = _tokenize(text)
    terms: list[tuple[tuple[int, ...], int]] = []
    i = 0

    def fail(msg, at):
        err = InputError(f"{msg} at offset {at} in {text!r}")
        err.offset = at
        raise err

    def peek(kind=None, value=None):
        if i >= len(toks):
            return None
        t = toks[i]
        if kind and t[0] != kind or value and t[1] != value:
            return None
        return t

    if not toks:
        return []
    first = True
    while i < len(toks):
        sign = 1
        t = peek("op")
        if t and t[1] in "+-":
            sign = -1 if t[1] == "-" else 1
            i += 1
        elif not first:
            fail("expected + or -", toks[i][2])
        first = False
        coeff = sign
        exps = [0] * len(variables)
        while True:
            t = peek()
            if t is None:
                fail("incomplete term", len(text))
            if t[0] == "int":
                coeff *= int(t[1])
                i += 1
            elif t[0] == "name":
                if t[1] not in index:
                    err = InputError(f"unknown variable {t[1]!r} at offset {t[2]} in {text!r}")
                    err.offset = t[2]
                    err.name = t[1]
                    raise err
                i += 1
                e = 1
                if peek("op", "^"):
                    i += 1
                    t2 = peek("int")
                    if t2 is None:
                        fail("expected exponent", toks[i][2] if i < len(toks) else len(text))
                    e = int(t2[1])
                    i += 1
                exps[index[t[1]]] += e
            else:
                fail(f"unexpected {t[1]!r}", t[2])
            if peek("op", "*"):
                i += 1
                continue
            break
        terms.append((tuple(exps), coeff))
    return terms


def is_homogeneous(raw_terms) -> tuple[bool, int | None]:
    """Return (accepted, degree).  The zero polynomial is homogeneous of degree None."""
    degs = {sum(e) for e, c in raw_terms if c}
    if not degs:
        return True, None
    if len(degs) > 1:
        return False, None
    return True, degs.pop()


def monomial_compare(a: Monomial, b: Monomial, order: MonomialOrder = GREVLEX) -> Ordering:
    if len(a.exponents) != len(b.exponents):
        raise RingMismatch("monomials from rings of different dimension")
    da, db = a.degree, b.degree
    if da != db:
        return Ordering.GT if da > db else Ordering.LT
    for x, y in zip(reversed(a.exponents), reversed(b.exponents)):
        if x != y:
            return Ordering.GT if x < y else Ordering.LT
    return Ordering.EQ


# -- raw dict arithmetic (shared with the engine) ---------------------------


def vec_add_scaled(f: dict, g: dict, c: int, shift: int, p: int) -> None:
    """In place: f -= c * (g shifted by ``shift``)."""
    get = f.get
    for k, v in g.items():
        kk = k + shift
        nv = (get(kk, 0) - c * v) % p
        if nv:
            f[kk] = nv
        else:
            del f[kk]


def vec_times_poly(v: dict, poly: dict, one_key: int, p: int) -> dict:
    out: dict[int, int] = {}
    for kp, cp in poly.items():
        shift = kp - one_key
        get = out.get
        for kv, cv in v.items():
            kk = kv + shift
            nv = (get(kk, 0) + cp * cv) % p
            if nv:
                out[kk] = nv
            else:
                del out[kk]
    return out


def vec_scale(v: dict, c: int, p: int) -> dict:
    c %= p
    if not c:
        return {}
    return {k: x * c % p for k, x in v.items()}


def vec_sum(vs: Iterable[tuple[int, dict]], p: int) -> dict:
    out: dict[int, int] = {}
    for c, v in vs:
        get = out.get
        for k, x in v.items():
            nv = (get(k, 0) + c * x) % p
            if nv:
                out[k] = nv
            else:
                del out[k]
    return out


def format_terms(ring: PolyRing, terms: dict, comp_names=None) -> str:
    if not terms:
        return "0"
    p = ring.p
    out = []
    for k in sorted(terms, reverse=True):
        c = signed(terms[k], p)
        mono = ring.format_key(k)
        if comp_names is not None:
            comp = ring.key_comp(k)
            mono = f"{mono}*{comp_names(comp)}" if mono else comp_names(comp)
        neg = c < 0
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# -- user-facing value types --------------------------------------------------


class GradedPolynomial:
    """Homogeneous polynomial; immutable once constructed."""

    __slots__ = ("ring", "terms", "degree")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        if terms:
            degs = {ring.key_degree(k) for k in terms}
            if len(degs) != 1:
                raise NotHomogeneous("terms of mixed degree")
            self.degree = degs.pop()
        else:
            self.degree = None  # the zero polynomial

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: GradedPolynomial):
        if not isinstance(other, GradedPolynomial):
            raise TypeError(f"expected GradedPolynomial, got {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __mul__(self, other):
        if isinstance(other, int):
            return GradedPolynomial(self.ring, vec_scale(self.terms, other, self.ring.p))
        if isinstance(other, PrimeFieldScalar):
            return self * other.value
        self._check(other)
        if self.terms and other.terms and self.degree + other.degree > EMAX:
            raise ExponentOverflow("product degree exceeds the exponent range")
        return GradedPolynomial(self.ring, vec_times_poly(self.terms, other.terms, self.ring.one_key, self.ring.p))

    __rmul__ = __mul__

    def __add__(self, other):
        self._check(other)
        return GradedPolynomial(self.ring, vec_sum([(1, self.terms), (1, other.terms)], self.ring.p))

    def __sub__(self, other):
        self._check(other)
        return GradedPolynomial(self.ring, vec_sum([(1, self.terms), (-1, other.terms)], self.ring.p))

    def __neg__(self):
        return GradedPolynomial(self.ring, vec_scale(self.terms, -1, self.ring.p))

    def __pow__(self, e: int):
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, GradedPolynomial) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def leading_key(self) -> int:
        return max(self.terms)

    def leading_monomial(self) -> Monomial:
        return Monomial(self.ring.key_exps(self.leading_key()))

    def monic(self) -> GradedPolynomial:
        if not self.terms:
            return self
        c = inverse_mod(self.terms[self.leading_key()], self.ring.p)
        return GradedPolynomial(self.ring, vec_scale(self.terms, c, self.ring.p))

    def term_list(self) -> list[tuple[Monomial, int]]:
        """Terms in strictly descending grevlex order."""
        return [(Monomial(self.ring.key_exps(k)), self.terms[k]) for k in sorted(self.terms, reverse=True)]

    def variables_used(self) -> set[int]:
        used = set()
        for k in self.terms:
            used.update(i for i, e in enumerate(self.ring.key_exps(k)) if e)
        return used

    def __repr__(self):
        return format_terms(self.ring, self.terms)

    __str__ = __repr__


def poly_mul(f: GradedPolynomial, g: GradedPolynomial) -> GradedPolynomial:
    return f * g


@dataclass(frozen=True)
class GradedFreeModule:
    ring: PolyRing
    shifts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "shifts", tuple(int(s) for s in self.shifts))
        if len(self.shifts) > QMAX:
            raise InputError("free module rank too large")

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def basis(self, i: int) -> FreeModuleElement:
        return FreeModuleElement(self, {self.ring.one_key - i: 1})

    def zero(self) -> FreeModuleElement:
        return FreeModuleElement(self, {})

    def element(self, entries: Sequence[GradedPolynomial | int]) -> FreeModuleElement:
        """Vector from per-component polynomials."""
        if len(entries) != self.rank:
            raise AmbientMismatch(f"expected {self.rank} entries, got {len(entries)}")
        terms: dict[int, int] = {}
        for i, f in enumerate(entries):
            if isinstance(f, int):
                f = self.ring.monomial([0] * self.ring.n, f)
            if f.ring != self.ring:
                raise RingMismatch(f"{f.ring} vs {self.ring}")
            for k, c in f.terms.items():
                terms[k - i] = c
        return FreeModuleElement(self, terms)

    def __repr__(self):
        return f"{self.ring}^{self.rank}{list(self.shifts)}"


class FreeModuleElement:
    """Homogeneous element of a graded free module (degrees include shifts)."""

    __slots__ = ("module", "terms", "degree")

    def __init__(self, module: GradedFreeModule, terms: dict):
        self.module = module
        self.terms = terms
        ring = module.ring
        if terms:
            degs = set()
            for k in terms:
                c = ring.key_comp(k)
                if c >= module.rank:
                    raise AmbientMismatch(f"component {c} outside rank {module.rank}")
                degs.add(ring.key_degree(k) + module.shifts[c])
            if len(degs) != 1:
                raise NotHomogeneous("vector is not homogeneous with respect to the shifts")
            self.degree = degs.pop()
        else:
            self.degree = None

    @property
    def ring(self) -> PolyRing:
        return self.module.ring

    def is_zero(self) -> bool:
        return not self.terms

    def entry(self, i: int) -> GradedPolynomial:
        ring = self.ring
        return GradedPolynomial(ring, {ring.with_comp(k, 0): c for k, c in self.terms.items() if ring.key_comp(k) == i})

    def entries(self) -> list[GradedPolynomial]:
        return [self.entry(i) for i in range(self.module.rank)]

    def _check(self, other):
        if not isinstance(other, FreeModuleElement) or other.module != self.module:
            raise AmbientMismatch("elements of different free modules")

    def __add__(self, other):
        self._check(other)
        return FreeModuleElement(self.module, vec_sum([(1, self.terms), (1, other.terms)], self.ring.p))

    def __sub__(self, other):
        self._check(other)
        return FreeModuleElement(self.module, vec_sum([(1, self.terms), (-1, other.terms)], self.ring.p))

    def __neg__(self):
        return FreeModuleElement(self.module, vec_scale(self.terms, -1, self.ring.p))

    def __mul__(self, other):
        if isinstance(other, int):
            return FreeModuleElement(self.module, vec_scale(self.terms, other, self.ring.p))
        if isinstance(other, GradedPolynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{other.ring} vs {self.ring}")
            return FreeModuleElement(self.module, vec_times_poly(self.terms, other.terms, self.ring.one_key, self.ring.p))
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, FreeModuleElement) and self.module == other.module and self.terms == other.terms

    def __hash__(self):
        return hash((self.module, frozenset(self.terms.items())))

    def term_list(self) -> list[tuple[Monomial, int, int]]:
        ring = self.ring
        return [(Monomial(ring.key_exps(k)), ring.key_comp(k), self.terms[k]) for k in sorted(self.terms, reverse=True)]

    def __repr__(self):
        if self.module.rank == 1:
            return format_terms(self.ring, self.terms)
        return "[" + ", ".join(str(e) for e in self.entries()) + "]"


def make_ring(variables: Sequence[str] | str, p: int = DEFAULT_CHARACTERISTIC) -> PolyRing:
    if isinstance(variables, str):
        variables = [v.strip() for v in variables.replace(" ", ",").split(",") if v.strip()]
    return PolyRing(tuple(variables), PrimeField(p))
