"""Products of ideals of linear forms and the regularity tower of their colons.

Ideals in a family are indexed 1..d, as are the index sets A and the
drop-sets of complementary products.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from . import _linalg
from .errors import (
    BoundViolated,
    CheckFailed,
    EmptyIndexSet,
    EqualityFailed,
    InvalidParameter,
    NotContained,
    ZeroDivisorArgument,
)
from .groebner import (
    Submodule,
    ideal,
    ideal_colon,
    ideal_power,
    ideal_product,
    intersect,
    intersect_all,
    substitute,
    unit_ideal,
    zero_ideal,
)
from .modules import PresentedModule, subquotient_raw
from .poly import GradedPolynomial, PolyRing, make_ring
from .resolution import NEG_INF, regularity, regularity_value

MAX_DECOMPOSITION_D = 6


@dataclass
class LinearIdealFamily:
    ring: PolyRing
    spaces: list  # per ideal: rows of coefficients (reduced echelon form)

    def __post_init__(self):
        if not self.spaces:
            raise InvalidParameter("a family needs at least one ideal")
        n, p = self.ring.n, self.ring.p
        out = []
        for rows in self.spaces:
            for r in rows:
                if len(r) != n:
                    raise InvalidParameter(f"linear form with {len(r)} coefficients in {n} variables")
            out.append(_linalg.rref(rows, p)[0] if rows else [])
        self.spaces = out

    @classmethod
    def from_forms(cls, ring: PolyRing, forms: Sequence[Iterable[GradedPolynomial | str]]) -> LinearIdealFamily:
        spaces = []
        for group in forms:
            rows = []
            for g in group:
                if isinstance(g, str):
                    g = ring.parse(g)
                if g.is_zero():
                    continue
                if g.degree != 1:
                    raise InvalidParameter(f"{g} is not a linear form")
                row = [0] * ring.n
                for k, c in g.terms.items():
                    row[ring.key_exps(k).index(1)] = c
                rows.append(row)
            spaces.append(rows)
        return cls(ring, spaces)

    @property
    def d(self) -> int:
        return len(self.spaces)

    def form(self, row: Sequence[int]) -> GradedPolynomial:
        ring = self.ring
        terms = {}
        for i, c in enumerate(row):
            if c:
                e = [0] * ring.n
                e[i] = 1
                terms[ring.encode(e)] = c % ring.p
        return GradedPolynomial(ring, terms)

    def ideal_at(self, i: int) -> Submodule:
        """I_i, 1-based."""
        return ideal(self.ring, [self.form(r) for r in self.spaces[i - 1]])

    @property
    def ideals(self) -> list[Submodule]:
        return [self.ideal_at(i) for i in range(1, self.d + 1)]

    def sub_family(self, keep: Iterable[int]) -> LinearIdealFamily:
        return LinearIdealFamily(self.ring, [self.spaces[i - 1] for i in keep])

    def span_rows(self) -> list[list[int]]:
        rows = [r for s in self.spaces for r in s]
        return _linalg.rref(rows, self.ring.p)[0] if rows else []

    def describe(self) -> list[list[str]]:
        return [[str(self.form(r)) for r in s] for s in self.spaces]


def product_ideal(F: LinearIdealFamily) -> Submodule:
    out = unit_ideal(F.ring)
    for I in F.ideals:
        if not I.gens:
            return zero_ideal(F.ring)
        out = ideal_product(out, I)
    return out


def index_ideal(F: LinearIdealFamily, A: Iterable[int]) -> Submodule:
    """I_A = sum of I_i over i in A."""
    A = sorted(set(A))
    if not A:
        raise EmptyIndexSet("index set must be nonempty")
    _check_indices(F, A)
    gens = [g for i in A for g in F.ideal_at(i).gens]
    return Submodule(F.ideal_at(1).ambient, gens).minimal_generators()


def complementary_product(F: LinearIdealFamily, drop: Iterable[int]) -> Submodule:
    """J_drop = product of I_j for j not in ``drop``; the empty product is S."""
    drop = set(drop)
    _check_indices(F, drop)
    keep = [j for j in range(1, F.d + 1) if j not in drop]
    if not keep:
        return unit_ideal(F.ring)
    return product_ideal(F.sub_family(keep))


def _check_indices(F: LinearIdealFamily, idx):
    for i in idx:
        if not 1 <= i <= F.d:
            raise InvalidParameter(f"index {i} outside 1..{F.d}")


def ideals_equal(a: Submodule, b: Submodule) -> bool:
    return a.issubset(b) and b.issubset(a)


@dataclass
class DecompositionReport:
    components: list  # (A, exponent, ideal)
    equal: bool
    coarse_equal: bool

    def to_dict(self) -> dict:
        return {
            "components": [{"A": list(A), "exponent": e, "generators": [str(g) for g in c.gens]} for A, e, c in self.components],
            "equal": self.equal,
            "coarse_equal": self.coarse_equal,
        }


def primary_decomposition_linprod(F: LinearIdealFamily) -> DecompositionReport:
    """I = intersection of I_A^|A| and I = J_1 cap ... cap J_d cap I_[d]^d, both certified."""
    d = F.d
    if d > MAX_DECOMPOSITION_D:
        raise InvalidParameter(f"d = {d} exceeds {MAX_DECOMPOSITION_D}")
    I = product_ideal(F)
    comps = []
    for size in range(1, d + 1):
        for A in combinations(range(1, d + 1), size):
            comps.append((A, size, ideal_power(index_ideal(F, A), size)))
    inter = intersect_all([c for _, _, c in comps])
    equal = ideals_equal(I, inter)
    coarse = intersect_all([complementary_product(F, [i]) for i in range(1, d + 1)] + [ideal_power(index_ideal(F, range(1, d + 1)), d)])
    coarse_equal = ideals_equal(I, coarse)
    rep = DecompositionReport(comps, equal, coarse_equal)
    if not (equal and coarse_equal):
        raise EqualityFailed("decomposition of the product ideal does not match", rep.to_dict())
    return rep


@dataclass
class ColonSubringReport:
    transform: list  # rows: new variable z_k as a linear form in the old variables
    rank_V: int
    ring: PolyRing  # ring in the new coordinates
    generators: list  # reduced GB of I:f in the new coordinates
    ok: bool = True

    def to_dict(self) -> dict:
        return {
            "rank_V": self.rank_V,
            "transform": self.transform,
            "generators": [str(g) for g in self.generators],
            "in_subring": self.ok,
        }


def change_coordinates(F: LinearIdealFamily):
    """Coordinates z with z_1..z_r a basis of V = sum V_i.

    Returns (new ring, rows B with z = B x, substitution images x_i -> forms in z).
    """
    ring = F.ring
    p = ring.p
    V = F.span_rows()
    B = _linalg.complete_basis(V, ring.n, p)
    Binv = _linalg.inverse(B, p)
    new = make_ring([f"z{k + 1}" for k in range(ring.n)], p)
    images = []
    for i in range(ring.n):
        terms = {}
        for k in range(ring.n):
            c = Binv[i][k]
            if c:
                e = [0] * ring.n
                e[k] = 1
                terms[new.encode(e)] = c
        images.append(GradedPolynomial(new, terms))
    return new, B, images, len(V)


def colon_subring_check(F: LinearIdealFamily, f: GradedPolynomial) -> ColonSubringReport:
    """The reduced GB of I:f, in coordinates adapted to V, lives in k[V]."""
    if f.is_zero():
        raise ZeroDivisorArgument("colon by the zero polynomial")
    new, B, images, r = change_coordinates(F)
    I = substitute(product_ideal(F), images, new)
    fz = substitute(ideal(F.ring, [f]), images, new).polys()[0]
    C = ideal_colon(I, fz)
    gens = [GradedPolynomial(new, e.terms) for e in C.gb.elements]
    ok = all(all(v < r for v in g.variables_used()) for g in gens)
    rep = ColonSubringReport(B, r, new, gens, ok)
    if not ok:
        raise CheckFailed("a generator of I:f leaves the subring k[V]", rep.to_dict())
    return rep


@dataclass
class SubquotientModule:
    numerator: Submodule
    denominator: Submodule
    realized: PresentedModule


def subquotient(num: Submodule, den: Submodule) -> SubquotientModule:
    """num/den as a presented module; den must be contained in num."""
    if not den.issubset(num):
        raise NotContained("denominator is not contained in the numerator")
    M, _ = subquotient_raw(num.ambient, num.raw(), den.raw())
    return SubquotientModule(num, den, M)


def _quotient_module(num: Submodule, den: Submodule) -> PresentedModule:
    return subquotient_raw(num.ambient, num.raw(), den.raw())[0]


# -- the proof tower --------------------------------------------------------------


class _Tower:
    """Cached J_X, J_X : f and intersections for one family and form f."""

    def __init__(self, F: LinearIdealFamily, f: GradedPolynomial):
        self.F, self.f = F, f
        self._J: dict = {}
        self._Jf: dict = {}

    def J(self, drop) -> Submodule:
        key = frozenset(drop)
        if key not in self._J:
            self._J[key] = complementary_product(self.F, key)
        return self._J[key]

    def Jf(self, drop) -> Submodule:
        key = frozenset(drop)
        if key not in self._Jf:
            self._Jf[key] = ideal_colon(self.J(key), self.f)
        return self._Jf[key]

    def colon_chain(self, extra: frozenset, upto: int) -> Submodule:
        """(J_extra : f) cap J_{1 + extra} cap ... cap J_{upto + extra}."""
        out = self.Jf(extra)
        for k in range(1, upto + 1):
            out = intersect(out, self.J(extra | {k}))
        return out


@dataclass
class TraceEntry:
    name: str
    reg: object
    bound: object
    passed: bool

    def to_dict(self) -> dict:
        return {"module": self.name, "reg": regularity_value(self.reg), "bound": self.bound, "pass": self.passed}


@dataclass
class ProofTrace:
    family: list
    f: str
    d: int
    entries: list = field(default_factory=list)
    checks: list = field(default_factory=list)  # (name, bool)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries) and all(ok for _, ok in self.checks)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "f": self.f,
            "d": self.d,
            "modules": [e.to_dict() for e in self.entries],
            "checks": [{"check": n, "pass": ok} for n, ok in self.checks],
            "pass": self.passed,
        }


def proof_trace(F: LinearIdealFamily, f: GradedPolynomial, i_range: Iterable[int] | None = None) -> ProofTrace:
    """Regularities of M_i, N_t and (for d >= 2) P_0, P_1, P_{1,j} with their bounds.

    ``i_range`` selects the indices i (1 <= i <= d-1) for which the P-modules
    are built; by default all of them.
    """
    if f.is_zero():
        raise ZeroDivisorArgument("colon by the zero polynomial")
    d = F.d
    T = _Tower(F, f)
    I = T.J(())
    trace = ProofTrace(F.describe(), str(f), d)

    def record(name, num, den, bound):
        r = regularity(_quotient_module(num, den))
        trace.entries.append(TraceEntry(name, r, bound, r == NEG_INF or r <= bound))

    none = frozenset()
    for i in range(d + 1):
        record(f"M_{i}", T.colon_chain(none, i), I, d - 1)
    for t in range(d):
        num = T.colon_chain(none, t) + T.J({t + 1})
        record(f"N_{t}", num, T.J({t + 1}), d - 1)
    Id = index_ideal(F, range(1, d + 1))
    if not Id.contains(f):
        Md = _quotient_module(T.colon_chain(none, d), I)
        trace.checks.append(("M_d = 0 since f is not in I_[d]", Md.is_zero()))
    if d >= 2:
        chosen = range(1, d) if i_range is None else [i for i in i_range if 1 <= i <= d - 1]
        for i in chosen:
            A = T.colon_chain(frozenset({i + 1}), i)
            B = T.colon_chain(none, i) + T.J({i + 1})
            trace.checks.append((f"i={i}: denominator of P_1 inside numerator", B.issubset(A)))
            record(f"P_0[i={i}]", A, T.J({i + 1}), d - 2)
            record(f"P_1[i={i}]", A, B, d - 2)
            for j in range(1, i + 2):
                Ij = F.ideal_at(j)
                trace.checks.append((f"i={i}: I_{j} annihilates P_1", ideal_product(Ij, A).issubset(B)))
            for j in range(i + 2, d + 1):
                U = T.colon_chain(frozenset({i + 1, j}), i)
                Y = T.colon_chain(frozenset({j}), i) + T.J({i + 1, j})
                Ij = F.ideal_at(j)
                trace.checks.append((f"i={i}, j={j}: (a)", ideal_product(Ij, U).issubset(A) and A.issubset(U)))
                trace.checks.append((f"i={i}, j={j}: (b)", ideal_product(Ij, Y).issubset(B) and B.issubset(Y)))
                record(f"P_1,{j}[i={i}]", U, Y, d - 3)
    if not trace.passed:
        raise BoundViolated("a regularity bound of the tower failed", trace.to_dict())
    return trace


def p1_system_data(F: LinearIdealFamily, f: GradedPolynomial, i: int):
    """Numerators/denominators for the maps P_1 -> P_{1,j}, j = 1..d.

    Returns (A, B, [(j, U_j, Y_j) or (j, None, None)]) where P_1 = A/B and
    P_{1,j} = U_j/Y_j (zero for j <= i + 1).
    """
    d = F.d
    T = _Tower(F, f)
    none = frozenset()
    A = T.colon_chain(frozenset({i + 1}), i)
    B = T.colon_chain(none, i) + T.J({i + 1})
    out = []
    for j in range(1, d + 1):
        if j <= i + 1:
            out.append((j, None, None))
        else:
            U = T.colon_chain(frozenset({i + 1, j}), i)
            Y = T.colon_chain(frozenset({j}), i) + T.J({i + 1, j})
            out.append((j, U, Y))
    return A, B, out


def random_linear_form(ring: PolyRing, rng: random.Random, support: int | None = None) -> list[int]:
    n = ring.n
    k = support if support is not None else rng.randint(1, n)
    idx = rng.sample(range(n), min(k, n))
    row = [0] * n
    for i in idx:
        row[i] = rng.randrange(1, ring.p)
    return row


def random_family(ring: PolyRing, d: int, max_forms: int, seed: int) -> LinearIdealFamily:
    """Deterministic pseudo-random family: d ideals, each spanned by 1..max_forms forms."""
    if d < 1 or max_forms < 1:
        raise InvalidParameter("d and max_forms must be positive")
    rng = random.Random(seed)
    spaces = []
    for _ in range(d):
        k = rng.randint(1, max_forms)
        spaces.append([random_linear_form(ring, rng) for _ in range(k)])
    return LinearIdealFamily(ring, spaces)
