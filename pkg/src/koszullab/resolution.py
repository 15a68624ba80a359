"""Minimal graded free resolutions, Betti tables and the invariants read off them."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .errors import EmptyModule, InternalError, NotFiniteLength, UnsupportedQuotient
from .field import inverse_mod
from .groebner import Submodule, lower_basis, minimal_generators_raw, preimage_raw, syz_raw
from .modules import PresentedModule, basis_vec, times_poly
from .poly import GradedFreeModule, PolyRing

NEG_INF = float("-inf")
DEFAULT_CUTOFF = 6


@dataclass
class BettiTable:
    entries: dict = field(default_factory=dict)  # (i, j) -> beta
    cutoff: int | None = None

    @classmethod
    def from_shifts(cls, shift_lists: Sequence[Sequence[int]], cutoff=None) -> BettiTable:
        out: dict = {}
        for i, shifts in enumerate(shift_lists):
            for j in shifts:
                out[(i, j)] = out.get((i, j), 0) + 1
        return cls(out, cutoff)

    def __getitem__(self, ij) -> int:
        return self.entries.get(ij, 0)

    def is_zero(self) -> bool:
        return not self.entries

    @property
    def pdim(self) -> int:
        return max((i for i, _ in self.entries), default=-1)

    def regularity(self):
        return max((j - i for i, j in self.entries), default=NEG_INF)

    def column(self, i: int) -> dict:
        return {j: b for (ii, j), b in self.entries.items() if ii == i}

    def to_dict(self) -> dict:
        return {"cutoff": self.cutoff, "entries": [[i, j, b] for (i, j), b in sorted(self.entries.items())]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    def format(self) -> str:
        """Macaulay2-style table: rows j - i, columns i."""
        if not self.entries:
            return "0"
        cols = range(self.pdim + 1)
        rows = sorted({j - i for i, j in self.entries})
        head = ["     "] + [f"{i:>5}" for i in cols]
        lines = ["".join(head)]
        for r in rows:
            cells = []
            for i in cols:
                b = self[(i, i + r)]
                cells.append(f"{b if b else '.':>5}")
            lines.append(f"{r:>4}:" + "".join(cells))
        if self.cutoff is not None:
            lines.append(f"(truncated at homological degree {self.cutoff})")
        return "\n".join(lines)


@dataclass
class GradedComplex:
    """F_0 <- F_1 <- ... ; ``differentials[i-1]`` holds the columns of d_i."""

    ring: PolyRing
    modules: list
    differentials: list
    cutoff: int | None = None

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def betti(self) -> BettiTable:
        return BettiTable.from_shifts([F.shifts for F in self.modules], self.cutoff)

    def composes_to_zero(self, modulo: Submodule | None = None) -> bool:
        from .groebner import mat_apply
        from .modules import reduces_to_zero

        ring = self.ring
        for i in range(1, len(self.differentials)):
            prev, cur = self.differentials[i - 1], self.differentials[i]
            comp = [mat_apply(ring, prev, c) for c in cur]
            if modulo is None:
                if any(comp):
                    return False
            else:
                F = self.modules[i - 1]
                rows = [(g.degree + s, times_poly(ring, basis_vec(ring, r), g.terms)) for r, s in enumerate(F.shifts) for g in modulo.gens]
                if not reduces_to_zero(ring, rows, comp):
                    return False
        return True

    def is_minimal(self) -> bool:
        """No unit (constant) entries in any differential."""
        ring = self.ring
        for d in self.differentials:
            for col in d:
                if any(ring.key_degree(k) == 0 for k in col):
                    return False
        return True


@dataclass
class Resolution:
    complex: GradedComplex
    betti: BettiTable


# -- resolutions over S -------------------------------------------------------------


def _syzygy_chain(ring: PolyRing, F0_shifts, cols, minimal: bool, limit: int):
    modules = [GradedFreeModule(ring, tuple(F0_shifts))]
    diffs = []
    rank = len(F0_shifts)
    while cols:
        if len(diffs) >= limit:
            raise InternalError("resolution longer than the number of variables")
        modules.append(GradedFreeModule(ring, tuple(d for d, _ in cols)))
        diffs.append([v for _, v in cols])
        if minimal:
            nxt = syz_raw(ring, rank, cols)
        else:
            res = preimage_raw(ring, rank, [d for d, _ in cols], [v for _, v in cols])
            nxt = lower_basis(res)
        rank = len(cols)
        cols = nxt
    return modules, diffs


def free_resolution(M: PresentedModule, minimal: bool = True) -> Resolution:
    """Free resolution of M over S.

    With ``minimal=False`` the cover and relations are used as given and each
    syzygy module is taken on a full Groebner basis, which is usually not
    minimal; :func:`minimalize` turns that into the minimal one.
    """
    ring = M.ring
    P = M.minimal if minimal else M
    if minimal and P.is_zero():
        C = GradedComplex(ring, [], [])
        return Resolution(C, C.betti())
    modules, diffs = _syzygy_chain(ring, P.shifts, P.rel_raw(), minimal, ring.n + 1 if minimal else 10**6)
    C = GradedComplex(ring, modules, diffs)
    if minimal and C.length > ring.n:
        raise InternalError("minimal resolution longer than the number of variables")
    return Resolution(C, C.betti())


def _poly_at(ring: PolyRing, col: dict, r: int) -> dict:
    return {k + r: c for k, c in col.items() if ring.key_comp(k) == r}


def _drop_comp(ring: PolyRing, col: dict, r: int) -> dict:
    out = {}
    for k, c in col.items():
        j = ring.key_comp(k)
        if j == r:
            continue
        out[k + 1 if j > r else k] = c
    return out


def minimalize(C: GradedComplex) -> GradedComplex:
    """Cancel unit entries until every differential has entries in m."""
    ring = C.ring
    p = ring.p
    shifts = [list(F.shifts) for F in C.modules]
    diffs = [[dict(c) for c in d] for d in C.differentials]
    changed = True
    while changed:
        changed = False
        for i, d in enumerate(diffs):  # d = d_{i+1}: F_{i+1} -> F_i
            hit = None
            for s, col in enumerate(d):
                for k, c in col.items():
                    if ring.key_degree(k) == 0:
                        hit = (s, ring.key_comp(k), c)
                        break
                if hit:
                    break
            if not hit:
                continue
            s, r, u = hit
            uinv = inverse_mod(u, p)
            pivot = d[s]
            new = []
            for t, col in enumerate(d):
                if t == s:
                    continue
                entry = _poly_at(ring, col, r)
                if entry:
                    col = dict(col)
                    corr = times_poly(ring, pivot, entry)
                    for k, c in corr.items():
                        nv = (col.get(k, 0) - c * uinv) % p
                        if nv:
                            col[k] = nv
                        else:
                            col.pop(k, None)
                new.append(_drop_comp(ring, col, r))
            diffs[i] = new
            if i + 1 < len(diffs):
                diffs[i + 1] = [_drop_comp(ring, col, s) for col in diffs[i + 1]]
            if i > 0:
                diffs[i - 1] = diffs[i - 1][:r] + diffs[i - 1][r + 1 :]
            del shifts[i + 1][s]
            del shifts[i][r]
            changed = True
            break
    while len(shifts) > 1 and not shifts[-1]:
        shifts.pop()
        diffs.pop()
    if shifts and not shifts[-1] and len(shifts) == 1:
        shifts.pop()
    modules = [GradedFreeModule(ring, tuple(s)) for s in shifts]
    return GradedComplex(ring, modules, diffs, C.cutoff)


def betti_table(M: PresentedModule) -> BettiTable:
    return free_resolution(M).betti


def regularity(M: PresentedModule):
    """max j - i over the Betti table; -inf for the zero module."""
    return betti_table(M).regularity()


def has_linear_resolution(M: PresentedModule, d: int) -> bool:
    B = betti_table(M)
    return all(j == i + d for i, j in B.entries)


def largest_generator_degree(M: PresentedModule) -> int:
    B = betti_table(M)
    col = B.column(0)
    if not col:
        raise EmptyModule("the zero module has no generators")
    return max(col)


# -- Hilbert series -----------------------------------------------------------------


@dataclass
class HilbertSeries:
    """numerator(t) / (1 - t)^n, numerator as a coefficient list."""

    numerator: list
    n: int

    @classmethod
    def from_betti(cls, B: BettiTable, n: int) -> HilbertSeries:
        lo = min((j for _, j in B.entries), default=0)
        hi = max((j for _, j in B.entries), default=0)
        if lo < 0:
            raise InternalError("negative generator degrees are not supported")
        num = [0] * (hi + 1)
        for (i, j), b in B.entries.items():
            num[j] += (-1) ** i * b
        while num and num[-1] == 0:
            num.pop()
        return cls(num, n)

    def is_zero(self) -> bool:
        return not self.numerator

    def root_multiplicity_at_one(self) -> int:
        num = list(self.numerator)
        m = 0
        while num and sum(num) == 0:
            num = _divide_by_one_minus_t(num)
            m += 1
        return m

    def krull_dim(self) -> int:
        if self.is_zero():
            return -1
        return self.n - self.root_multiplicity_at_one()

    def coefficient(self, d: int) -> int:
        """dim M_d, from expanding 1/(1-t)^n."""
        total = 0
        for j, a in enumerate(self.numerator):
            k = d - j
            if a and k >= 0:
                total += a * _binom(k + self.n - 1, self.n - 1)
        return total

    def polynomial(self) -> list:
        """Hilbert series as a polynomial (finite length only)."""
        num = list(self.numerator)
        for _ in range(self.n):
            num = _divide_by_one_minus_t(num)
            if num is None:
                raise NotFiniteLength("module does not have finite length")
        while num and num[-1] == 0:
            num.pop()
        return num

    def __str__(self):
        terms = []
        for j, a in enumerate(self.numerator):
            if a:
                terms.append(f"{a}*t^{j}" if j else str(a))
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"({body}) / (1-t)^{self.n}"


def _binom(a: int, b: int) -> int:
    from math import comb

    return comb(a, b) if a >= 0 else 0


def _divide_by_one_minus_t(num: list):
    """Exact division by (1 - t); None if not divisible."""
    if sum(num) != 0:
        return None
    out = []
    acc = 0
    for a in num[:-1]:
        acc += a
        out.append(acc)
    return out


def hilbert_series(M: PresentedModule) -> HilbertSeries:
    return HilbertSeries.from_betti(betti_table(M), M.ring.n)


def krull_dim(M: PresentedModule) -> int:
    return hilbert_series(M).krull_dim()


def is_finite_length(M: PresentedModule) -> bool:
    return krull_dim(M) <= 0


def top_degree(M: PresentedModule):
    """Largest d with M_d != 0 for a finite-length module; -inf for zero."""
    H = hilbert_series(M)
    if H.krull_dim() > 0:
        raise NotFiniteLength("module does not have finite length")
    poly = H.polynomial()
    return len(poly) - 1 if poly else NEG_INF


# -- resolutions over a hypersurface ------------------------------------------------


def _hypersurface(M: PresentedModule):
    J = M.quotient_ideal
    if J is None:
        raise UnsupportedQuotient("module has no quotient ideal")
    gens = J.minimal_generators().gens
    if len(gens) != 1:
        raise UnsupportedQuotient("only principal quotient ideals are supported")
    return gens[0].terms, gens[0].degree


def resolution_over_hypersurface(M: PresentedModule, cutoff: int = DEFAULT_CUTOFF) -> Resolution:
    """Minimal resolution of M over R = S/(f) through homological degree ``cutoff``.

    Each step takes R-syzygies of the current columns A: the S-syzygies of
    [A | f * identity] modulo f * S^s, whose minimal generators are read off
    directly from the augmented Groebner computation.
    """
    if cutoff < 1:
        from .errors import InvalidParameter

        raise InvalidParameter("cutoff must be at least 1")
    ring = M.ring
    f, fdeg = _hypersurface(M)
    # minimal generators of M as an R-module
    K = [(s, basis_vec(ring, j)) for j, s in enumerate(M.shifts)]
    U = M.rel_raw()
    Kmin = minimal_generators_raw(ring, K, modulo=U)
    if not Kmin:
        C = GradedComplex(ring, [], [], cutoff)
        return Resolution(C, C.betti())
    shifts = [d for d, _ in Kmin]
    known_lower = [(s + fdeg, times_poly(ring, basis_vec(ring, j), f)) for j, s in enumerate(shifts)]
    res = preimage_raw(ring, M.rank, shifts, [v for _, v in Kmin], modulo=U, known_lower=known_lower)
    cols = [(d, v) for d, v, _ in res.recorded]
    modules = [GradedFreeModule(ring, tuple(shifts))]
    diffs = []
    rank = len(shifts)
    for _ in range(cutoff):
        if not cols:
            break
        modules.append(GradedFreeModule(ring, tuple(d for d, _ in cols)))
        diffs.append([v for _, v in cols])
        src = [d for d, _ in cols]
        upper = [(s + fdeg, times_poly(ring, basis_vec(ring, a), f)) for a, s in enumerate(modules[-2].shifts)]
        lower = [(s + fdeg, times_poly(ring, basis_vec(ring, i), f)) for i, s in enumerate(src)]
        res = preimage_raw(ring, rank, src, [v for _, v in cols], modulo=upper, known_lower=lower)
        rank = len(cols)
        cols = [(d, v) for d, v, _ in res.recorded]
    C = GradedComplex(ring, modules, diffs, cutoff)
    return Resolution(C, C.betti())


@dataclass
class TruncatedRegularity:
    value: object
    exact: bool
    cutoff: int

    def to_dict(self) -> dict:
        v = self.value
        return {"value": v if v != NEG_INF else "-inf", "exact": self.exact, "cutoff": self.cutoff}


def truncated_regularity_over_R(M: PresentedModule, cutoff: int = DEFAULT_CUTOFF) -> TruncatedRegularity:
    """max j - i over the truncated Betti table over R = S/(f).

    Reported as exact only for a quadric f when the strand from homological
    degree 2 through the cutoff sits on a single diagonal (cutoff >= 4); this
    is a heuristic flag, the value itself is always a lower bound.
    """
    B = resolution_over_hypersurface(M, cutoff).betti
    val = B.regularity()
    _, fdeg = _hypersurface(M)
    exact = False
    if fdeg == 2 and cutoff >= 4 and B.entries:
        diag = {j - i for (i, j) in B.entries if i >= 2}
        exact = len(diag) <= 1 and all(j - i <= val for i, j in B.entries)
        if B.pdim < cutoff:
            exact = True  # the resolution is finite
    elif B.entries and B.pdim < cutoff:
        exact = True
    if not B.entries:
        exact = True
    return TruncatedRegularity(val, exact, cutoff)


def regularity_value(x) -> object:
    """JSON-friendly regularity: integers stay, -inf becomes the string '-inf'."""
    return "-inf" if x == NEG_INF else x

