"""Graded Tor over S, mixed regularity and the inequality checkers built on it."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import BoundViolated, CheckFailed
from .groebner import Submodule, ideal, preimage_raw
from .modules import PresentedModule, subquotient_raw, tensor_left, tensor_right, tensor_shifts
from .poly import GradedPolynomial
from .resolution import (
    NEG_INF,
    free_resolution,
    has_linear_resolution,
    krull_dim,
    regularity,
    regularity_value,
    truncated_regularity_over_R,
)


@dataclass
class TorModule:
    i: int
    value: PresentedModule
    provenance: str = "minimal resolution of the first argument"

    def regularity(self):
        return regularity(self.value)


class _TorComplex:
    """F(M) (x) N for the minimal S-resolution F(M) of M."""

    def __init__(self, M: PresentedModule, N: PresentedModule):
        M.compatible(N)
        self.M, self.N = M, N
        self.res = free_resolution(M)
        self.cache: dict[int, PresentedModule] = {}

    @property
    def pdim(self) -> int:
        return self.res.complex.length

    def homology(self, i: int) -> PresentedModule:
        if i in self.cache:
            return self.cache[i]
        out = self._homology(i)
        self.cache[i] = out
        return out

    def _homology(self, i: int) -> PresentedModule:
        C = self.res.complex
        N = self.N
        ring = N.ring
        rG = N.rank
        J = N.quotient_ideal if N.quotient_ideal is not None else self.M.quotient_ideal
        if i < 0 or i > C.length or not C.modules:
            return PresentedModule.free(ring, (), J)
        Fi = C.modules[i].shifts
        cover = PresentedModule.free(ring, tensor_shifts(Fi, N.shifts)).cover
        # F_i (x) W
        W = N.rel_raw()
        mod = [(d + s, tensor_right(ring, w, rG, a)) for a, s in enumerate(Fi) for d, w in W]
        if i == 0:
            K = [(s, {ring.one_key - j: 1}) for j, s in enumerate(cover.shifts)]
        else:
            cols = []
            for a in range(len(Fi)):
                for b in range(rG):
                    cols.append(tensor_left(ring, C.differentials[i - 1][a], rG, b))
            Fprev = C.modules[i - 1].shifts
            modprev = [(d + s, tensor_right(ring, w, rG, a)) for a, s in enumerate(Fprev) for d, w in W]
            res = preimage_raw(ring, len(Fprev) * rG, cover.shifts, cols, modulo=modprev)
            K = [(d, v) for d, v, _ in res.recorded]
        if i < C.length:
            Fnext = C.modules[i + 1].shifts
            for a, s in enumerate(Fnext):
                for b, t in enumerate(N.shifts):
                    v = tensor_left(ring, C.differentials[i][a], rG, b)
                    if v:
                        mod.append((s + t, v))
        return subquotient_raw(cover, K, mod, J)[0]


def tor_module(M: PresentedModule, N: PresentedModule, i: int) -> TorModule:
    """Tor_i^S(M, N) = H_i(F(M) (x) N)."""
    return TorModule(i, _TorComplex(M, N).homology(i))


def tor_modules(M: PresentedModule, N: PresentedModule) -> list[TorModule]:
    """All Tor_i(M, N), 0 <= i <= pdim M."""
    T = _TorComplex(M, N)
    return [TorModule(i, T.homology(i)) for i in range(T.pdim + 1)]


@dataclass
class CregReport:
    creg: object
    per_index: list = field(default_factory=list)  # (i, reg Tor_i - i)
    reg_M: object = NEG_INF
    reg_N: object = NEG_INF
    pdim: int = -1
    tors: list = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "creg": regularity_value(self.creg),
            "per_index": [[i, regularity_value(r)] for i, r in self.per_index],
            "reg_M": regularity_value(self.reg_M),
            "reg_N": regularity_value(self.reg_N),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def creg(M: PresentedModule, N: PresentedModule) -> CregReport:
    """sup_i (reg Tor_i(M, N) - i), over 0 <= i <= pdim M."""
    rM, rN = regularity(M), regularity(N)
    if rM == NEG_INF or rN == NEG_INF:
        return CregReport(NEG_INF, [], rM, rN)
    tors = tor_modules(M, N)
    per = [(t.i, t.regularity() - t.i) for t in tors]
    value = max((r for _, r in per), default=NEG_INF)
    rep = CregReport(value, per, rM, rN, len(tors) - 1, tors)
    if value < rM + rN:
        raise BoundViolated(f"creg {value} < reg M + reg N = {rM + rN}", rep.to_dict())
    return rep


@dataclass
class ChardinReport:
    inequality_holds: bool
    dim_tor1: int
    equality_checked: bool
    equality_holds: bool | None
    creg: object
    reg_sum: object

    def to_dict(self) -> dict:
        return {
            "inequality_holds": self.inequality_holds,
            "dim_tor1": self.dim_tor1,
            "equality_checked": self.equality_checked,
            "equality_holds": self.equality_holds,
            "creg": regularity_value(self.creg),
            "reg_M_plus_reg_N": regularity_value(self.reg_sum),
        }


def check_chardin(M: PresentedModule, N: PresentedModule) -> ChardinReport:
    """creg >= reg M + reg N, with equality when dim Tor_1 <= 1."""
    rM, rN = regularity(M), regularity(N)
    total = rM + rN
    T = _TorComplex(M, N)
    per = [regularity(T.homology(i)) - i for i in range(T.pdim + 1)]
    value = max(per, default=NEG_INF)
    dim1 = krull_dim(T.homology(1)) if T.pdim >= 1 else -1
    ok = value >= total
    eq_checked = dim1 <= 1
    eq = (value == total) if eq_checked else None
    rep = ChardinReport(ok, dim1, eq_checked, eq, value, total)
    if not ok:
        raise BoundViolated("creg < reg M + reg N", rep.to_dict())
    if eq_checked and not eq:
        raise CheckFailed("equality expected since dim Tor_1 <= 1", rep.to_dict())
    return rep


def _cyclic(I: Submodule) -> PresentedModule:
    return PresentedModule.cyclic(I)


@dataclass
class TorLinearReport:
    tor_linear: bool
    creg: object
    reg_S_I: object
    margin: object

    def to_dict(self) -> dict:
        return {
            "tor_linear": self.tor_linear,
            "creg": regularity_value(self.creg),
            "reg": regularity_value(self.reg_S_I),
            "margin": regularity_value(self.margin),
        }


def is_tor_linear(J: Submodule, I: Submodule) -> TorLinearReport:
    """Is creg_S(S/I, S/J) <= reg(S/I) + 1?  ``margin`` is creg - reg(S/I)."""
    M, R = _cyclic(I), _cyclic(J)
    c = creg(M, R).creg
    r = regularity(M)
    if c == NEG_INF or r == NEG_INF:
        return TorLinearReport(True, c, r, NEG_INF)
    margin = c - r
    return TorLinearReport(margin <= 1, c, r, margin)


def check_tor_linear_strand(J: Submodule, I: Submodule, d: int) -> bool:
    """Tor_i(S/J, S/I) has an (i+d)-linear resolution for every 2 <= i <= pdim."""
    T = _TorComplex(_cyclic(J), _cyclic(I))
    for i in range(2, T.pdim + 1):
        H = T.homology(i)
        if H.is_zero():
            continue
        if not has_linear_resolution(H, i + d):
            return False
    return True


@dataclass
class CompareRegReport:
    lhs: object
    lhs_exact: bool
    rhs: object
    holds: bool
    terms: list

    def to_dict(self) -> dict:
        return {
            "reg_R_quotient": regularity_value(self.lhs),
            "lhs_exact": self.lhs_exact,
            "bound": regularity_value(self.rhs),
            "holds": self.holds,
            "terms": [[k, regularity_value(v)] for k, v in self.terms],
        }


def check_compare_reg(I: Submodule, f: GradedPolynomial, cutoff: int = 6) -> CompareRegReport:
    """reg_R(R/IR) <= max{reg S/I, sup_{i>=1} reg Tor_i(S/I, R) - (i+1)} for R = S/(f)."""
    ring = I.ring
    Jf = ideal(ring, [f])
    M = _cyclic(I)
    lhs = truncated_regularity_over_R(PresentedModule.cyclic(I, Jf), cutoff)
    T = _TorComplex(M, _cyclic(Jf))
    terms = [("reg S/I + reg_R R", regularity(M))]
    for i in range(1, T.pdim + 1):
        terms.append((f"Tor_{i}", regularity(T.homology(i)) - (i + 1)))
    rhs = max(v for _, v in terms)
    holds = lhs.value <= rhs
    rep = CompareRegReport(lhs.value, lhs.exact, rhs, holds, terms)
    if not holds:
        raise BoundViolated("truncated reg_R(R/IR) exceeds the bound", rep.to_dict())
    return rep


def tor_hilbert_check_colon(I: Submodule, f: GradedPolynomial) -> bool:
    """Tor_1(S/I, S/(f)) and ((I:f)/I)(-deg f) have the same Hilbert series."""
    from .groebner import ideal_colon
    from .resolution import hilbert_series

    ring = I.ring
    T1 = tor_module(_cyclic(I), _cyclic(ideal(ring, [f])), 1).value
    C = ideal_colon(I, f)
    Q, _ = subquotient_raw(I.ambient, C.raw(), I.raw())
    return hilbert_series(T1).numerator == hilbert_series(Q.shifted(f.degree)).numerator

