"""I-approximations, their induced maps, filter-regular forms and the
regularity bounds of generalized approximation systems."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    BoundViolated,
    CheckFailed,
    FilterRegularityViolated,
    InputError,
    InvalidParameter,
    NoFilterRegularFound,
    NotASandwich,
    NotSurjective,
)
from .groebner import Submodule, ideal, intersect, lift_raw
from .modules import (
    ModuleMap,
    PresentedModule,
    basis_vec,
    cokernel,
    identity_map,
    is_annihilated,
    is_surjective,
    kernel,
    kernel_generators,
    kernel_with_inclusion,
    module_colon_zero,
    presented_on,
    reduces_to_zero,
    saturate_zero,
    subquotient_raw,
    tensor,
    tensor_elem,
    tensor_left,
    tensor_map,
    tensor_right,
    tensor_shifts,
    times_poly,
    zero_map,
)
from .poly import GradedFreeModule, GradedPolynomial, PolyRing, format_terms
from .resolution import (
    NEG_INF,
    free_resolution,
    is_finite_length,
    largest_generator_degree,
    regularity,
    regularity_value,
    top_degree,
)

MAX_SYSTEM_SIZE = 16


@dataclass
class ApproximationWitness:
    phi: ModuleMap
    ideal: Submodule
    Z: PresentedModule
    alpha: ModuleMap
    beta: ModuleMap


@dataclass
class WitnessReport:
    ok: bool
    conditions: dict
    certificate: str | None = None

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        return {"ok": self.ok, "conditions": self.conditions, "certificate": self.certificate}


def annihilation_certificate(I: Submodule, M: PresentedModule) -> str | None:
    """A nonzero element g * e_j of I*M, or None when I*M = 0."""
    ring = M.ring
    rels = M.rel_raw()
    for j in range(M.rank):
        for g in I.gens:
            v = times_poly(ring, basis_vec(ring, j), g.terms)
            if not reduces_to_zero(ring, rels, [v]):
                return f"({g}) * gen{j}"
    return None


def verify_witness(w: ApproximationWitness) -> WitnessReport:
    """beta o alpha = phi, alpha injective, beta surjective, I Coker alpha = 0, I Ker beta = 0."""
    conds = {}
    conds["commutes"] = w.beta.compose(w.alpha).equals(w.phi)
    conds["alpha_injective"] = kernel(w.alpha).is_zero()
    conds["beta_surjective"] = is_surjective(w.beta)
    ca = cokernel(w.alpha)
    conds["I_coker_alpha_zero"] = is_annihilated(w.ideal, ca)
    kb = kernel(w.beta)
    conds["I_ker_beta_zero"] = is_annihilated(w.ideal, kb)
    cert = None
    if not conds["I_ker_beta_zero"]:
        cert = "I*Ker(beta) contains " + annihilation_certificate(w.ideal, kb)
    elif not conds["I_coker_alpha_zero"]:
        cert = "I*Coker(alpha) contains " + annihilation_certificate(w.ideal, ca)
    return WitnessReport(all(conds.values()), conds, cert)


def _assert_valid(w: ApproximationWitness, what: str) -> ApproximationWitness:
    rep = verify_witness(w)
    if not rep.ok:
        raise CheckFailed(f"{what} is not a valid witness", rep.to_dict())
    return w


def witness_for_injective(phi: ModuleMap, I: Submodule) -> ApproximationWitness:
    """Z = N', alpha = phi, beta = id."""
    return ApproximationWitness(phi, I, phi.target, phi, identity_map(phi.target))


def witness_for_surjective(phi: ModuleMap, I: Submodule) -> ApproximationWitness:
    """Z = N, alpha = id, beta = phi."""
    return ApproximationWitness(phi, I, phi.source, identity_map(phi.source), phi)


# -- sandwiches -------------------------------------------------------------------


@dataclass
class SandwichData:
    """Submodules M <= P and M' <= P' of Q = F/U given by generators in F."""

    Q: PresentedModule
    M: list
    P: list
    M2: list  # M'
    P2: list  # P'
    ideal: Submodule

    def _le(self, X, Y) -> bool:
        ring = self.Q.ring
        return reduces_to_zero(ring, list(Y) + self.Q.rel_raw(), [v for _, v in X])

    def _times(self, X):
        ring = self.Q.ring
        return [(d + g.degree, times_poly(ring, v, g.terms)) for d, v in X for g in self.ideal.gens]

    def check(self) -> dict:
        c = {
            "M_in_P": self._le(self.M, self.P),
            "M2_in_P2": self._le(self.M2, self.P2),
            "M_in_M2": self._le(self.M, self.M2),
            "P_in_P2": self._le(self.P, self.P2),
            "IM2_in_M": self._le(self._times(self.M2), self.M),
            "IP2_in_P": self._le(self._times(self.P2), self.P),
        }
        return c


def witness_from_sandwich(s: SandwichData) -> ApproximationWitness:
    """Z = P'/M with alpha: P/M -> P'/M and beta: P'/M -> P'/M'."""
    conds = s.check()
    if not all(conds.values()):
        raise NotASandwich(f"sandwich conditions fail: {[k for k, v in conds.items() if not v]}")
    ring = s.Q.ring
    F = s.Q.cover
    U = s.Q.rel_raw()
    J = s.Q.quotient_ideal
    N, embN = subquotient_raw(F, s.P, s.M + U, J)
    Z, embZ = subquotient_raw(F, s.P2, s.M + U, J)
    N2, embN2 = subquotient_raw(F, s.P2, s.M2 + U, J)
    zgens = list(zip(Z.shifts, embZ))
    n2gens = list(zip(N2.shifts, embN2))
    a_cols = _lift_or_fail(ring, F.rank, zgens, embN, s.M + U)
    b_cols = _lift_or_fail(ring, F.rank, n2gens, embZ, s.M2 + U)
    p_cols = _lift_or_fail(ring, F.rank, n2gens, embN, s.M2 + U)
    alpha = ModuleMap(N, Z, a_cols, check=False)
    beta = ModuleMap(Z, N2, b_cols, check=False)
    phi = ModuleMap(N, N2, p_cols, check=False)
    return _assert_valid(ApproximationWitness(phi, s.ideal, Z, alpha, beta), "sandwich witness")


def _lift_or_fail(ring, rank, gens, targets, modulo):
    if not targets:
        return []
    if not gens:
        return [{} for _ in targets]
    out = lift_raw(ring, rank, gens, targets, modulo=modulo)
    if any(c is None for c in out):
        raise CheckFailed("inclusion-induced map could not be lifted")
    return out


def sandwich_from_witness(w: ApproximationWitness) -> SandwichData:
    """Q = Z, P = im alpha, M = 0, M' = Ker beta, P' = Z."""
    ring = w.Z.ring
    Z = w.Z
    P = [(s, c) for s, c in zip(w.alpha.source.shifts, w.alpha.columns) if c]
    M2 = kernel_generators(w.beta)
    P2 = [(s, basis_vec(ring, j)) for j, s in enumerate(Z.shifts)]
    return SandwichData(Z, [], P, M2, P2, w.ideal)


# -- kernel / cokernel annihilation ---------------------------------------------------


def check_kernel_cokernel(phi: ModuleMap, I: Submodule) -> bool:
    """I Ker phi = 0 and I Coker phi = 0 (necessary for a witness to exist)."""
    return is_annihilated(I, kernel(phi)) and is_annihilated(I, cokernel(phi))


@dataclass
class KerAnnReport:
    I_ker_zero: bool
    I2_ker_zero: bool
    I_coker_zero: bool
    certificate: str | None

    def to_dict(self) -> dict:
        return {
            "I_ker_zero": self.I_ker_zero,
            "I2_ker_zero": self.I2_ker_zero,
            "I_coker_zero": self.I_coker_zero,
            "certificate": self.certificate,
        }


def kerann_report(phi: ModuleMap, I: Submodule, B: PresentedModule) -> KerAnnReport:
    """Annihilation of Ker and Coker of phi (x) B by I and I^2.

    The certificate names a nonzero element of I * Ker(phi (x) B) in terms of
    the source of phi (x) B.
    """
    from .groebner import ideal_product

    pB = tensor_map(phi, B)
    K, inc = kernel_with_inclusion(pB)
    C = cokernel(pB)
    ik = is_annihilated(I, K)
    i2k = is_annihilated(ideal_product(I, I), K)
    ic = is_annihilated(I, C)
    cert = None
    if not ik:
        ring = phi.ring
        src = pB.source
        for j, col in enumerate(inc.columns):
            for g in I.gens:
                v = times_poly(ring, col, g.terms)
                if not reduces_to_zero(ring, src.rel_raw(), [v]):
                    cert = f"({g}) * {_fmt_vec(ring, col, src.rank)}"
                    break
            if cert:
                break
    return KerAnnReport(ik, i2k, ic, cert)


def _fmt_vec(ring: PolyRing, v: dict, rank: int) -> str:
    return format_terms(ring, v, comp_names=lambda c: f"e{c}")


def check_kerann(w: ApproximationWitness, B: PresentedModule) -> KerAnnReport:
    """For a witnessed phi: I Ker(phi (x) B) = 0 and I Coker(phi (x) B) = 0."""
    rep = kerann_report(w.phi, w.ideal, B)
    if not (rep.I_ker_zero and rep.I_coker_zero and rep.I2_ker_zero):
        raise CheckFailed("kernel/cokernel of phi (x) B not annihilated", rep.to_dict())
    return rep


def check_kerann_weak(phi: ModuleMap, I: Submodule, B: PresentedModule) -> KerAnnReport:
    """For any phi with I Ker phi = I Coker phi = 0: I^2 Ker(phi (x) B) = 0 and I Coker = 0."""
    if not check_kernel_cokernel(phi, I):
        raise InputError("phi does not have I-annihilated kernel and cokernel")
    rep = kerann_report(phi, I, B)
    if not (rep.I2_ker_zero and rep.I_coker_zero):
        raise CheckFailed("weak annihilation failed", rep.to_dict())
    return rep


# -- induced witnesses --------------------------------------------------------------


def induced_tensor_witness(w: ApproximationWitness, B: PresentedModule) -> ApproximationWitness:
    """Witness for phi (x) B with Z-term (Z (x) G)/(W alpha(N))."""
    ring = w.phi.ring
    rG = B.rank
    Z = w.Z
    rels = [(d + t, tensor_left(ring, u, rG, b)) for d, u in Z.rel_raw() for b, t in enumerate(B.shifts)]
    for d, wv in B.rel_raw():
        for a, s in enumerate(w.alpha.source.shifts):
            col = w.alpha.columns[a]
            if col:
                rels.append((d + s, tensor_elem(ring, col, wv, rG)))
    J = Z.quotient_ideal if Z.quotient_ideal is not None else B.quotient_ideal
    Zbar = PresentedModule.from_raw(ring, tensor_shifts(Z.shifts, B.shifts), rels, J)
    src = tensor(w.phi.source, B)
    tgt = tensor(w.phi.target, B)
    a_cols = [tensor_left(ring, w.alpha.columns[a], rG, b) for a in range(w.alpha.source.rank) for b in range(rG)]
    b_cols = [tensor_left(ring, w.beta.columns[z], rG, b) for z in range(Z.rank) for b in range(rG)]
    phiB = tensor_map(w.phi, B)
    alpha = ModuleMap(src, Zbar, a_cols, check=False)
    beta = ModuleMap(Zbar, tgt, b_cols, check=False)
    return _assert_valid(ApproximationWitness(phiB, w.ideal, Zbar, alpha, beta), "tensor witness")


def _w_module(X: PresentedModule, W: Sequence[tuple[int, dict]], rG: int, G_shifts) -> PresentedModule:
    """W X inside G (x) X, presented on the generators w_l (x) e_a (index l*rank + a)."""
    ring = X.ring
    rX = X.rank
    # ambient G (x) X with G-index first
    amb = GradedFreeModule(ring, tensor_shifts(G_shifts, X.shifts))
    gens = []
    for d, wv in W:
        for a, s in enumerate(X.shifts):
            gens.append((d + s, tensor_left(ring, wv, rX, a)))
    rels = [(d + t, tensor_right(ring, u, rX, b)) for b, t in enumerate(G_shifts) for d, u in X.rel_raw()]
    return presented_on(amb, gens, rels, X.quotient_ideal)


def _w_map(psi: ModuleMap, src: PresentedModule, tgt: PresentedModule, nW: int) -> ModuleMap:
    rB = psi.target.rank
    cols = []
    for l in range(nW):
        for a in range(psi.source.rank):
            cols.append(tensor_right(psi.ring, psi.columns[a], rB, l))
    return ModuleMap(src, tgt, cols, check=False)


def induced_W_witness(w: ApproximationWitness, W: Submodule) -> ApproximationWitness:
    """Witness for W N -> W N' (W a submodule of a free module G)."""
    G = W.ambient
    Wr = W.raw()
    nW = len(Wr)
    WN = _w_module(w.phi.source, Wr, G.rank, G.shifts)
    WZ = _w_module(w.Z, Wr, G.rank, G.shifts)
    WN2 = _w_module(w.phi.target, Wr, G.rank, G.shifts)
    alpha = _w_map(w.alpha, WN, WZ, nW)
    beta = _w_map(w.beta, WZ, WN2, nW)
    phi = _w_map(w.phi, WN, WN2, nW)
    return _assert_valid(ApproximationWitness(phi, w.ideal, WZ, alpha, beta), "W witness")


def syzygy_module(B: PresentedModule, k: int) -> PresentedModule:
    """k-th syzygy module of B in its minimal resolution (k = 0 gives B)."""
    if k == 0:
        return B
    res = free_resolution(B).complex
    ring = B.ring
    if k >= len(res.modules):
        return PresentedModule.free(ring, (), B.quotient_ideal)
    Fk = res.modules[k]
    nxt = res.differentials[k] if k < len(res.differentials) else []
    rels = [(s, c) for s, c in zip(res.modules[k + 1].shifts, nxt)] if k + 1 < len(res.modules) else []
    return PresentedModule.from_raw(ring, Fk.shifts, rels, B.quotient_ideal)


def tor_sandwich(phi: ModuleMap, B: PresentedModule, I: Submodule, i: int = 1) -> SandwichData:
    """(GU cap WF)/WU inside (GV cap WF)/WV for surjective phi: F/U -> F/V."""
    if i < 1:
        raise InvalidParameter("Tor index must be at least 1")
    if not is_surjective(phi):
        raise NotSurjective("Tor witnesses need a surjective map")
    N = phi.source
    ring = N.ring
    Bk = syzygy_module(B, i - 1)
    rG = Bk.rank
    U = N.rel_raw()
    V = kernel_generators(phi) + U
    Wg = Bk.rel_raw()
    amb = GradedFreeModule(ring, tensor_shifts(N.shifts, Bk.shifts))
    Q = PresentedModule(amb, ())

    def G_times(X):
        return [(d + t, tensor_left(ring, x, rG, b)) for d, x in X for b, t in enumerate(Bk.shifts)]

    def W_times(X):
        return [(d + e, tensor_elem(ring, x, wv, rG)) for d, x in X for e, wv in Wg]

    WF = [(e + s, tensor_right(ring, wv, rG, a)) for a, s in enumerate(N.shifts) for e, wv in Wg]
    sub = lambda X: Submodule.from_raw(amb, X)  # noqa: E731
    P = intersect(sub(G_times(U)), sub(WF)).raw() if U and WF else []
    P2 = intersect(sub(G_times(V)), sub(WF)).raw() if V and WF else []
    return SandwichData(Q, W_times(U), P, W_times(V), P2, I)


def induced_tor_witness(w: ApproximationWitness, B: PresentedModule, i: int = 1) -> ApproximationWitness:
    """Witness for Tor_i(phi, B) with phi surjective, via the Tor_1 sandwich of a syzygy of B."""
    return witness_from_sandwich(tor_sandwich(w.phi, B, w.ideal, i))


# -- filter-regular elements and a_0 -----------------------------------------------------


def is_filter_regular(N: PresentedModule, y: GradedPolynomial) -> bool:
    if y.degree != 1:
        raise InvalidParameter("filter-regular test expects a linear form")
    return is_finite_length(module_colon_zero(N, y))


def random_dense_linear_form(ring: PolyRing, rng: random.Random) -> GradedPolynomial:
    terms = {}
    for i in range(ring.n):
        e = [0] * ring.n
        e[i] = 1
        terms[ring.encode(e)] = rng.randrange(1, ring.p)
    return GradedPolynomial(ring, terms)


def find_filter_regular(modules: Sequence[PresentedModule], seed: int = 0, max_tries: int = 64) -> GradedPolynomial:
    if not modules:
        raise InvalidParameter("need at least one module")
    ring = modules[0].ring
    rng = random.Random(seed)
    for _ in range(max_tries):
        y = random_dense_linear_form(ring, rng)
        if all(is_filter_regular(N, y) for N in modules):
            return y
    raise NoFilterRegularFound(f"no filter-regular linear form in {max_tries} tries")


def a0(N: PresentedModule):
    """Top degree of H^0_m(N); -inf when it vanishes."""
    H = saturate_zero(N)
    if H.is_zero():
        return NEG_INF
    return top_degree(H)


# -- generalized approximation systems --------------------------------------------------


@dataclass
class GeneralizedApproxSystem:
    N: PresentedModule
    entries: list  # ApproximationWitness per i; witness.ideal is I_i
    t: int
    ambient_n: int | None = None  # dimension used in the DS3.5 bound

    def __post_init__(self):
        if not self.entries:
            raise InvalidParameter("a system needs at least one entry")
        if len(self.entries) > MAX_SYSTEM_SIZE:
            raise InvalidParameter(f"at most {MAX_SYSTEM_SIZE} entries are supported")
        if self.t < 1:
            raise InvalidParameter("degree t must be at least 1")

    @property
    def n(self) -> int:
        return self.ambient_n if self.ambient_n is not None else self.N.ring.n

    def targets(self) -> list[PresentedModule]:
        return [w.phi.target for w in self.entries]

    def covers_power(self) -> bool:
        """m^t inside I_1 + ... + I_d, by membership of every degree-t monomial."""
        ring = self.N.ring
        gens = [g for w in self.entries for g in w.ideal.gens]
        total = Submodule(self.entries[0].ideal.ambient, gens)
        return all(total.contains(ring.monomial(e)) for e in ring.monomials_of_degree(self.t))

    def verify(self) -> dict:
        out = {"covers_m_t": self.covers_power()}
        for k, w in enumerate(self.entries):
            out[f"entry_{k + 1}"] = verify_witness(w).ok
        return out


def _max_reg(mods) -> object:
    return max((regularity(M) for M in mods), default=NEG_INF)


@dataclass
class BoundReport:
    name: str
    lhs: object
    rhs: object
    holds: bool
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {"check": self.name, "reg_N": regularity_value(self.lhs), "bound": regularity_value(self.rhs), "holds": self.holds}
        d.update({k: regularity_value(v) if isinstance(v, (int, float)) and not isinstance(v, bool) else v for k, v in self.details.items()})
        return d


def check_DS33(sys: GeneralizedApproxSystem, y: GradedPolynomial) -> BoundReport:
    """reg N <= max{max reg N_i + 1, reg N/yN} + t - 1 for y filter-regular on N and all N_i."""
    N = sys.N
    for M in [N] + sys.targets():
        if not is_filter_regular(M, y):
            raise FilterRegularityViolated(f"{y} is not filter-regular on every module of the system")
    ring = N.ring
    NyN = tensor(N, PresentedModule.cyclic(ideal(ring, [y])))
    r_quot = regularity(NyN)
    r_targets = _max_reg(sys.targets())
    lhs = regularity(N)
    rhs = max(r_targets + 1, r_quot) + sys.t - 1
    a = a0(N)
    recursion = lhs == max(r_quot, a)
    rep = BoundReport("DS3.3", lhs, rhs, lhs <= rhs, {"reg_N_mod_yN": r_quot, "max_reg_Ni": r_targets, "a0": a, "recursion_ok": recursion})
    if not recursion:
        raise CheckFailed("reg N != max{reg N/yN, a0(N)} for a filter-regular y", rep.to_dict())
    if not rep.holds:
        raise BoundViolated("DS3.3 bound violated", rep.to_dict())
    return rep


def check_DS35(sys: GeneralizedApproxSystem) -> BoundReport:
    """reg N <= max{max reg N_i + 1, b} + (t - 1) n, b the top generator degree of N."""
    N = sys.N
    lhs = regularity(N)
    if lhs == NEG_INF:
        return BoundReport("DS3.5", lhs, NEG_INF, True, {"b": NEG_INF})
    b = largest_generator_degree(N)
    r_targets = _max_reg(sys.targets())
    rhs = max(r_targets + 1, b) + (sys.t - 1) * sys.n
    rep = BoundReport("DS3.5", lhs, rhs, lhs <= rhs, {"b": b, "max_reg_Ni": r_targets, "n": sys.n})
    if not rep.holds:
        raise BoundViolated("DS3.5 bound violated", rep.to_dict())
    return rep


def system_from_colons(P: Submodule, M: Submodule, ideals: Sequence[Submodule], t: int) -> GeneralizedApproxSystem:
    """N = P/M with N_i = (P : I_i)/(M : I_i); each map is an I_i-approximation."""
    from .groebner import module_quotient_by_ideal

    Q = PresentedModule(P.ambient, ())
    entries = []
    for Ii in ideals:
        P2 = module_quotient_by_ideal(P, Ii)
        M2 = module_quotient_by_ideal(M, Ii)
        s = SandwichData(Q, M.raw(), P.raw(), M2.raw(), P2.raw(), Ii)
        entries.append(witness_from_sandwich(s))
    N = entries[0].phi.source
    sys = GeneralizedApproxSystem(N, entries, t)
    if not sys.covers_power():
        raise InvalidParameter("the ideals do not contain m^t")
    return sys


def zero_target_witness(N: PresentedModule, I: Submodule) -> ApproximationWitness:
    """N -> 0 with Z = N (valid iff I N = 0)."""
    zero = PresentedModule.free(N.ring, (), N.quotient_ideal)
    return ApproximationWitness(zero_map(N, zero), I, N, identity_map(N), zero_map(N, zero))


def is_in_kernel(phi: ModuleMap, v: dict) -> bool:
    return reduces_to_zero(phi.ring, phi.target.rel_raw(), [phi.apply_raw(v)])


def is_nonzero_in(M: PresentedModule, v: dict) -> bool:
    return not reduces_to_zero(M.ring, M.rel_raw(), [v])


@dataclass
class NotAnnihilatedReport:
    kernel_and_cokernel_annihilated: bool
    witness_candidate_ok: bool
    element: str
    element_in_kernel: bool
    I_times_element_nonzero: bool
    kerann: KerAnnReport

    def to_dict(self) -> dict:
        return {
            "kernel_and_cokernel_annihilated": self.kernel_and_cokernel_annihilated,
            "witness_candidate_ok": self.witness_candidate_ok,
            "element": self.element,
            "element_in_kernel": self.element_in_kernel,
            "I_times_element_nonzero": self.I_times_element_nonzero,
            "kerann": self.kerann.to_dict(),
        }


def notannihilated_example(p: int = 32003) -> NotAnnihilatedReport:
    """R = k[a,b,c]/(a^2,ab), phi: R(-1)^2 -> R, e1 -> a, e2 -> b, I = (a), B = R/(ac+bc).

    phi has I-annihilated kernel and cokernel, but (c, c) lies in Ker(phi (x) B)
    and a*(c, c) is nonzero.
    """
    from .poly import make_ring

    ring = make_ring("a,b,c", p)
    a, b, c = ring.gens()
    J = ideal(ring, [a * a, a * b])
    R = PresentedModule.free(ring, (0,), J)
    F2 = PresentedModule.free(ring, (1, 1), J)
    phi = ModuleMap(F2, R, [a.terms, b.terms])
    I = ideal(ring, [a])
    B = PresentedModule.cyclic(ideal(ring, [a * c + b * c]), J)
    cand = ApproximationWitness(phi, I, F2, identity_map(F2), phi)
    pB = tensor_map(phi, B)
    cc = {k - j: v for j in range(2) for k, v in c.terms.items()}
    in_ker = is_in_kernel(pB, cc)
    nz = is_nonzero_in(pB.source, times_poly(ring, cc, a.terms))
    return NotAnnihilatedReport(
        check_kernel_cokernel(phi, I),
        verify_witness(cand).ok,
        "(c, c)",
        in_ker,
        nz,
        kerann_report(phi, I, B),
    )


# -- the P_1 system of the linear-product tower ----------------------------------------


def _to_subring(I: Submodule, images, mid: PolyRing, sub: PolyRing, r: int) -> Submodule:
    """Write I in the adapted coordinates and restrict it to k[z_1..z_r]."""
    from .groebner import substitute

    Iz = substitute(I, images, mid)
    out = []
    for g in Iz.gb.elements:
        terms = {}
        for k, c in g.terms.items():
            e = mid.key_exps(k)
            if any(e[r:]):
                raise CheckFailed("an ideal of the tower is not extended from k[V]")
            terms[sub.encode(e[:r])] = c
        out.append(GradedPolynomial(sub, terms))
    return ideal(sub, out)


def p1_system(F, f: GradedPolynomial, i: int) -> GeneralizedApproxSystem:
    """P_1 -> P_{1,j} (j = 1..d) as a system over k[V] with t = 1.

    Targets for j <= i + 1 are zero; the others come from the sandwich
    Y_j <= U_j over B <= A.
    """
    from .linprod import change_coordinates, p1_system_data
    from .poly import make_ring

    d = F.d
    if not 1 <= i <= d - 1:
        raise InvalidParameter("i must satisfy 1 <= i <= d - 1")
    A, B, targets = p1_system_data(F, f, i)
    mid, _, images, r = change_coordinates(F)
    sub = make_ring([f"z{k + 1}" for k in range(r)], F.ring.p)
    move = lambda X: _to_subring(X, images, mid, sub, r)  # noqa: E731
    Av, Bv = move(A), move(B)
    Q = PresentedModule.free(sub)
    N = subquotient_raw(Q.cover, Av.raw(), Bv.raw())[0]
    entries = []
    for j, U, Y in targets:
        Ij = move(F.ideal_at(j))
        if U is None:
            entries.append(_assert_valid(zero_target_witness(N, Ij), f"zero target j={j}"))
        else:
            s = SandwichData(Q, Bv.raw(), Av.raw(), move(Y).raw(), move(U).raw(), Ij)
            entries.append(witness_from_sandwich(s))
    sys = GeneralizedApproxSystem(N, entries, 1, r)
    if not sys.covers_power():
        raise CheckFailed("the ideals of the family do not span the maximal ideal of k[V]")
    return sys


@dataclass
class P1Report:
    i: int
    reg_P1: object
    ds35: BoundReport
    proof_bound: int
    holds: bool

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "reg_P1": regularity_value(self.reg_P1),
            "ds35": self.ds35.to_dict(),
            "proof_bound": self.proof_bound,
            "pass": self.holds,
        }


def check_p1_bound(F, f: GradedPolynomial, i: int) -> P1Report:
    """DS3.5 on the P_1 system certifies reg P_1 <= d - 2."""
    sys = p1_system(F, f, i)
    rep = check_DS35(sys)
    d = F.d
    # DS3.5's right-hand side with reg P_{1,j} <= d - 3 and b <= d - 2
    ok = rep.lhs == NEG_INF or rep.lhs <= d - 2
    out = P1Report(i, rep.lhs, rep, d - 2, ok)
    if not ok:
        raise BoundViolated("reg P_1 exceeds d - 2", out.to_dict())
    return out
