"""Finitely presented graded modules F/U and degree-0 maps between them."""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

from .errors import (
    AmbientMismatch,
    DifferentQuotients,
    InternalBoundExceeded,
    NotAComplex,
    NotWellDefined,
    RingMismatch,
)
from .groebner import (
    Submodule,
    gb_raw,
    ideal,
    mat_apply,
    minimal_generators_raw,
    preimage_raw,
)
from .poly import GradedFreeModule, GradedPolynomial, FreeModuleElement, PolyRing, vec_times_poly


def basis_vec(ring: PolyRing, j: int) -> dict:
    return {ring.one_key - j: 1}


def times_poly(ring: PolyRing, v: dict, f: dict) -> dict:
    return vec_times_poly(v, f, ring.one_key, ring.p)


def reduces_to_zero(ring: PolyRing, gens_raw, vecs) -> bool:
    """Are all ``vecs`` in the submodule generated by ``gens_raw``?"""
    vecs = [v for v in vecs if v]
    if not vecs:
        return True
    if not gens_raw:
        return False
    from ._engine import reducer_from_basis

    red = reducer_from_basis(ring, gb_raw(ring, gens_raw).basis)
    return all(red.top_reduce(dict(v), ring.p) is None for v in vecs)


class PresentedModule:
    """Graded module cover/relations, optionally over R = S/J.

    When ``quotient_ideal`` is given, ``J * cover`` is added to the relations,
    so the S-module is exactly the R-module.
    """

    def __init__(self, cover: GradedFreeModule, relations=(), quotient_ideal: Submodule | None = None, add_quotient=True):
        self.cover = cover
        ring = cover.ring
        rels = relations if isinstance(relations, Submodule) else Submodule(cover, list(relations))
        if rels.ambient != cover:
            raise AmbientMismatch(f"relations in {rels.ambient}, cover is {cover}")
        if quotient_ideal is not None:
            if quotient_ideal.ring != ring:
                raise RingMismatch(f"{quotient_ideal.ring} vs {ring}")
            if add_quotient and quotient_ideal.gens:
                extra = [
                    FreeModuleElement(cover, times_poly(ring, basis_vec(ring, j), g.terms))
                    for j in range(cover.rank)
                    for g in quotient_ideal.gens
                ]
                rels = Submodule(cover, list(rels.gens) + extra)
        self.relations = rels
        self.quotient_ideal = quotient_ideal

    # -- constructors -------------------------------------------------------
    @classmethod
    def cyclic(cls, I: Submodule, quotient_ideal: Submodule | None = None) -> PresentedModule:
        """S/I (or R/IR)."""
        return cls(I.ambient, I, quotient_ideal)

    @classmethod
    def free(cls, ring: PolyRing, shifts: Sequence[int] = (0,), quotient_ideal=None) -> PresentedModule:
        return cls(GradedFreeModule(ring, tuple(shifts)), (), quotient_ideal)

    @classmethod
    def from_raw(cls, ring: PolyRing, shifts, rel_raw, quotient_ideal=None, add_quotient=False) -> PresentedModule:
        F = GradedFreeModule(ring, tuple(shifts))
        return cls(F, Submodule.from_raw(F, rel_raw), quotient_ideal, add_quotient)

    @classmethod
    def of_submodule(cls, U: Submodule, quotient_ideal=None) -> PresentedModule:
        """U itself (e.g. an ideal as a module), presented on its generators."""
        F = U.ambient
        mod = [(d, v) for j in range(F.rank) for d, v in _quotient_rows(F, quotient_ideal, j)]
        return subquotient_raw(F, U.raw(), mod, quotient_ideal)[0]

    # -- basic data ---------------------------------------------------------
    @property
    def ring(self) -> PolyRing:
        return self.cover.ring

    @property
    def shifts(self) -> tuple[int, ...]:
        return self.cover.shifts

    @property
    def rank(self) -> int:
        return self.cover.rank

    def rel_raw(self) -> list[tuple[int, dict]]:
        return self.relations.raw()

    def is_zero(self) -> bool:
        ring = self.ring
        return reduces_to_zero(ring, self.rel_raw(), [basis_vec(ring, j) for j in range(self.rank)])

    @cached_property
    def minimal(self) -> PresentedModule:
        """Minimal presentation: minimal cover and minimal relations."""
        ring = self.ring
        K = [(s, basis_vec(ring, j)) for j, s in enumerate(self.shifts)]
        out, _ = subquotient_raw(self.cover, K, self.rel_raw(), self.quotient_ideal)
        out.__dict__["minimal"] = out
        return out

    def shifted(self, k: int) -> PresentedModule:
        """M(-k): all generator degrees raised by k."""
        F = GradedFreeModule(self.ring, tuple(s + k for s in self.shifts))
        return PresentedModule(F, [FreeModuleElement(F, g.terms) for g in self.relations.gens], self.quotient_ideal, False)

    def compatible(self, other: PresentedModule):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        a, b = self.quotient_ideal, other.quotient_ideal
        if a is not None and b is not None and not a.equals(b):
            raise DifferentQuotients("modules over different quotient rings")

    def __repr__(self):
        return f"PresentedModule(cover={list(self.shifts)}, relations={len(self.relations.gens)})"


def _quotient_rows(F: GradedFreeModule, J: Submodule | None, j: int):
    if J is None:
        return []
    ring = F.ring
    return [(g.degree + F.shifts[j], times_poly(ring, basis_vec(ring, j), g.terms)) for g in J.gens]


def subquotient_raw(F: GradedFreeModule, K, U, quotient_ideal=None) -> tuple[PresentedModule, list[dict]]:
    """Minimal presentation of (K + U)/U for raw generator lists in F.

    Returns the module and the images of its cover generators in F.
    """
    ring = F.ring
    K = [(d, v) for d, v in K if v]
    U = [(d, v) for d, v in U if v]
    Kmin = minimal_generators_raw(ring, K, modulo=U)
    shifts = [d for d, _ in Kmin]
    if not Kmin:
        return PresentedModule(GradedFreeModule(ring, ()), (), quotient_ideal, False), []
    res = preimage_raw(ring, F.rank, shifts, [v for _, v in Kmin], modulo=U)
    rels = [(d, v) for d, v, _ in res.recorded]
    M = PresentedModule.from_raw(ring, shifts, rels, quotient_ideal)
    M.__dict__["minimal"] = M
    return M, [v for _, v in Kmin]


def presented_on(F: GradedFreeModule, gens, U, quotient_ideal=None) -> PresentedModule:
    """(gens + U)/U presented on exactly the given generators (no pruning)."""
    ring = F.ring
    shifts = [d for d, _ in gens]
    if not gens:
        return PresentedModule(GradedFreeModule(ring, ()), (), quotient_ideal, False)
    U = [(d, v) for d, v in U if v]
    res = preimage_raw(ring, F.rank, shifts, [v for _, v in gens], modulo=U)
    return PresentedModule.from_raw(ring, shifts, [(d, v) for d, v, _ in res.recorded], quotient_ideal)


class ModuleMap:
    """Degree-0 homomorphism given by the images of the cover generators."""

    def __init__(self, source: PresentedModule, target: PresentedModule, columns: Sequence[dict], check=True):
        source.compatible(target)
        if len(columns) != source.rank:
            raise AmbientMismatch(f"{len(columns)} columns for a cover of rank {source.rank}")
        ring = source.ring
        cols = []
        for j, c in enumerate(columns):
            if isinstance(c, FreeModuleElement):
                c = c.terms
            elif isinstance(c, GradedPolynomial):
                c = c.terms
            c = dict(c)
            if c:
                degs = {ring.key_degree(k) + target.shifts[ring.key_comp(k)] for k in c}
                if degs != {source.shifts[j]}:
                    raise NotWellDefined(f"column {j} is not homogeneous of degree {source.shifts[j]}")
            cols.append(c)
        self.source = source
        self.target = target
        self.columns = cols
        if check and not self.is_well_defined():
            raise NotWellDefined("a relation of the source does not map into the target relations")

    @property
    def ring(self) -> PolyRing:
        return self.source.ring

    def apply_raw(self, v: dict) -> dict:
        return mat_apply(self.ring, self.columns, v)

    def is_well_defined(self) -> bool:
        images = [self.apply_raw(g.terms) for g in self.source.relations.gens]
        return reduces_to_zero(self.ring, self.target.rel_raw(), images)

    def compose(self, other: ModuleMap) -> ModuleMap:
        """self o other."""
        return ModuleMap(other.source, self.target, [self.apply_raw(c) for c in other.columns], check=False)

    def is_zero(self) -> bool:
        return reduces_to_zero(self.ring, self.target.rel_raw(), self.columns)

    def equals(self, other: ModuleMap) -> bool:
        p = self.ring.p
        diffs = []
        for a, b in zip(self.columns, other.columns):
            d = dict(a)
            for k, c in b.items():
                nv = (d.get(k, 0) - c) % p
                if nv:
                    d[k] = nv
                else:
                    d.pop(k, None)
            diffs.append(d)
        return reduces_to_zero(self.ring, self.target.rel_raw(), diffs)

    def __repr__(self):
        return f"ModuleMap({self.source} -> {self.target})"


def identity_map(M: PresentedModule) -> ModuleMap:
    ring = M.ring
    return ModuleMap(M, M, [basis_vec(ring, j) for j in range(M.rank)], check=False)


def zero_map(A: PresentedModule, B: PresentedModule) -> ModuleMap:
    return ModuleMap(A, B, [{} for _ in range(A.rank)], check=False)


def kernel_generators(phi: ModuleMap) -> list[tuple[int, dict]]:
    """Generators in the source cover of the preimage of the target relations."""
    ring = phi.ring
    src = phi.source
    res = preimage_raw(ring, phi.target.rank, src.shifts, phi.columns, modulo=phi.target.rel_raw())
    return [(d, v) for d, v, _ in res.recorded]


def kernel_with_inclusion(phi: ModuleMap) -> tuple[PresentedModule, ModuleMap]:
    src = phi.source
    K, emb = subquotient_raw(src.cover, kernel_generators(phi), src.rel_raw(), src.quotient_ideal)
    return K, ModuleMap(K, src, emb, check=False)


def kernel(phi: ModuleMap) -> PresentedModule:
    return kernel_with_inclusion(phi)[0]


def cokernel(phi: ModuleMap) -> PresentedModule:
    tgt = phi.target
    ring = phi.ring
    rels = tgt.rel_raw() + [(s, c) for s, c in zip(phi.source.shifts, phi.columns) if c]
    return PresentedModule.from_raw(ring, tgt.shifts, rels, tgt.quotient_ideal).minimal


def image(phi: ModuleMap) -> PresentedModule:
    tgt = phi.target
    K = [(s, c) for s, c in zip(phi.source.shifts, phi.columns) if c]
    return subquotient_raw(tgt.cover, K, tgt.rel_raw(), tgt.quotient_ideal)[0]


def is_injective(phi: ModuleMap) -> bool:
    return kernel(phi).is_zero()


def is_surjective(phi: ModuleMap) -> bool:
    return cokernel(phi).is_zero()


def ideal_times_module(I: Submodule, M: PresentedModule) -> PresentedModule:
    """I*M as a presented module (a submodule of M)."""
    ring = M.ring
    K = [
        (g.degree + s, times_poly(ring, basis_vec(ring, j), g.terms))
        for j, s in enumerate(M.shifts)
        for g in I.gens
    ]
    return subquotient_raw(M.cover, K, M.rel_raw(), M.quotient_ideal)[0]


def is_annihilated(I: Submodule, M: PresentedModule) -> bool:
    """I*M = 0, i.e. I*F contained in the relations."""
    ring = M.ring
    vecs = [times_poly(ring, basis_vec(ring, j), g.terms) for j in range(M.rank) for g in I.gens]
    return reduces_to_zero(ring, M.rel_raw(), vecs)


# -- tensor products ------------------------------------------------------------


def tensor_left(ring: PolyRing, v: dict, rG: int, b: int) -> dict:
    """v (in F) tensor g_b, in F (x) G with index a*rG + b."""
    out = {}
    for k, c in v.items():
        a = ring.key_comp(k)
        out[k - (a * (rG - 1) + b)] = c
    return out


def tensor_right(ring: PolyRing, w: dict, rG: int, a: int) -> dict:
    """e_a tensor w (w in G), in F (x) G."""
    return {k - a * rG: c for k, c in w.items()}


def tensor_elem(ring: PolyRing, v: dict, w: dict, rG: int) -> dict:
    """v (x) w for v in F and w in G."""
    one = ring.one_key
    p = ring.p
    out: dict[int, int] = {}
    for kv, cv in v.items():
        a = ring.key_comp(kv)
        base = kv + a - one  # monomial part of kv, as a shift
        for kw, cw in w.items():
            b = ring.key_comp(kw)
            key = kw + b + base - (a * rG + b)
            nv = (out.get(key, 0) + cv * cw) % p
            if nv:
                out[key] = nv
            else:
                out.pop(key, None)
    return out


def tensor_shifts(F: Sequence[int], G: Sequence[int]) -> tuple[int, ...]:
    return tuple(s + t for s in F for t in G)


def tensor(M: PresentedModule, N: PresentedModule) -> PresentedModule:
    M.compatible(N)
    ring = M.ring
    rG = N.rank
    rels = []
    for d, u in M.rel_raw():
        for b, t in enumerate(N.shifts):
            rels.append((d + t, tensor_left(ring, u, rG, b)))
    for d, w in N.rel_raw():
        for a, s in enumerate(M.shifts):
            rels.append((d + s, tensor_right(ring, w, rG, a)))
    J = M.quotient_ideal if M.quotient_ideal is not None else N.quotient_ideal
    return PresentedModule.from_raw(ring, tensor_shifts(M.shifts, N.shifts), rels, J)


def tensor_map(phi: ModuleMap, B: PresentedModule) -> ModuleMap:
    """phi (x) B."""
    ring = phi.ring
    rB = B.rank
    src = tensor(phi.source, B)
    tgt = tensor(phi.target, B)
    cols = []
    for a in range(phi.source.rank):
        for b in range(rB):
            cols.append(tensor_left(ring, phi.columns[a], rB, b))
    return ModuleMap(src, tgt, cols, check=False)


# -- homology ------------------------------------------------------------------


def homology_of_presented_complex(maps: Sequence[ModuleMap]) -> list[PresentedModule]:
    """Homology of A_0 <- A_1 <- ... <- A_k given maps[i]: A_{i+1} -> A_i.

    Returns [H_0, ..., H_k]; the ends are padded with zero maps.
    """
    for i in range(len(maps) - 1):
        if not maps[i].compose(maps[i + 1]).is_zero():
            raise NotAComplex(f"d_{i + 1} o d_{i + 2} is not zero")
    objs = [maps[0].target] + [m.source for m in maps]
    out = []
    for i, A in enumerate(objs):
        if i == 0:
            K = [(s, basis_vec(A.ring, j)) for j, s in enumerate(A.shifts)]
        else:
            K = kernel_generators(maps[i - 1])
        mod = list(A.rel_raw())
        if i < len(maps):
            m = maps[i]
            mod += [(s, c) for s, c in zip(m.source.shifts, m.columns) if c]
        out.append(subquotient_raw(A.cover, K, mod, A.quotient_ideal)[0])
    return out


# -- colon and saturation --------------------------------------------------------


def module_colon_zero(N: PresentedModule, y: GradedPolynomial) -> PresentedModule:
    """(0 :_N y) as a presented module."""
    ring = N.ring
    images = [times_poly(ring, basis_vec(ring, j), y.terms) for j in range(N.rank)]
    res = preimage_raw(ring, N.rank, [s + y.degree for s in N.shifts], images, modulo=N.rel_raw())
    K = [(d - y.degree, v) for d, v, _ in res.recorded]
    return subquotient_raw(N.cover, K, N.rel_raw(), N.quotient_ideal)[0]


def _colon_by_max_ideal(ring: PolyRing, F: GradedFreeModule, U: list) -> list:
    """Generators of U :_F m."""
    gens = None
    for x in ring.gens():
        images = [times_poly(ring, basis_vec(ring, j), x.terms) for j in range(F.rank)]
        res = preimage_raw(ring, F.rank, [s + 1 for s in F.shifts], images, modulo=U)
        cur = [(d - 1, v) for d, v, _ in res.recorded]
        if gens is None:
            gens = cur
        else:
            gens = _intersect_raw(ring, F, gens, cur)
    return gens


def _intersect_raw(ring: PolyRing, F: GradedFreeModule, A: list, B: list) -> list:
    A = [(d, v) for d, v in A if v]
    if not A or not B:
        return []
    res = preimage_raw(ring, F.rank, [d for d, _ in A], [v for _, v in A], modulo=B)
    cols = [v for _, v in A]
    out = []
    for _, v, _ in res.recorded:
        w = mat_apply(ring, cols, v)
        if w:
            out.append((raw_deg(ring, F, w), w))
    return out


def raw_deg(ring: PolyRing, F: GradedFreeModule, v: dict) -> int:
    k = next(iter(v))
    return ring.key_degree(k) + F.shifts[ring.key_comp(k)]


def saturation_generators(N: PresentedModule) -> list[tuple[int, dict]]:
    """Generators of U :_F m^infinity for N = F/U."""
    ring = N.ring
    F = N.cover
    U = N.rel_raw()
    top = max([d for d, _ in U] + list(N.shifts) + [0])
    bound = top + ring.n + 1
    cur = U
    for _ in range(bound + 1):
        nxt = _colon_by_max_ideal(ring, F, cur)
        if reduces_to_zero(ring, cur, [v for _, v in nxt]):
            return cur
        cur = minimal_generators_raw(ring, nxt + cur)
    raise InternalBoundExceeded(f"saturation did not stabilize within {bound} steps")


def saturate_zero(N: PresentedModule) -> PresentedModule:
    """H^0_m(N) = (0 :_N m^infinity)."""
    return subquotient_raw(N.cover, saturation_generators(N), N.rel_raw(), N.quotient_ideal)[0]


def as_ideal(M: PresentedModule) -> Submodule:
    """The ideal I when M = S/I is cyclic with shift 0."""
    if M.rank != 1 or M.shifts != (0,):
        raise AmbientMismatch("module is not of the form S/I")
    return ideal(M.ring, [GradedPolynomial(M.ring, g.terms) for g in M.relations.gens])
