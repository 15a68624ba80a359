"""Submodules of graded free modules, Groebner bases and ideal arithmetic.

Syzygies, intersections, colons and preimages all go through one primitive,
:func:`preimage_raw`, which runs the Buchberger core on the augmented vectors
``(image_j, e_j)`` with an elimination order for the image block.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from . import _engine
from .errors import AmbientMismatch, InputError, RingMismatch, ZeroDivisorArgument
from .poly import (
    GradedFreeModule,
    GradedPolynomial,
    FreeModuleElement,
    PolyRing,
    MonomialOrder,
    GREVLEX,
)

# -- raw primitives -----------------------------------------------------------
# A raw vector is dict[key, coeff]; a raw generator list is [(degree, vec)].


def raw_degree(ring: PolyRing, vec: dict, shifts: Sequence[int]) -> int:
    k = next(iter(vec))
    return ring.key_degree(k) + shifts[ring.key_comp(k)]


def upper_bit(ring: PolyRing) -> int:
    return 1 << ring.pshift


def preimage_raw(
    ring: PolyRing,
    target_rank: int,
    src_shifts: Sequence[int],
    images: Sequence[dict],
    modulo: Sequence[tuple[int, dict]] = (),
    known_lower: Sequence[tuple[int, dict]] = (),
) -> _engine.GBResult:
    """Minimal generators of ``{a : sum a_j images_j in <modulo>}``.

    ``images[j]`` lives in a free module of rank ``target_rank``; the answer
    lives in the free module with shifts ``src_shifts``.  ``known_lower``
    elements (in source coordinates) are treated as already known, so the
    recorded generators are minimal modulo them.  The returned
    ``recorded`` list holds source-coordinate vectors.
    """
    up = upper_bit(ring)
    m = target_rank
    one = ring.one_key
    inputs = []
    for j, (s, img) in enumerate(zip(src_shifts, images)):
        v = {k | up: c for k, c in img.items()}
        v[one - (m + j)] = 1
        inputs.append((s, v))
    known = [(d, {k | up: c for k, c in v.items()}) for d, v in modulo if v]
    known += [(d, {k - m: c for k, c in v.items()}) for d, v in known_lower if v]
    res = _engine.groebner(ring, inputs, known=known, split=up)
    res.recorded = [(d, {k + m: c for k, c in v.items()}, src) for d, v, src in res.recorded]
    res.target_rank = m
    return res


def lower_basis(res: _engine.GBResult) -> list[tuple[int, dict]]:
    """Groebner basis (source coordinates) of the module computed by preimage_raw."""
    m = res.target_rank
    return [(d, {k + m: c for k, c in v.items()}) for d, v in res.lower_part()]


def syz_raw(ring: PolyRing, target_rank: int, gens: Sequence[tuple[int, dict]], known_lower=()) -> list[tuple[int, dict]]:
    """Minimal generators of the syzygy module of ``gens``."""
    res = preimage_raw(ring, target_rank, [d for d, _ in gens], [v for _, v in gens], known_lower=known_lower)
    return [(d, v) for d, v, _ in res.recorded]


def gb_raw(ring: PolyRing, gens: Sequence[tuple[int, dict]], known=(), ideal_mode=False) -> _engine.GBResult:
    return _engine.groebner(ring, [g for g in gens if g[1]], known=[g for g in known if g[1]], ideal_mode=ideal_mode)


def minimal_generators_raw(ring: PolyRing, gens, modulo=()) -> list[tuple[int, dict]]:
    """Minimal generators of <gens> + <modulo> taken from ``gens``, modulo <modulo>.

    Returns the original input vectors (not their reductions).
    """
    res = gb_raw(ring, gens, known=modulo)
    nonzero = [g for g in gens if g[1]]
    return [nonzero[src] for _, _, src in res.recorded]


def lift_raw(ring: PolyRing, target_rank: int, gens: Sequence[tuple[int, dict]], targets: Sequence[dict], modulo=()):
    """Express each target as a combination of ``gens`` modulo ``<modulo>``.

    Returns one coefficient vector (free module on the gens) per target, or
    None where the target is not in the submodule.
    """
    up = upper_bit(ring)
    m = target_rank
    res = preimage_raw(ring, m, [d for d, _ in gens], [v for _, v in gens], modulo=modulo)
    red = _engine.reducer_from_basis(ring, res.basis)
    p = ring.p
    out = []
    for t in targets:
        v = {k | up: c for k, c in t.items()}
        lt = red.top_reduce(v, p, stop_below=up)
        if lt is not None and lt >= up:
            out.append(None)
            continue
        out.append({k + m: (-c) % p for k, c in v.items()})
    return out


def mat_apply(ring: PolyRing, columns: Sequence[dict], coeffs: dict) -> dict:
    """Image of ``coeffs`` (vector on the source basis) under the column matrix."""
    p = ring.p
    one = ring.one_key
    out: dict[int, int] = {}
    for k, c in coeffs.items():
        j = ring.key_comp(k)
        shift = ring.with_comp(k, 0) - one
        get = out.get
        for kk, cc in columns[j].items():
            key = kk + shift
            nv = (get(key, 0) + c * cc) % p
            if nv:
                out[key] = nv
            else:
                del out[key]
    return out


# -- submodules -----------------------------------------------------------------


class Submodule:
    """Submodule of a graded free module given by homogeneous generators.

    An ideal is the rank-1, shift-0 case.
    """

    def __init__(self, ambient: GradedFreeModule, gens: Iterable[FreeModuleElement | GradedPolynomial] = ()):
        self.ambient = ambient
        out = []
        for g in gens:
            if isinstance(g, GradedPolynomial):
                if ambient.rank != 1:
                    raise AmbientMismatch("polynomial generators need a rank-1 ambient")
                if g.ring != ambient.ring:
                    raise RingMismatch(f"{g.ring} vs {ambient.ring}")
                g = FreeModuleElement(ambient, g.terms)
            elif g.module != ambient:
                raise AmbientMismatch(f"generator in {g.module}, expected {ambient}")
            if not g.is_zero():
                out.append(g)
        self.gens = tuple(out)

    @classmethod
    def from_raw(cls, ambient: GradedFreeModule, raw: Iterable[tuple[int, dict]]) -> Submodule:
        return cls(ambient, [FreeModuleElement(ambient, v) for _, v in raw if v])

    @property
    def ring(self) -> PolyRing:
        return self.ambient.ring

    @property
    def is_ideal(self) -> bool:
        return self.ambient.rank == 1 and self.ambient.shifts == (0,)

    def raw(self) -> list[tuple[int, dict]]:
        return [(g.degree, g.terms) for g in self.gens]

    def polys(self) -> list[GradedPolynomial]:
        if self.ambient.rank != 1:
            raise AmbientMismatch("not an ideal")
        return [GradedPolynomial(self.ring, g.terms) for g in self.gens]

    @cached_property
    def gb(self) -> GroebnerBasis:
        return buchberger(self)

    def contains(self, v) -> bool:
        if isinstance(v, GradedPolynomial):
            v = FreeModuleElement(self.ambient, v.terms)
        return normal_form(v, self.gb).is_zero()

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def issubset(self, other: Submodule) -> bool:
        _same_ambient(self, other)
        return all(other.contains(g) for g in self.gens)

    def equals(self, other: Submodule) -> bool:
        return self.issubset(other) and other.issubset(self)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        """True when the submodule is the whole ambient module."""
        return all(self.contains(self.ambient.basis(i)) for i in range(self.ambient.rank))

    def minimal_generators(self) -> Submodule:
        return Submodule.from_raw(self.ambient, minimal_generators_raw(self.ring, self.raw()))

    def __add__(self, other: Submodule) -> Submodule:
        _same_ambient(self, other)
        return Submodule(self.ambient, self.gens + other.gens)

    def __mul__(self, other):
        if isinstance(other, Submodule):
            return ideal_product(self, other)
        return NotImplemented

    def __repr__(self):
        return f"<{', '.join(str(g) for g in self.gens)}>"


def _same_ambient(a: Submodule, b: Submodule):
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if a.ambient != b.ambient:
        raise AmbientMismatch(f"{a.ambient} vs {b.ambient}")


def ideal(ring: PolyRing, polys: Iterable[GradedPolynomial | str]) -> Submodule:
    out = []
    for f in polys:
        out.append(ring.parse(f) if isinstance(f, str) else f)
    return Submodule(GradedFreeModule(ring, (0,)), out)


def unit_ideal(ring: PolyRing) -> Submodule:
    return ideal(ring, [ring.one()])


def zero_ideal(ring: PolyRing) -> Submodule:
    return ideal(ring, [])


def maximal_ideal(ring: PolyRing) -> Submodule:
    return ideal(ring, ring.gens())


@dataclass
class GroebnerBasis:
    submodule: Submodule
    elements: tuple[FreeModuleElement, ...]
    order: MonomialOrder = GREVLEX

    @cached_property
    def _reducer(self) -> _engine.Reducer:
        return _engine.reducer_from_basis(self.submodule.ring, [(e.degree, e.terms) for e in self.elements])

    def leading_keys(self) -> list[int]:
        return [max(e.terms) for e in self.elements]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def buchberger(sub: Submodule) -> GroebnerBasis:
    """Reduced Groebner basis (monic, minimal, fully interreduced)."""
    ring = sub.ring
    res = gb_raw(ring, sub.raw(), ideal_mode=sub.ambient.rank == 1)
    elems = sorted((FreeModuleElement(sub.ambient, v) for _, v in res.basis), key=lambda e: max(e.terms))
    return GroebnerBasis(sub, tuple(elems))


def normal_form(v: FreeModuleElement | GradedPolynomial, gb: GroebnerBasis) -> FreeModuleElement:
    amb = gb.submodule.ambient
    if isinstance(v, GradedPolynomial):
        if amb.rank != 1:
            raise AmbientMismatch("polynomial reduced against a module basis")
        if v.ring != amb.ring:
            raise RingMismatch(f"{v.ring} vs {amb.ring}")
        v = FreeModuleElement(amb, v.terms)
    if v.module != amb:
        raise AmbientMismatch(f"{v.module} vs {amb}")
    out = gb._reducer.full_reduce(dict(v.terms), amb.ring.p)
    return FreeModuleElement(amb, out)


def membership(f, sub: Submodule) -> bool:
    return sub.contains(f)


def s_pair_residues(gb: GroebnerBasis) -> list[FreeModuleElement]:
    """Normal forms of all S-pairs of the basis (all zero for a Groebner basis)."""
    ring = gb.submodule.ring
    out = []
    els = list(gb.elements)
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            a, b = els[i].terms, els[j].terms
            la, lb = max(a), max(b)
            if ring.key_comp(la) != ring.key_comp(lb):
                continue
            L = ring.lcm_key(la, lb)
            p = ring.p
            v = {k + (L - la): c * pow(a[la], -1, p) % p for k, c in a.items()}
            cb = pow(b[lb], -1, p)
            for k, c in b.items():
                kk = k + (L - lb)
                nv = (v.get(kk, 0) - c * cb) % p
                if nv:
                    v[kk] = nv
                else:
                    v.pop(kk, None)
            out.append(normal_form(FreeModuleElement(gb.submodule.ambient, v), gb))
    return out


def syzygies(gb: GroebnerBasis | Submodule) -> Submodule:
    """Syzygy module of the generators (of the basis elements for a GroebnerBasis).

    Lives in the free module whose shifts are the generator degrees.
    """
    elems = gb.elements if isinstance(gb, GroebnerBasis) else gb.gens
    sub = gb.submodule if isinstance(gb, GroebnerBasis) else gb
    ring = sub.ring
    src = GradedFreeModule(ring, tuple(e.degree for e in elems))
    raw = syz_raw(ring, sub.ambient.rank, [(e.degree, e.terms) for e in elems])
    return Submodule.from_raw(src, raw)


# -- ideal / submodule arithmetic -------------------------------------------------


def ideal_sum(I: Submodule, J: Submodule) -> Submodule:
    _same_ambient(I, J)
    return (I + J).minimal_generators()


def ideal_product(I: Submodule, J: Submodule) -> Submodule:
    if I.ring != J.ring:
        raise RingMismatch(f"{I.ring} vs {J.ring}")
    if I.ambient.rank != 1:
        raise AmbientMismatch("ideal_product needs a rank-1 ambient")
    ring = I.ring
    gens = []
    for f in J.gens:
        for g in I.gens:
            gens.append(FreeModuleElement(I.ambient, _poly_times(ring, g.terms, f.terms)))
    return Submodule(I.ambient, gens).minimal_generators()


def _poly_times(ring: PolyRing, v: dict, f: dict) -> dict:
    from .poly import vec_times_poly

    return vec_times_poly(v, f, ring.one_key, ring.p)


def ideal_times_module(I: Submodule, U: Submodule) -> Submodule:
    """The submodule I*U of U's ambient."""
    ring = U.ring
    gens = [FreeModuleElement(U.ambient, _poly_times(ring, u.terms, f.terms)) for f in I.gens for u in U.gens]
    return Submodule(U.ambient, gens)


def ideal_power(I: Submodule, e: int) -> Submodule:
    out = unit_ideal(I.ring)
    for _ in range(e):
        out = ideal_product(out, I)
    return out


def intersect(A: Submodule, B: Submodule) -> Submodule:
    """A intersect B via the syzygy (preimage) method."""
    _same_ambient(A, B)
    ring = A.ring
    if not A.gens or not B.gens:
        return Submodule(A.ambient, [])
    res = preimage_raw(ring, A.ambient.rank, [g.degree for g in A.gens], [g.terms for g in A.gens], modulo=B.raw())
    cols = [g.terms for g in A.gens]
    gens = [mat_apply(ring, cols, v) for _, v, _ in res.recorded]
    return Submodule(A.ambient, [FreeModuleElement(A.ambient, g) for g in gens if g]).minimal_generators()


def ideal_intersect(I: Submodule, J: Submodule) -> Submodule:
    return intersect(I, J)


def intersect_all(subs: Sequence[Submodule]) -> Submodule:
    out = subs[0]
    for s in subs[1:]:
        out = intersect(out, s)
    return out


def ideal_colon(I: Submodule, f: GradedPolynomial) -> Submodule:
    """I : f, computed from the syzygies of (f, I)."""
    if f.is_zero():
        raise ZeroDivisorArgument("colon by the zero polynomial")
    if f.ring != I.ring:
        raise RingMismatch(f"{f.ring} vs {I.ring}")
    ring = I.ring
    res = preimage_raw(ring, I.ambient.rank, [f.degree], [f.terms], modulo=I.raw())
    gens = [GradedPolynomial(ring, v) for _, v, _ in res.recorded]
    return ideal(ring, gens)


def ideal_quotient(I: Submodule, J: Submodule) -> Submodule:
    """I : J for an ideal J."""
    if not J.gens:
        return unit_ideal(I.ring)
    return intersect_all([ideal_colon(I, g) for g in J.polys()])


def module_colon(U: Submodule, f: GradedPolynomial) -> Submodule:
    """{v in F : f v in U} for a submodule U of F."""
    ring = U.ring
    F = U.ambient
    images = []
    for i in range(F.rank):
        images.append(_poly_times(ring, F.basis(i).terms, f.terms))
    res = preimage_raw(ring, F.rank, [s + f.degree for s in F.shifts], images, modulo=U.raw())
    # the preimage lives in F(-deg f); as a submodule of F the vectors are the same
    return Submodule(F, [FreeModuleElement(F, v) for _, v, _ in res.recorded])


def module_quotient_by_ideal(U: Submodule, I: Submodule) -> Submodule:
    """U :_F I."""
    if not I.gens:
        return Submodule(U.ambient, [U.ambient.basis(i) for i in range(U.ambient.rank)])
    return intersect_all([module_colon(U, g) for g in I.polys()])


def substitute(ideal_: Submodule, images: Sequence[GradedPolynomial], target: PolyRing) -> Submodule:
    """Apply the ring map x_i -> images[i] (linear forms) to an ideal's generators."""
    from .poly import vec_times_poly

    src = ideal_.ring
    if len(images) != src.n:
        raise InputError("substitution needs one image per variable")
    out = []
    for g in ideal_.polys():
        acc: dict[int, int] = {}
        for k, c in g.terms.items():
            term = {target.one_key: c}
            for i, e in enumerate(src.key_exps(k)):
                for _ in range(e):
                    term = vec_times_poly(term, images[i].terms, target.one_key, target.p)
            for kk, cc in term.items():
                nv = (acc.get(kk, 0) + cc) % target.p
                if nv:
                    acc[kk] = nv
                else:
                    acc.pop(kk, None)
        out.append(GradedPolynomial(target, acc))
    return ideal(target, out)
