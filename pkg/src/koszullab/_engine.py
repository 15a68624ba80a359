"""Homogeneous Buchberger core on raw term dictionaries.

Vectors are ``dict[key, coeff]`` with keys as laid out in :mod:`poly`.  The
core supports an optional *split*: keys ``>= split`` form the upper block
(e.g. the image side of an augmented matrix) and everything below is the
lower block.  The order is then an elimination order for the upper block,
so basis elements whose leading key is below ``split`` have no upper part.

Pairs and inputs are consumed strictly by degree (normal strategy).  Inside
one degree the processing order is

1. known inputs lying in the lower block,
2. pairs whose lcm lies in the lower block,
3. the remaining pairs, then the remaining known inputs,
4. ordinary inputs,

which makes every surviving element recorded in steps 3-4 a minimal
generator: of the input module when there is no split, of the lower-block
module (e.g. the syzygies) when there is one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .field import inverse_mod
from .poly import QB, QMASK, PolyRing


class _Elem:
    __slots__ = ("lt", "vec", "deg", "qa", "exps", "lower")

    def __init__(self, lt, vec, deg, qa, exps, lower):
        self.lt = lt
        self.vec = vec
        self.deg = deg
        self.qa = qa
        self.exps = exps
        self.lower = lower


@dataclass
class GBResult:
    basis: list  # list of (degree, vec), monic, leading keys pairwise non-divisible
    recorded: list = field(default_factory=list)  # list of (degree, vec, input index or None)
    split: int | None = None

    def lower_part(self):
        if self.split is None:
            return list(self.basis)
        return [(d, v) for d, v in self.basis if max(v) < self.split]


class Reducer:
    """Lookup structure for top-reduction against a set of monic vectors."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.by_comp: dict[int, list[_Elem]] = {}
        self.elems: list[_Elem] = []

    def add(self, lt, vec, deg, lower=False) -> _Elem:
        ring = self.ring
        qa = ((lt >> QB) & ring.fmask) | ring.guard
        e = _Elem(lt, vec, deg, qa, ring.key_exps(lt), lower)
        self.by_comp.setdefault(lt & QMASK, []).append(e)
        self.elems.append(e)
        return e

    def find(self, t: int):
        cands = self.by_comp.get(t & QMASK)
        if not cands:
            return None
        ring = self.ring
        tf = (t >> QB) & ring.fmask
        g = ring.guard
        for e in cands:
            if (e.qa - tf) & g == g:
                return e
        return None

    def top_reduce(self, vec: dict, p: int, stop_below: int | None = None):
        """Reduce leading terms until irreducible; returns the leading key or None.

        With ``stop_below`` set, stops as soon as the leading key drops below it.
        """
        find = self.find
        while vec:
            t = max(vec)
            if stop_below is not None and t < stop_below:
                return t
            r = find(t)
            if r is None:
                return t
            c = vec[t]
            shift = t - r.lt
            get = vec.get
            for k, v in r.vec.items():
                kk = k + shift
                nv = (get(kk, 0) - c * v) % p
                if nv:
                    vec[kk] = nv
                else:
                    del vec[kk]
        return None

    def full_reduce(self, vec: dict, p: int) -> dict:
        """Normal form: no term of the result is divisible by a leading key."""
        out: dict[int, int] = {}
        find = self.find
        while vec:
            t = max(vec)
            r = find(t)
            if r is None:
                out[t] = vec.pop(t)
                continue
            c = vec[t]
            shift = t - r.lt
            get = vec.get
            for k, v in r.vec.items():
                kk = k + shift
                nv = (get(kk, 0) - c * v) % p
                if nv:
                    vec[kk] = nv
                else:
                    del vec[kk]
        return out


def _monic(vec: dict, lt: int, p: int) -> dict:
    c = vec[lt]
    if c == 1:
        return vec
    inv = inverse_mod(c, p)
    return {k: v * inv % p for k, v in vec.items()}


def groebner(
    ring: PolyRing,
    inputs: list,
    known: list = (),
    split: int | None = None,
    ideal_mode: bool = False,
    interreduce: bool = True,
) -> GBResult:
    """Buchberger on homogeneous vectors.

    ``inputs`` and ``known`` are lists of ``(degree, vec)``.  Known inputs are
    part of the module but are not themselves minimal generators; a known
    upper input that reduces into the lower block is a new lower element and
    is recorded as such.
    ``ideal_mode`` enables the coprime-leading-term criterion, which is only
    valid for rank-1 ambients without a split.
    """
    p = ring.p
    red = Reducer(ring)
    recorded: list = []
    agenda: dict[int, list] = {}
    # agenda entries: (phase, order, payload)
    for i, (d, v) in enumerate(known):
        if v:
            if split is None or max(v) < split:
                agenda.setdefault(d, []).append((0, (i,), ("in", dict(v), None)))
            else:
                agenda.setdefault(d, []).append((2, (1, i), ("in", dict(v), None)))
    for i, (d, v) in enumerate(inputs):
        if v:
            agenda.setdefault(d, []).append((3, (i,), ("in", dict(v), i)))
    pairs: set = set()  # pending (deg, lcm, a, b) with a, b element indices
    elems = red.elems
    high_bits = ~((1 << ring.pshift) - 1)
    div = ring.divides_key

    def lcm_of(a: _Elem, b: _Elem) -> int:
        ex = [x if x > y else y for x, y in zip(a.exps, b.exps)]
        return ring.encode(ex, ring.key_comp(a.lt)) | (a.lt & high_bits)

    def add_element(vec: dict, lt: int, deg: int):
        vec = _monic(vec, lt, p)
        lower = split is not None and lt < split
        h = red.add(lt, vec, deg, lower)
        t = len(elems) - 1
        # Gebauer-Moeller update
        cands = []
        for j in range(t):
            g = elems[j]
            if (g.lt ^ lt) & QMASK:
                continue
            coprime = ideal_mode and not any(x and y for x, y in zip(g.exps, h.exps))
            cands.append((lcm_of(g, h), j, coprime))
        groups: dict[int, list] = {}
        for L, j, coprime in cands:
            if any(L2 != L and div(L2, L) for L2, _, _ in cands):
                continue
            groups.setdefault(L, []).append((j, coprime))
        new_pairs = []
        for L, grp in groups.items():
            if any(c for _, c in grp):
                continue
            j = grp[0][0]
            g = elems[j]
            d = g.deg + ring.key_degree(L) - ring.key_degree(g.lt)
            new_pairs.append((d, L, j, t))
        dead = []
        for pr in pairs:
            L = pr[1]
            if div(lt, L) and lcm_of(elems[pr[2]], h) != L and lcm_of(elems[pr[3]], h) != L:
                dead.append(pr)
        pairs.difference_update(dead)
        for pr in new_pairs:
            pairs.add(pr)
            lower_pair = split is not None and pr[1] < split
            agenda.setdefault(pr[0], []).append((1 if lower_pair else 2, (0, pr[1], pr[2], pr[3]), ("pair", pr)))

    while agenda:
        d = min(agenda)
        items = agenda.pop(d)
        items.sort(key=lambda it: (it[0], it[1]))
        for phase, _, payload in items:
            if payload[0] == "pair":
                pr = payload[1]
                if pr not in pairs:
                    continue
                pairs.discard(pr)
                _, L, a, b = pr
                ga, gb = elems[a], elems[b]
                sa = L - ga.lt
                sb = L - gb.lt
                vec = {k + sa: v for k, v in ga.vec.items()}
                get = vec.get
                for k, v in gb.vec.items():
                    kk = k + sb
                    nv = (get(kk, 0) - v) % p
                    if nv:
                        vec[kk] = nv
                    else:
                        del vec[kk]
                src = None
            else:
                vec = payload[1]
                src = payload[2]
            lt = red.top_reduce(vec, p)
            if lt is None:
                continue
            is_lower = split is not None and lt < split
            if (phase == 3 and split is None) or (phase >= 2 and is_lower):
                recorded.append((d, _monic(vec, lt, p), src))
            add_element(vec, lt, d)

    if interreduce and len(elems) > 1:
        basis = []
        for e in elems:
            v = dict(e.vec)
            c = v.pop(e.lt)
            tail = red.full_reduce(v, p)
            tail[e.lt] = c
            basis.append((e.deg, tail))
    else:
        basis = [(e.deg, e.vec) for e in elems]
    return GBResult(basis, recorded, split)


def reducer_from_basis(ring: PolyRing, basis) -> Reducer:
    red = Reducer(ring)
    for d, v in basis:
        red.add(max(v), v, d)
    return red
