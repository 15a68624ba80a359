"""Seeded scenario runner: worked examples and randomized property suites.

Instance ``trial`` of a scenario with seed ``s`` draws from
``random.Random((s << 20) + trial)``.  Coefficients are uniform in GF(p)
minus zero; supports are sparse.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import approx, linprod, resolution, tor
from .errors import InvalidParameter, MathAssertionError
from .groebner import Submodule, ideal, ideal_product, ideal_sum, intersect
from .linprod import LinearIdealFamily
from .modules import ModuleMap, PresentedModule, basis_vec, is_annihilated, kernel, cokernel
from .poly import GradedFreeModule, GradedPolynomial, PolyRing, make_ring
from .resolution import NEG_INF, regularity, regularity_value

DEFAULT_P = 32003

# -- random instance generators -------------------------------------------------------


def rng_for(seed: int, trial: int) -> random.Random:
    return random.Random((seed << 20) + trial)


def random_form(ring: PolyRing, deg: int, rng: random.Random, max_terms: int = 3, nvars: int | None = None) -> GradedPolynomial:
    """Nonzero homogeneous form of degree ``deg`` in the first ``nvars`` variables."""
    nv = ring.n if nvars is None else nvars
    terms: dict = {}
    while not terms:
        for _ in range(rng.randint(1, max_terms)):
            e = [0] * ring.n
            for _ in range(deg):
                e[rng.randrange(nv)] += 1
            k = ring.encode(e)
            terms[k] = (terms.get(k, 0) + rng.randrange(1, ring.p)) % ring.p
        terms = {k: c for k, c in terms.items() if c}
    return GradedPolynomial(ring, terms)


def random_linear_row(n: int, p: int, rng: random.Random, nvars: int | None = None, max_support: int = 3) -> list[int]:
    nv = n if nvars is None else nvars
    row = [0] * n
    for i in rng.sample(range(nv), rng.randint(1, min(max_support, nv))):
        row[i] = rng.randrange(1, p)
    return row


def random_family(ring: PolyRing, rng: random.Random, d: int, max_forms: int = 2, nvars: int | None = None) -> LinearIdealFamily:
    spaces = [[random_linear_row(ring.n, ring.p, rng, nvars) for _ in range(rng.randint(1, max_forms))] for _ in range(d)]
    return LinearIdealFamily(ring, spaces)


def random_ideal(ring: PolyRing, rng: random.Random, max_gens: int = 3, max_deg: int = 2, max_terms: int = 2) -> Submodule:
    gens = [random_form(ring, rng.randint(1, max_deg), rng, max_terms) for _ in range(rng.randint(1, max_gens))]
    return ideal(ring, gens)


def random_module(ring: PolyRing, rng: random.Random) -> PresentedModule:
    """S/I for a random I, or the cokernel of a small random matrix."""
    if rng.random() < 0.6:
        return PresentedModule.cyclic(random_ideal(ring, rng))
    shifts = (0, rng.randint(0, 1))
    F = GradedFreeModule(ring, shifts)
    rels = []
    for _ in range(rng.randint(1, 3)):
        deg = max(shifts) + rng.randint(1, 2)
        rels.append(F.element([random_form(ring, deg - s, rng, 2) if rng.random() < 0.8 else ring.zero() for s in shifts]))
    return PresentedModule(F, [r for r in rels if not r.is_zero()])


def random_ring(rng: random.Random, lo: int, hi: int, p: int = DEFAULT_P) -> PolyRing:
    n = rng.randint(lo, hi)
    return make_ring([f"x{i + 1}" for i in range(n)], p)


def random_sandwich(ring: PolyRing, rng: random.Random) -> approx.SandwichData:
    """IM' <= M <= M', IP' <= P <= P', M <= P over Q = S."""
    I = ideal(ring, [random_form(ring, 1, rng, 2) for _ in range(rng.randint(1, 2))])
    P2 = random_ideal(ring, rng, 3, 2)
    M2 = intersect(P2, random_ideal(ring, rng, 2, 2))
    extra_m = [g for g in M2.gens if rng.random() < 0.5]
    M = Submodule(M2.ambient, list(ideal_product(I, M2).gens) + extra_m)
    extra_p = [g for g in P2.gens if rng.random() < 0.5]
    P = Submodule(P2.ambient, list(ideal_product(I, P2).gens) + list(M.gens) + extra_p)
    Q = PresentedModule.free(ring)
    return approx.SandwichData(Q, M.raw(), P.raw(), M2.raw(), P2.raw(), I)


def _cover_ideal(ring: PolyRing, rng: random.Random, t: int, d: int) -> list[Submodule]:
    """d ideals whose sum contains m^t."""
    groups = [[] for _ in range(d)]
    if t == 1:
        for x in ring.gens():
            groups[rng.randrange(d)].append(x)
    else:
        xs = ring.gens()
        for a in range(ring.n):
            for b in range(a, ring.n):
                groups[rng.randrange(d)].append(xs[a] * xs[b])
    for g in groups:
        if not g:
            g.append(random_form(ring, t, rng, 2))
    return [ideal(ring, g) for g in groups]


# -- reports ------------------------------------------------------------------------------


@dataclass
class Instance:
    trial: int
    description: dict
    assertions: list = field(default_factory=list)  # (name, ok, value)

    def check(self, name: str, ok: bool, value=None):
        self.assertions.append((name, bool(ok), value))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.assertions)

    def to_dict(self) -> dict:
        return {
            "trial": self.trial,
            "description": self.description,
            "assertions": [{"name": n, "pass": ok, "value": _jsonable(v)} for n, ok, v in self.assertions],
            "pass": self.passed,
        }


def _jsonable(v):
    if isinstance(v, float) and v == NEG_INF:
        return "-inf"
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


@dataclass
class ScenarioReport:
    scenario: str
    seed: int
    instances: list
    asserting: bool = True
    wall_clock: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.asserting or all(i.passed for i in self.instances)

    @property
    def counts(self) -> tuple[int, int]:
        return sum(i.passed for i in self.instances), len(self.instances)

    def to_dict(self) -> dict:
        ok, total = self.counts
        return {
            "scenario": self.scenario,
            "seed": self.seed,
            "trials": total,
            "passed_trials": ok,
            "asserting": self.asserting,
            "pass": self.passed,
            "instances": [i.to_dict() for i in self.instances],
        }


def _fam_desc(F: LinearIdealFamily) -> list:
    return F.describe()


def _guard(inst: Instance, name: str, fn):
    """Run fn; a MathAssertionError becomes a failed assertion carrying its report."""
    try:
        return fn()
    except MathAssertionError as e:
        inst.check(name, False, {"error": str(e), "report": e.report})
        return None


# -- scenarios ----------------------------------------------------------------------------


def sc_conca_herzog(rng, trial, p):
    ring = random_ring(rng, 2, 5, p)
    d = rng.randint(1, 4)
    F = random_family(ring, rng, d, 2)
    I = linprod.product_ideal(F)
    inst = Instance(trial, {"n": ring.n, "d": d, "family": _fam_desc(F)})
    M = PresentedModule.of_submodule(I)
    B = resolution.betti_table(M)
    inst.check(f"{d}-linear resolution", all(j == i + d for i, j in B.entries), B.to_dict())
    return inst


def sc_reg_quotient(rng, trial, p):
    ring = random_ring(rng, 2, 5, p)
    d = rng.randint(1, 3)
    kind = {0: "f in I", 1: "f not in I_[d]"}.get(trial % 5, "random")
    if kind == "f not in I_[d]" and ring.n == 1:
        kind = "random"
    nvars = ring.n - 1 if kind == "f not in I_[d]" else None
    F = random_family(ring, rng, d, 2, nvars)
    I = linprod.product_ideal(F)
    if kind == "f in I":
        f = GradedPolynomial(ring, {ring.one_key: 1})
        for V in F.spaces:
            f = f * F.form(V[rng.randrange(len(V))])
    elif kind == "f not in I_[d]":
        f = ring.gens()[-1] ** rng.randint(1, 3)
    else:
        f = random_form(ring, rng.randint(1, 3), rng)
    inst = Instance(trial, {"n": ring.n, "family": _fam_desc(F), "f": str(f), "draw": kind})
    M, N = PresentedModule.cyclic(I), PresentedModule.cyclic(ideal(ring, [f]))
    rep = _guard(inst, "creg >= reg sum", lambda: tor.creg(M, N))
    if rep is not None:
        want = regularity(M) + regularity(N)
        inst.check("creg = reg S/I + reg S/(f)", rep.creg == want, {"creg": rep.creg, "sum": want})
    return inst


def sc_primary_decomp(rng, trial, p):
    ring = random_ring(rng, 2, 5, p)
    d = rng.randint(1, 4)
    F = random_family(ring, rng, d, 2)
    inst = Instance(trial, {"n": ring.n, "family": _fam_desc(F)})
    rep = _guard(inst, "decomposition", lambda: linprod.primary_decomposition_linprod(F))
    if rep is not None:
        inst.check("I = cap I_A^|A|", rep.equal)
        inst.check("I = J_1 cap ... cap J_d cap I_[d]^d", rep.coarse_equal)
    return inst


def sc_quadric_ustar(rng, trial, p, cutoff=resolution.DEFAULT_CUTOFF):
    ring = random_ring(rng, 2, 4, p)
    d = rng.randint(1, 3)
    F = random_family(ring, rng, d, 2)
    f = random_form(ring, 2, rng, 4)
    I = linprod.product_ideal(F)
    inst = Instance(trial, {"n": ring.n, "family": _fam_desc(F), "f": str(f), "cutoff": cutoff})
    M = PresentedModule.cyclic(I, ideal(ring, [f]))
    B = resolution.resolution_over_hypersurface(M, cutoff).betti
    bad = [[i, j] for (i, j) in B.entries if i >= 1 and j != i + d - 1]
    inst.check("linear strand of R/IR through the cutoff", not bad, {"off_strand": bad, "betti": B.to_dict()})
    return inst


def sc_chardin(rng, trial, p):
    ring = random_ring(rng, 2, 3, p)
    M, N = random_module(ring, rng), random_module(ring, rng)
    inst = Instance(trial, {"n": ring.n, "M": repr(M), "N": repr(N)})
    rep = _guard(inst, "chardin", lambda: tor.check_chardin(M, N))
    if rep is not None:
        inst.check("creg >= reg M + reg N", rep.inequality_holds, rep.to_dict())
        if rep.equality_checked:
            inst.check("equality when dim Tor_1 <= 1", rep.equality_holds)
    return inst


def sc_compare_reg(rng, trial, p):
    ring = random_ring(rng, 2, 4, p)
    F = random_family(ring, rng, rng.randint(1, 3), 2)
    f = random_form(ring, 2, rng, 3)
    I = linprod.product_ideal(F)
    inst = Instance(trial, {"n": ring.n, "family": _fam_desc(F), "f": str(f)})
    rep = _guard(inst, "compare-reg", lambda: tor.check_compare_reg(I, f, 4))
    if rep is not None:
        inst.check("reg_R R/IR <= bound", rep.holds, rep.to_dict())
    return inst


def _random_surjection(ring, rng):
    I = random_ideal(ring, rng, 2, 2)
    I2 = ideal_sum(I, random_ideal(ring, rng, 2, 2))
    N, N2 = PresentedModule.cyclic(I), PresentedModule.cyclic(I2)
    return ModuleMap(N, N2, [basis_vec(ring, 0)])


def _random_injection(ring, rng):
    """Multiplication by g: S/(I:g)(-deg g) -> S/I."""
    from .groebner import ideal_colon

    I = random_ideal(ring, rng, 2, 2)
    g = random_form(ring, rng.randint(1, 2), rng, 2)
    if I.contains(g):
        g = ring.gens()[0] ** 3
    C = ideal_colon(I, g)
    src = PresentedModule.cyclic(C).shifted(g.degree)
    return ModuleMap(src, PresentedModule.cyclic(I), [g.terms])


def sc_kerann(rng, trial, p):
    ring = random_ring(rng, 2, 3, p)
    inst = Instance(trial, {"n": ring.n})
    # (a) and (c): witness from a random sandwich, then kerann against a random B
    s = random_sandwich(ring, rng)
    w = _guard(inst, "sandwich witness", lambda: approx.witness_from_sandwich(s))
    if w is not None:
        B = random_module(ring, rng)
        rep = _guard(inst, "kerann", lambda: approx.check_kerann(w, B))
        if rep is not None:
            inst.check("I Ker(phi (x) B) = 0 and I Coker = 0", rep.I_ker_zero and rep.I_coker_zero, rep.to_dict())
        back = approx.sandwich_from_witness(w)
        w2 = _guard(inst, "round trip", lambda: approx.witness_from_sandwich(back))
        if w2 is not None:
            inst.check("round trip verifies", approx.verify_witness(w2).ok)
    # (d) surjective and injective maps, both directions
    J = ideal(ring, [random_form(ring, 1, rng, 2) for _ in range(rng.randint(1, 2))])
    phi = _random_surjection(ring, rng)
    ann = is_annihilated(J, kernel(phi))
    ok = approx.verify_witness(approx.witness_for_surjective(phi, J)).ok
    inst.check("surjective: witness iff I Ker = 0", ok == ann, {"I_ker_zero": ann, "witness": ok})
    psi = _random_injection(ring, rng)
    ann = is_annihilated(J, cokernel(psi))
    ok = approx.verify_witness(approx.witness_for_injective(psi, J)).ok
    inst.check("injective: witness iff I Coker = 0", ok == ann, {"I_coker_zero": ann, "witness": ok})
    return inst


def sc_ds_bounds(rng, trial, p):
    ring = random_ring(rng, 2, 3, p)
    t = 1 + trial % 2
    d = rng.randint(1, 3)
    ideals = _cover_ideal(ring, rng, t, d)
    P = random_ideal(ring, rng, 2, 2)
    M = ideal_sum(ideal_product(P, random_ideal(ring, rng, 2, 2)), random_ideal(ring, rng, 1, 3))
    M = intersect(M, P)
    inst = Instance(trial, {"n": ring.n, "t": t, "P": str(P), "M": str(M), "ideals": [str(I) for I in ideals]})
    sys = _guard(inst, "system", lambda: approx.system_from_colons(P, M, ideals, t))
    if sys is None:
        return inst
    y = approx.find_filter_regular([sys.N] + sys.targets(), seed=(trial << 8) + 1)
    r33 = _guard(inst, "DS3.3", lambda: approx.check_DS33(sys, y))
    if r33 is not None:
        inst.check("DS3.3", r33.holds, r33.to_dict())
    r35 = _guard(inst, "DS3.5", lambda: approx.check_DS35(sys))
    if r35 is not None:
        inst.check("DS3.5", r35.holds, r35.to_dict())
    return inst


def sc_proof_trace(rng, trial, p):
    ring = random_ring(rng, 3, 5, p)
    d = rng.randint(2, 3)
    F = random_family(ring, rng, d, 2)
    f = random_form(ring, rng.randint(1, 3), rng, 2)
    inst = Instance(trial, {"n": ring.n, "family": _fam_desc(F), "f": str(f)})
    tr = _guard(inst, "trace", lambda: linprod.proof_trace(F, f))
    if tr is not None:
        inst.check("(S1)/(S2) bounds", tr.passed, [e.to_dict() for e in tr.entries])
    for i in range(1, d):
        rep = _guard(inst, f"P_1 system i={i}", lambda: approx.check_p1_bound(F, f, i))
        if rep is not None:
            inst.check(f"DS3.5 on P_1 system i={i}", rep.holds and rep.ds35.holds, rep.to_dict())
    return inst


def nontorlin_data(p: int = DEFAULT_P):
    ring = make_ring("x1,x2,x3,y1,y2,y3", p)
    x1, x2, x3, y1, y2, y3 = ring.gens()
    cols = [(x1, x2), (x2, x3), (y1, y2), (y2, y3)]
    minors = [a[0] * b[1] - a[1] * b[0] for k, a in enumerate(cols) for b in cols[k + 1 :]]
    return ring, ideal(ring, minors), ideal(ring, [x1, x3])


def sc_example_nontorlin(rng, trial, p):
    ring, J, I = nontorlin_data(p)
    inst = Instance(trial, {"J": str(J), "I": str(I)})
    T1 = tor.tor_module(PresentedModule.cyclic(I), PresentedModule.cyclic(J), 1).value
    r = regularity(T1)
    inst.check("reg Tor_1(S/(x1,x3), R) = 3", r == 3, r)
    rep = tor.is_tor_linear(J, I)
    inst.check("not Tor-linear, margin 2", (not rep.tor_linear) and rep.margin == 2, rep.to_dict())
    return inst


def closing_example_data(p: int = DEFAULT_P):
    ring = make_ring("x1,x2,y,z", p)
    x1, x2, y, z = ring.gens()
    rows = ((x1, x2, y), (x2, ring.zero(), z))
    minors = [rows[0][a] * rows[1][b] - rows[0][b] * rows[1][a] for a in range(3) for b in range(a + 1, 3)]
    return ring, ideal(ring, [m for m in minors if not m.is_zero()]), x1 * x1


def sc_example_quadric_fail(rng, trial, p):
    ring, J, f = closing_example_data(p)
    inst = Instance(trial, {"J": str(J), "f": str(f)})
    rJ = regularity(PresentedModule.of_submodule(J))
    inst.check("reg J = 2", rJ == 2, rJ)
    tr = resolution.truncated_regularity_over_R(PresentedModule.of_submodule(J, ideal(ring, [f])), 4)
    inst.check("reg_R JR >= 3 at cutoff 4", tr.value >= 3, tr.to_dict())
    return inst


def sc_example_notannihilated(rng, trial, p):
    rep = approx.notannihilated_example(p)
    inst = Instance(trial, {"ring": "k[a,b,c]/(a^2,ab)", "B": "R/(ac+bc)", "I": "(a)"})
    inst.check("I Ker phi = 0 and I Coker phi = 0", rep.kernel_and_cokernel_annihilated)
    inst.check("candidate witness rejected", not rep.witness_candidate_ok)
    inst.check("(c, c) in Ker(phi (x) B)", rep.element_in_kernel)
    inst.check("a (c, c) nonzero", rep.I_times_element_nonzero)
    inst.check("I Ker(phi (x) B) != 0", not rep.kerann.I_ker_zero, rep.kerann.certificate)
    inst.check("I^2 Ker(phi (x) B) = 0", rep.kerann.I2_ker_zero)
    inst.check("I Coker(phi (x) B) = 0", rep.kerann.I_coker_zero)
    return inst


def sc_explore_question13(rng, trial, p):
    """Report-only: Tor-linearity margins and truncated linearity for products over a quadric."""
    ring = random_ring(rng, 2, 4, p)
    F = random_family(ring, rng, rng.randint(1, 3), 2)
    f = random_form(ring, 2, rng, 4)
    I = linprod.product_ideal(F)
    rep = tor.is_tor_linear(ideal(ring, [f]), I)
    B = resolution.resolution_over_hypersurface(PresentedModule.cyclic(I, ideal(ring, [f])), 4).betti
    inst = Instance(trial, {"n": ring.n, "family": _fam_desc(F), "f": str(f)})
    inst.assertions.append(("tor-linear margin", True, regularity_value(rep.margin)))
    inst.assertions.append(("truncated reg_R R/IR", True, regularity_value(B.regularity())))
    return inst


SCENARIOS = {
    "conca-herzog": sc_conca_herzog,
    "reg-quotient": sc_reg_quotient,
    "primary-decomp": sc_primary_decomp,
    "quadric-ustar": sc_quadric_ustar,
    "chardin": sc_chardin,
    "compare-reg": sc_compare_reg,
    "kerann": sc_kerann,
    "ds-bounds": sc_ds_bounds,
    "proof-trace": sc_proof_trace,
    "example-nontorlin": sc_example_nontorlin,
    "example-quadric-fail": sc_example_quadric_fail,
    "example-notannihilated": sc_example_notannihilated,
    "explore-question13": sc_explore_question13,
}
SINGLE_INSTANCE = {"example-nontorlin", "example-quadric-fail", "example-notannihilated"}
REPORT_ONLY = {"explore-question13"}


def run_trial(name: str, seed: int, trial: int, p: int = DEFAULT_P) -> Instance:
    return SCENARIOS[name](rng_for(seed, trial), trial, p)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("KOSZULLAB_THREADS", "1")))
    except ValueError:
        return 1


def run_scenario(name: str, seed: int = 0, trials: int = 1, p: int = DEFAULT_P) -> ScenarioReport:
    if name not in SCENARIOS:
        raise InvalidParameter(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}")
    if name in SINGLE_INSTANCE:
        trials = 1
    start = time.perf_counter()
    workers = min(_threads(), trials)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            insts = list(ex.map(run_trial, [name] * trials, [seed] * trials, range(trials), [p] * trials))
    else:
        insts = [run_trial(name, seed, k, p) for k in range(trials)]
    return ScenarioReport(name, seed, insts, name not in REPORT_ONLY, time.perf_counter() - start)

