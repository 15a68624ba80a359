from __future__ import annotations

import pytest

import oracles
from koszullab.errors import EmptyIndexSet, InvalidParameter, NotContained, ZeroDivisorArgument
from koszullab.groebner import ideal, ideal_power
from koszullab.linprod import (
    LinearIdealFamily,
    colon_subring_check,
    complementary_product,
    ideals_equal,
    index_ideal,
    primary_decomposition_linprod,
    product_ideal,
    proof_trace,
    random_family,
    subquotient,
)
from koszullab.modules import PresentedModule
from koszullab.poly import make_ring
from koszullab.resolution import NEG_INF, has_linear_resolution, hilbert_series, regularity, top_degree


def fam(R, *groups):
    return LinearIdealFamily.from_forms(R, [list(g) for g in groups])


def test_product_ideal_examples():
    R = make_ring("x,y,z")
    assert product_ideal(fam(R, ("x", "y"))).equals(ideal(R, ["x", "y"]))
    P = product_ideal(fam(R, ("x", "y"), ("y", "z")))
    assert P.equals(ideal(R, ["x*y", "x*z", "y^2", "y*z"]))
    assert product_ideal(fam(R, ("x",), ())).is_zero()


def test_index_and_complementary():
    R = make_ring("x,y,z")
    F = fam(R, ("x", "y"), ("y", "z"))
    assert index_ideal(F, [1]).equals(F.ideal_at(1))
    assert index_ideal(F, [1, 2]).equals(ideal(R, ["x", "y", "z"]))
    assert complementary_product(F, [1]).equals(F.ideal_at(2))
    assert complementary_product(F, [1, 2]).is_unit()
    with pytest.raises(EmptyIndexSet):
        index_ideal(F, [])


def test_decomposition_examples():
    R = make_ring("x,y,z")
    rep = primary_decomposition_linprod(fam(R, ("x", "y")))
    assert len(rep.components) == 1 and rep.equal
    rep = primary_decomposition_linprod(fam(R, ("x", "y"), ("y", "z")))
    comps = {A: c for A, _, c in rep.components}
    assert comps[(1,)].equals(ideal(R, ["x", "y"]))
    assert comps[(2,)].equals(ideal(R, ["y", "z"]))
    assert comps[(1, 2)].equals(ideal_power(ideal(R, ["x", "y", "z"]), 2))
    assert rep.equal and rep.coarse_equal
    S = make_ring("x,y")
    rep = primary_decomposition_linprod(fam(S, ("x", "y"), ("x", "y")))
    assert ideals_equal(product_ideal(fam(S, ("x", "y"), ("x", "y"))), ideal_power(ideal(S, ["x", "y"]), 2))


def test_colon_subring_examples():
    R = make_ring("x,y,z,w")
    F = fam(R, ("x", "y"), ("x", "z"))
    rep = colon_subring_check(F, R.parse("w^2 + x*w"))
    assert rep.ok and rep.rank_V == 3
    full = fam(R, ("x", "y"), ("z", "w"))
    assert colon_subring_check(full, R.parse("x*y + w^2")).ok
    rep = colon_subring_check(F, R.parse("x^2"))
    assert len(rep.generators) == 1 and rep.generators[0].degree == 0
    with pytest.raises(ZeroDivisorArgument):
        colon_subring_check(F, R.zero())


def test_subquotient_examples():
    R = make_ring("x")
    Q = subquotient(ideal(R, ["x"]), ideal(R, ["x^2"])).realized
    assert top_degree(Q) == 1
    assert hilbert_series(Q).polynomial() == [0, 1]
    S = make_ring("x,y")
    assert subquotient(ideal(S, ["x"]), ideal(S, ["x"])).realized.is_zero()
    m = ideal(S, ["x", "y"])
    Q = subquotient(m, ideal_power(m, 2)).realized
    assert hilbert_series(Q).polynomial() == [0, 2]
    with pytest.raises(NotContained):
        subquotient(ideal(S, ["x^2"]), ideal(S, ["y"]))


def test_subquotient_against_oracle():
    R = make_ring("x,y,z")
    num = ideal(R, ["x*y", "y*z", "x^2"])
    den = ideal(R, ["x^2*y", "y^2*z", "x^3"])
    Q = subquotient(num, den).realized
    H = hilbert_series(Q)
    for d in range(6):
        assert H.coefficient(d) == oracles.ideal_dim(num, d) - oracles.ideal_dim(den, d)


def test_proof_trace_d1():
    R = make_ring("x,y,z")
    t = proof_trace(fam(R, ("x", "y")), R.parse("z"))
    assert t.passed
    assert all(e.reg == NEG_INF for e in t.entries)


def test_proof_trace_d2():
    R = make_ring("x,y,z")
    t = proof_trace(fam(R, ("x", "y"), ("y", "z")), R.parse("y"))
    assert t.passed
    assert all(e.reg == NEG_INF or e.reg <= 1 for e in t.entries)
    names = [e.name for e in t.entries]
    assert "M_2" in names and "P_1[i=1]" in names


def test_proof_trace_f_outside_sum():
    R = make_ring("x,y,z,w")
    F = fam(R, ("x", "y"), ("y", "z"))
    t = proof_trace(F, R.parse("w"))
    Md = [e for e in t.entries if e.name == "M_2"][0]
    assert Md.reg == NEG_INF


def test_random_family_determinism():
    R = make_ring("a,b,c,d")
    a = random_family(R, 2, 2, 7).describe()
    assert a == random_family(R, 2, 2, 7).describe()
    assert a == [["c", "d"], ["a + 1350*d"]]


def test_random_family_principal():
    R = make_ring("a,b,c,d")
    F = random_family(R, 3, 1, 5)
    I = product_ideal(F)
    assert len(I.minimal_generators().gens) == 1
    assert I.gens[0].degree == 3


def test_random_family_d0():
    with pytest.raises(InvalidParameter):
        random_family(make_ring("a,b"), 0, 1, 1)


def test_product_linear_resolution():
    R = make_ring("a,b,c,d")
    for seed in range(5):
        F = random_family(R, 3, 2, seed)
        I = product_ideal(F)
        if not I.is_zero():
            assert has_linear_resolution(PresentedModule.of_submodule(I), 3)
            assert regularity(PresentedModule.cyclic(I)) == 2
