from __future__ import annotations

import random

import pytest

from koszullab.errors import NotAComplex
from koszullab.groebner import ideal, ideal_product, zero_ideal
from koszullab.modules import ModuleMap, PresentedModule, homology_of_presented_complex, identity_map, tensor
from koszullab.poly import make_ring
from koszullab.resolution import NEG_INF, hilbert_series, krull_dim, regularity
from koszullab.scenarios import nontorlin_data, random_ideal, random_module
from koszullab.tor import (
    check_chardin,
    check_compare_reg,
    check_tor_linear_strand,
    creg,
    is_tor_linear,
    tor_hilbert_check_colon,
    tor_module,
)


def cyc(R, gens):
    return PresentedModule.cyclic(ideal(R, gens))


def same_series(A, B):
    return hilbert_series(A).numerator == hilbert_series(B).numerator


def test_tensor_examples():
    R = make_ring("x,y")
    assert same_series(tensor(cyc(R, ["x"]), cyc(R, ["y"])), cyc(R, ["x", "y"]))
    M = cyc(R, ["x^2", "x*y"])
    assert same_series(tensor(M, PresentedModule.free(R)), M)
    m = cyc(R, ["x", "y"])
    assert same_series(tensor(m, m), m)


def _koszul(R, a, b):
    S0 = PresentedModule.free(R, (0,))
    S1 = PresentedModule.free(R, (1, 1))
    S2 = PresentedModule.free(R, (2,))
    d1 = ModuleMap(S1, S0, [a.terms, b.terms])
    col = S1.cover.element([-b, a])
    d2 = ModuleMap(S2, S1, [col.terms])
    return [d1, d2]


def test_homology_identity_complex():
    R = make_ring("x,y")
    S = PresentedModule.free(R)
    H = homology_of_presented_complex([identity_map(S)])
    assert all(h.is_zero() for h in H)


def test_homology_koszul_regular_sequence():
    R = make_ring("x,y")
    x, y = R.gens()
    H = homology_of_presented_complex(_koszul(R, x, y))
    assert same_series(H[0], cyc(R, ["x", "y"]))
    assert H[1].is_zero() and H[2].is_zero()


def test_homology_koszul_non_regular():
    R = make_ring("x")
    x = R.var(0)
    H = homology_of_presented_complex(_koszul(R, x, x))
    assert not H[1].is_zero()


def test_not_a_complex():
    R = make_ring("x,y")
    x, y = R.gens()
    d1, d2 = _koszul(R, x, y)
    bad = ModuleMap(d2.source, d2.target, [d2.target.cover.element([y, x]).terms])
    with pytest.raises(NotAComplex):
        homology_of_presented_complex([d1, bad])


def test_tor_examples():
    R = make_ring("x,y")
    T = tor_module(cyc(R, ["x"]), cyc(R, ["x"]), 1).value
    assert same_series(T, cyc(R, ["x"]).shifted(1))
    assert regularity(T) == 1
    S = make_ring("x,y,z")
    I = ideal(S, ["x*y", "y*z^2"])
    assert tor_module(PresentedModule.cyclic(I), cyc(S, ["x^2 + y*z"]), 2).value.is_zero()


def test_nontorlin_tor1():
    ring, J, I = nontorlin_data()
    T1 = tor_module(PresentedModule.cyclic(I), PresentedModule.cyclic(J), 1).value
    assert regularity(T1) == 3
    assert krull_dim(T1) == 2


def test_creg_examples():
    R = make_ring("x,y")
    m = cyc(R, ["x", "y"])
    assert creg(m, m).creg == 0
    S = make_ring("x1,x2,x3,x4")
    I = ideal_product(ideal(S, ["x1", "x2"]), ideal(S, ["x3", "x4"]))
    f = PresentedModule.cyclic(ideal(S, ["x1*x3 + x2*x4"]))
    assert creg(PresentedModule.cyclic(I), f).creg == 2
    assert creg(cyc(R, ["x"]), PresentedModule.free(R)).creg == 0
    assert creg(cyc(R, [R.one()]), m).creg == NEG_INF


def test_chardin_examples():
    R = make_ring("x,y,z")
    rep = check_chardin(cyc(R, ["x", "y"]), cyc(R, ["y", "z"]))
    assert rep.inequality_holds and rep.equality_checked
    rep = check_chardin(cyc(R, ["x"]), PresentedModule.free(R))
    assert rep.equality_holds and rep.creg == 0


def test_chardin_random_pairs():
    R = make_ring("x,y,z")
    rng = random.Random(2)
    for _ in range(6):
        rep = check_chardin(random_module(R, rng), random_module(R, rng))
        assert rep.inequality_holds


def test_torlinear_examples():
    S = make_ring("x1,x2,x3,x4")
    I = ideal_product(ideal(S, ["x1", "x2"]), ideal(S, ["x3", "x4"]))
    rep = is_tor_linear(ideal(S, ["x1*x3 + x2*x4"]), I)
    assert rep.tor_linear and rep.margin == 1
    ring, J, I2 = nontorlin_data()
    rep = is_tor_linear(J, I2)
    assert not rep.tor_linear and rep.margin == 2 and rep.creg == 2
    assert is_tor_linear(zero_ideal(S), I).tor_linear


def test_tor_linear_strand():
    S = make_ring("x1,x2,x3,x4")
    I = ideal_product(ideal(S, ["x1", "x2"]), ideal(S, ["x3", "x4"]))
    f = ideal(S, ["x1*x3 + x2*x4"])
    assert check_tor_linear_strand(f, I, 2)
    assert check_tor_linear_strand(zero_ideal(S), I, 2)
    assert check_tor_linear_strand(f, ideal(S, ["x1", "x2"]), 1)


def test_compare_reg_examples():
    R = make_ring("x")
    rep = check_compare_reg(ideal(R, ["x"]), R.parse("x^2"), 4)
    assert rep.holds
    S = make_ring("x1,x2,x3,x4")
    I = ideal_product(ideal(S, ["x1", "x2"]), ideal(S, ["x3", "x4"]))
    rep = check_compare_reg(I, S.parse("x1*x3 + x2*x4"), 4)
    assert rep.holds and rep.lhs == 1
    rep = check_compare_reg(zero_ideal(S), S.parse("x1^2"), 3)
    assert rep.holds


def test_tor1_against_colon():
    R = make_ring("x,y,z")
    rng = random.Random(4)
    for _ in range(6):
        I = random_ideal(R, rng)
        assert tor_hilbert_check_colon(I, R.parse("x*y + z^2"))


def test_tor_symmetry_hilbert():
    R = make_ring("x,y,z")
    rng = random.Random(9)
    for _ in range(4):
        M, N = random_module(R, rng), random_module(R, rng)
        for i in range(3):
            assert same_series(tor_module(M, N, i).value, tor_module(N, M, i).value)


def test_tor0_is_tensor():
    R = make_ring("x,y,z")
    rng = random.Random(1)
    for _ in range(4):
        M, N = random_module(R, rng), random_module(R, rng)
        assert same_series(tor_module(M, N, 0).value, tensor(M, N))
