from __future__ import annotations

import random

import pytest

from koszullab import approx
from koszullab.approx import (
    ApproximationWitness,
    GeneralizedApproxSystem,
    SandwichData,
    a0,
    check_DS33,
    check_DS35,
    check_kerann,
    check_kernel_cokernel,
    check_p1_bound,
    find_filter_regular,
    induced_tensor_witness,
    induced_tor_witness,
    induced_W_witness,
    is_filter_regular,
    notannihilated_example,
    sandwich_from_witness,
    system_from_colons,
    verify_witness,
    witness_for_injective,
    witness_for_surjective,
    witness_from_sandwich,
    zero_target_witness,
)
from koszullab.errors import FilterRegularityViolated, InvalidParameter, NotASandwich, NotSurjective
from koszullab.groebner import Submodule, ideal, maximal_ideal, unit_ideal
from koszullab.linprod import LinearIdealFamily
from koszullab.modules import ModuleMap, PresentedModule, basis_vec, identity_map
from koszullab.poly import make_ring
from koszullab.resolution import NEG_INF, hilbert_series
from koszullab.scenarios import random_module, random_sandwich


def cyc(R, gens, J=None):
    return PresentedModule.cyclic(ideal(R, gens), J)


def proj(R, src, tgt):
    """S/I -> S/I' induced by the identity on the cover."""
    return ModuleMap(src, tgt, [basis_vec(R, 0)])


def xy_setup():
    R = make_ring("x,y")
    phi = proj(R, cyc(R, ["x^2"]), cyc(R, ["x"]))
    return R, phi, ideal(R, ["x"])


def test_identity_witness():
    R = make_ring("x,y")
    N = cyc(R, ["x^3", "y^2"])
    idN = identity_map(N)
    w = ApproximationWitness(idN, ideal(R, ["x"]), N, idN, idN)
    assert verify_witness(w).ok


def test_surjection_witness():
    R, phi, I = xy_setup()
    assert verify_witness(witness_for_surjective(phi, I)).ok
    # (y) does not kill the kernel (x)/(x^2)
    rep = verify_witness(witness_for_surjective(phi, ideal(R, ["y"])))
    assert not rep.ok and not rep.conditions["I_ker_beta_zero"]
    assert rep.certificate is not None


def test_notannihilated_candidate_rejected():
    rep = notannihilated_example()
    assert rep.kernel_and_cokernel_annihilated
    assert not rep.witness_candidate_ok


def test_sandwich_trivial():
    R = make_ring("x,y")
    Q = PresentedModule.free(R)
    P = ideal(R, ["x", "y^2"]).raw()
    w = witness_from_sandwich(SandwichData(Q, [], P, [], P, ideal(R, ["y"])))
    assert verify_witness(w).ok
    assert hilbert_series(w.Z).numerator == hilbert_series(w.phi.source).numerator


def test_sandwich_example_conditions():
    R = make_ring("x,y")
    Q = PresentedModule.free(R)
    P, P2, M = ideal(R, ["x"]), ideal(R, ["x", "y^2"]), ideal(R, ["x^2"])
    s = SandwichData(Q, M.raw(), P.raw(), M.raw(), P2.raw(), ideal(R, ["y^2"]))
    c = s.check()
    # y^4 = y^2 * y^2 is in I P' but not in P
    assert not c["IP2_in_P"]
    assert all(v for k, v in c.items() if k != "IP2_in_P")
    with pytest.raises(NotASandwich):
        witness_from_sandwich(s)
    P = ideal(R, ["x", "y^4"])
    w = witness_from_sandwich(SandwichData(Q, M.raw(), P.raw(), M.raw(), P2.raw(), ideal(R, ["y^2"])))
    assert verify_witness(w).ok


def test_sandwich_round_trip_random():
    R = make_ring("x,y,z")
    rng = random.Random(8)
    for _ in range(6):
        w = witness_from_sandwich(random_sandwich(R, rng))
        back = sandwich_from_witness(w)
        assert all(back.check().values())
        assert verify_witness(witness_from_sandwich(back)).ok


def test_check_kernel_cokernel():
    R, phi, I = xy_setup()
    assert check_kernel_cokernel(phi, I)
    N = cyc(R, ["x"])
    assert not check_kernel_cokernel(approx.zero_map(N, N), unit_ideal(R))


def test_injective_iff():
    R = make_ring("x,y")
    x = R.var("x")
    src = PresentedModule.free(R, (1,))
    psi = ModuleMap(src, PresentedModule.free(R), [x.terms])
    assert verify_witness(witness_for_injective(psi, ideal(R, ["x"]))).ok
    assert not verify_witness(witness_for_injective(psi, ideal(R, ["y"]))).ok


def test_tensor_witness_examples():
    R, phi, I = xy_setup()
    w = witness_for_surjective(phi, I)
    wB = induced_tensor_witness(w, cyc(R, ["y"]))
    assert verify_witness(wB).ok
    wS = induced_tensor_witness(w, PresentedModule.free(R))
    assert hilbert_series(wS.phi.source).numerator == hilbert_series(phi.source).numerator
    w0 = induced_tensor_witness(w, cyc(R, [R.one()]))
    assert verify_witness(w0).ok and w0.phi.source.is_zero()


def test_W_witness():
    R, phi, I = xy_setup()
    w = witness_for_surjective(phi, I)
    W = Submodule(PresentedModule.free(R, (0, 0)).cover, [PresentedModule.free(R, (0, 0)).cover.element([R.var("y"), R.var("x")])])
    assert verify_witness(induced_W_witness(w, W)).ok
    G = PresentedModule.free(R, (0,)).cover
    full = induced_W_witness(w, Submodule(G, [G.basis(0)]))
    assert hilbert_series(full.phi.source).numerator == hilbert_series(phi.source).numerator


def test_tor_witness():
    R, phi, I = xy_setup()
    w = witness_for_surjective(phi, I)
    w1 = induced_tor_witness(w, cyc(R, ["y"]), 1)
    assert verify_witness(w1).ok
    w2 = induced_tor_witness(w, cyc(R, ["y"]), 2)
    assert w2.phi.source.is_zero() and w2.phi.target.is_zero()


def test_tor_witness_needs_surjection():
    R = make_ring("x,y")
    psi = ModuleMap(PresentedModule.free(R, (1,)), PresentedModule.free(R), [R.var("x").terms])
    w = witness_for_injective(psi, ideal(R, ["x"]))
    with pytest.raises(NotSurjective):
        induced_tor_witness(w, cyc(R, ["y"]), 1)


def test_induced_witnesses_random():
    R = make_ring("x,y,z")
    rng = random.Random(21)
    for _ in range(5):
        w = witness_from_sandwich(random_sandwich(R, rng))
        B = random_module(R, rng)
        assert verify_witness(induced_tensor_witness(w, B)).ok
        assert check_kerann(w, B).I_ker_zero


def test_kerann_free_B():
    R, phi, I = xy_setup()
    rep = check_kerann(witness_for_surjective(phi, I), PresentedModule.free(R))
    assert rep.I_ker_zero and rep.I_coker_zero


def test_notannihilated_example():
    rep = notannihilated_example()
    assert rep.element_in_kernel and rep.I_times_element_nonzero
    assert rep.element == "(c, c)"
    k = rep.kerann
    assert not k.I_ker_zero
    assert k.I2_ker_zero and k.I_coker_zero


def test_filter_regular_examples():
    R = make_ring("x,y")
    x, y = R.gens()
    assert is_filter_regular(cyc(R, ["x", "y"]), x)
    assert not is_filter_regular(cyc(R, ["x"]), x)
    assert is_filter_regular(cyc(R, ["x"]), y)
    with pytest.raises(InvalidParameter):
        is_filter_regular(cyc(R, ["x"]), x * x)
    z = find_filter_regular([cyc(R, ["x"]), cyc(R, ["x*y", "y^2"])], seed=3)
    assert is_filter_regular(cyc(R, ["x"]), z)


def test_a0_examples():
    R = make_ring("x,y")
    assert a0(cyc(R, ["x^2", "x*y", "y^2"])) == 1
    assert a0(cyc(R, ["x"])) == NEG_INF
    assert a0(cyc(R, ["x^2", "x*y"])) == 1


def test_ds35_finite_length_zero_target():
    R = make_ring("x,y")
    N = cyc(R, ["x", "y"]).shifted(2)
    sys = GeneralizedApproxSystem(N, [zero_target_witness(N, maximal_ideal(R))], 1)
    assert sys.covers_power()
    rep = check_DS35(sys)
    assert rep.holds and rep.lhs == 2 and rep.rhs == 2


def test_ds33_identity_system():
    R = make_ring("x,y")
    N = cyc(R, ["x^2", "y^3"])
    idN = identity_map(N)
    m = maximal_ideal(R)
    sys = GeneralizedApproxSystem(N, [ApproximationWitness(idN, m, N, idN, idN)], 2)
    y = find_filter_regular([N], seed=1)
    assert check_DS33(sys, y).holds
    assert check_DS35(sys).holds
    with pytest.raises(FilterRegularityViolated):
        check_DS33(GeneralizedApproxSystem(cyc(R, ["x"]), sys.entries, 2), R.var("x"))


def test_system_limits():
    R = make_ring("x,y")
    N = cyc(R, ["x"])
    w = zero_target_witness(cyc(R, ["x", "y"]), maximal_ideal(R))
    with pytest.raises(InvalidParameter):
        GeneralizedApproxSystem(N, [], 1)
    with pytest.raises(InvalidParameter):
        GeneralizedApproxSystem(N, [w] * 17, 1)
    with pytest.raises(InvalidParameter):
        GeneralizedApproxSystem(N, [w], 0)


def test_system_from_colons():
    R = make_ring("x,y,z")
    P = ideal(R, ["x", "y*z"])
    M = ideal(R, ["x^2*y", "y^2*z^2", "x*z^3"])
    sys = system_from_colons(P, M, [ideal(R, ["x", "y"]), ideal(R, ["z"])], 1)
    assert all(sys.verify().values())
    y = find_filter_regular([sys.N] + sys.targets(), seed=5)
    assert check_DS33(sys, y).holds
    assert check_DS35(sys).holds


def test_p1_system_d3():
    R = make_ring("a,b,c,d,e")
    F = LinearIdealFamily.from_forms(R, [["a", "b"], ["b", "c"], ["d", "a + e"]])
    for f in ("a", "b*c", "a*b*e"):
        for i in (1, 2):
            rep = check_p1_bound(F, R.parse(f), i)
            assert rep.holds and rep.ds35.holds
            assert rep.reg_P1 == NEG_INF or rep.reg_P1 <= 1
