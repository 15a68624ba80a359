"""The ten acceptance criteria, one test each.

Every test records a single PASS/FAIL line that is echoed in the terminal
summary (see conftest.py).
"""

from __future__ import annotations

import random

import conftest
import oracles
from koszullab import scenarios
from koszullab.groebner import ideal, ideal_colon, ideal_intersect
from koszullab.modules import PresentedModule
from koszullab.poly import make_ring
from koszullab.resolution import hilbert_series, regularity, truncated_regularity_over_R
from koszullab.tor import is_tor_linear, tor_module


def record(n: int, ok: bool, detail: str):
    conftest.ACCEPTANCE_LINES.append(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
    print(conftest.ACCEPTANCE_LINES[-1])
    assert ok, detail


def suite(name: str, trials: int, seed: int = 0):
    rep = scenarios.run_scenario(name, seed, trials)
    ok, total = rep.counts
    return rep.passed and total == trials, f"{name}: {ok}/{total}"


def test_criterion_1_nontorlin():
    ring, J, I = scenarios.nontorlin_data()
    r = regularity(tor_module(PresentedModule.cyclic(I), PresentedModule.cyclic(J), 1).value)
    rep = is_tor_linear(J, I)
    ok = r == 3 and not rep.tor_linear and rep.margin == 2
    record(1, ok, f"reg Tor_1 = {r}, tor_linear = {rep.tor_linear}, margin = {rep.margin}")


def test_criterion_2_closing_example():
    ring, J, f = scenarios.closing_example_data()
    rJ = regularity(PresentedModule.of_submodule(J))
    tr = truncated_regularity_over_R(PresentedModule.of_submodule(J, ideal(ring, [f])), 4)
    record(2, rJ == 2 and tr.value >= 3, f"reg J = {rJ}, truncated reg_R JR = {tr.value} at cutoff 4")


def test_criterion_3_reg_quotient():
    record(3, *suite("reg-quotient", 100))


def test_criterion_4_primary_decomposition():
    record(4, *suite("primary-decomp", 100))


def test_criterion_5_linear_resolution():
    record(5, *suite("conca-herzog", 100))


def test_criterion_6_quadric_truncated():
    record(6, *suite("quadric-ustar", 50))


def test_criterion_7_approximations():
    a, da = suite("kerann", 50)
    b, db = suite("example-notannihilated", 1)
    record(7, a and b, f"{da}; {db}")


def test_criterion_8_ds_bounds():
    a, da = suite("ds-bounds", 50)
    b, db = suite("proof-trace", 20)
    record(8, a and b, f"{da}; {db}")


def test_criterion_9_chardin():
    record(9, *suite("chardin", 100))


def test_criterion_10_oracles():
    rng = random.Random(20241)
    hilb = 0
    for k in range(50):
        n = 2 + k % 3
        ring = make_ring([f"x{i}" for i in range(n)])
        M = scenarios.random_module(ring, rng)
        H = hilbert_series(M)
        if all(H.coefficient(d) == oracles.module_hilbert(M, d) for d in range(7)):
            hilb += 1
    ideals = 0
    for k in range(50):
        n = 2 + k % 3
        ring = make_ring([f"x{i}" for i in range(n)])
        I = scenarios.random_ideal(ring, rng)
        J = scenarios.random_ideal(ring, rng)
        f = scenarios.random_form(ring, rng.randint(1, 2), rng)
        A = ideal_intersect(I, J)
        C = ideal_colon(I, f)
        good = all(
            oracles.ideal_dim(A, d) == oracles.intersection_dim(I, J, d) and oracles.ideal_dim(C, d) == oracles.colon_dim(I, f, d)
            for d in range(5)
        )
        # generators themselves lie in both sides
        good = good and all(oracles.contains(I, g) and oracles.contains(J, g) for g in A.polys())
        good = good and all(oracles.contains(I, g * f) for g in C.polys())
        ideals += good
    record(10, hilb == 50 and ideals == 50, f"hilbert {hilb}/50, intersect/colon {ideals}/50")
