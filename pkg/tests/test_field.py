from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from koszullab.errors import DivisionByZero, FieldMismatch, InputError
from koszullab.field import PrimeField, field_arith, inverse_mod, is_prime, signed

F7 = PrimeField(7)


def test_add_mod_7():
    assert field_arith(F7(2), F7(3), "add") == F7(5)


def test_div_mod_7():
    assert field_arith(F7(1), F7(3), "div") == F7(5)


def test_div_by_zero():
    with pytest.raises(DivisionByZero):
        field_arith(F7(4), F7(0), "div")


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        field_arith(F7(1), PrimeField(11)(1), "add")


def test_non_prime_rejected():
    with pytest.raises(InputError):
        PrimeField(9)
    with pytest.raises(InputError):
        PrimeField(2)


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(32003)


def test_signed_representative():
    assert signed(6, 7) == -1
    assert signed(3, 7) == 3


P = 32003
elems = st.integers(min_value=0, max_value=P - 1)


@settings(max_examples=300)
@given(elems.filter(bool))
def test_inverse_property(a):
    F = PrimeField(P)
    assert F(a) * field_arith(F(1), F(a), "div") == F(1)
    assert a * inverse_mod(a, P) % P == 1


@settings(max_examples=500)
@given(elems, elems, elems)
def test_field_axioms(a, b, c):
    F = PrimeField(P)
    x, y, z = F(a), F(b), F(c)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x
    assert x - x == F(0)
