import pytest
from fractions import Fraction
from hypothesis import given, strategies as st

from regulus.field import PrimeField, QQ, FieldError, is_prime, field_from_spec


def test_prime_check():
    assert is_prime(2) and is_prime(32003) and is_prime(5)
    assert not is_prime(1) and not is_prime(32001)


def test_nonprime_modulus_rejected():
    with pytest.raises(FieldError):
        PrimeField(32001)


def test_fp_basics():
    F = PrimeField(5)
    assert F.mul(3, 2) == 1
    assert F.add(4, 3) == 2
    assert F.coerce(-1) == 4
    assert F.inv(2) == 3
    assert F.lift(4) == -1 and F.lift(2) == 2


def test_q_basics():
    assert QQ.div(1, 3) == Fraction(1, 3)
    assert QQ.coerce(2) == Fraction(2)
    with pytest.raises(ZeroDivisionError):
        QQ.inv(0)


def test_field_spec():
    assert field_from_spec("Q") == QQ
    assert field_from_spec("F(32003)") == PrimeField(32003)
    with pytest.raises(FieldError):
        field_from_spec("R")


nonzero_fp = st.integers(min_value=1, max_value=32002)
any_fp = st.integers(min_value=0, max_value=32002)
rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4)


@given(any_fp, any_fp, any_fp)
def test_fp_ring_axioms(a, b, c):
    F = PrimeField()
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0


@given(nonzero_fp)
def test_fp_inverse(a):
    F = PrimeField()
    assert F.mul(a, F.inv(a)) == 1


@given(rationals, rationals, rationals)
def test_q_axioms(a, b, c):
    assert QQ.mul(a, QQ.add(b, c)) == QQ.add(QQ.mul(a, b), QQ.mul(a, c))
    if a != 0:
        assert QQ.mul(a, QQ.inv(a)) == 1
