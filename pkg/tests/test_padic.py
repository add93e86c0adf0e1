from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from plectic.errors import PrimeMismatch
from plectic.padic import (
    PadicScalar,
    QuadExtScalar,
    default_nonsquare,
    deserialize_padic,
    ext_frobenius,
    padic_add,
    padic_inv,
    padic_mul,
    precision_policy,
    serialize_padic,
)

P = 5


def q5(x, n=4):
    return PadicScalar.from_rational(P, Fraction(x), n)


nonzero_rationals = st.builds(
    lambda n, d, k: Fraction(n, d) * Fraction(P) ** k,
    st.integers(-10**6, 10**6).filter(bool),
    st.integers(1, 10**4),
    st.integers(-4, 4),
)


def test_add_carries_into_valuation():
    s = padic_add(q5(2), q5(3))
    assert s.valuation == 1
    assert s.digits()[0] == 1
    assert s.precision == 3


def test_add_zero_is_identity():
    x = q5(17)
    assert padic_add(x, PadicScalar.zero(P, 10)) == x


def test_perturbation_below_precision_vanishes():
    assert padic_add(q5(1), q5(P**4)).digits() == [1, 0, 0, 0]


def test_mul_expands_base_five():
    assert padic_mul(q5(13), q5(3)).digits() == [4, 2, 1, 0]


def test_mul_identity_and_valuation():
    x = q5(Fraction(7, 3))
    assert padic_mul(x, q5(1)) == x
    sq = padic_mul(q5(5), q5(5))
    assert sq.valuation == 2
    assert sq.digits()[0] == 1


def test_inverse_of_two():
    inv = padic_inv(q5(2))
    assert inv.digits() == [3, 2, 2, 2]
    assert (2 * inv.unit) % P**4 == 1


def test_inverse_of_one():
    assert padic_inv(q5(1)) == q5(1)


def test_serialize_example():
    assert serialize_padic(q5(39)) == '{"digits":[4,2,1,0],"precision":4,"valuation":0}'


def test_serialize_zero():
    assert serialize_padic(PadicScalar.zero(P, 4)) == '{"digits":[],"precision":4,"valuation":"inf"}'


def test_mixed_primes_refused():
    with pytest.raises(PrimeMismatch):
        q5(1) + PadicScalar.from_rational(7, 1, 4)


@given(nonzero_rationals)
def test_roundtrip_serialization(a):
    x = PadicScalar.from_rational(P, a)
    assert deserialize_padic(P, serialize_padic(x)) == x


@given(nonzero_rationals)
def test_inverse_is_involution(a):
    x = PadicScalar.from_rational(P, a)
    assert padic_inv(padic_inv(x)) == x


@given(nonzero_rationals, nonzero_rationals)
def test_valuation_is_additive(a, b):
    x, y = PadicScalar.from_rational(P, a), PadicScalar.from_rational(P, b)
    assert padic_mul(x, y).valuation == x.valuation + y.valuation


@given(nonzero_rationals, nonzero_rationals)
def test_arithmetic_matches_rationals(a, b):
    # rational arithmetic is the oracle
    n = 30
    with precision_policy(working=n):
        x, y = PadicScalar.from_rational(P, a), PadicScalar.from_rational(P, b)
        assert padic_mul(x, y) == PadicScalar.from_rational(P, a * b)
        if a + b != 0:
            s = padic_add(x, y)
            exact = PadicScalar.from_rational(P, a + b)
            assert s.agreement(exact) >= s.precision


def _ext(a, b, n=20):
    return QuadExtScalar(PadicScalar.from_rational(P, a, n), PadicScalar.from_rational(P, b, n), default_nonsquare(P))


def test_frobenius_fixes_base_field():
    z = _ext(Fraction(3, 7), 0)
    assert ext_frobenius(z) == z


def test_frobenius_negates_generator():
    w = _ext(0, 1)
    assert ext_frobenius(w) == -w


@given(st.integers(-500, 500), st.integers(-500, 500).filter(bool))
def test_frobenius_has_order_two(a, b):
    z = _ext(a, b)
    assert ext_frobenius(ext_frobenius(z)) == z
