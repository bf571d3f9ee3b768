from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import nonzero_radical_scalars, radical_scalars
from quantumcurves.errors import DomainError
from quantumcurves.exactnum import (
    HPoly,
    RadicalScalar,
    normalize_radicand,
    sqrt_product,
)


def test_normalize_radicand_examples():
    assert normalize_radicand(1) == (1, 1)
    assert normalize_radicand(12) == (2, 3)
    assert normalize_radicand(36) == (6, 1)


def test_normalize_radicand_rejects_zero():
    with pytest.raises(DomainError):
        normalize_radicand(0)


@given(st.integers(1, 100), st.sampled_from([1, 2, 3, 5, 6, 7, 10, 15]))
def test_normalize_radicand_splits_square(p, q):
    assert normalize_radicand(p * p * q) == (p, q)


def test_radical_mul_examples():
    r2 = RadicalScalar.sqrt_int(2)
    r3 = RadicalScalar.sqrt_int(3)
    assert r2 * r2 == RadicalScalar.from_rational(2)
    assert r2 * r3 == RadicalScalar.sqrt_int(6)
    one = RadicalScalar.one()
    assert (one + r3) * (one - r3) == RadicalScalar.from_rational(-2)


def test_sqrt_product_reduces():
    # sqrt(3 * 4 * 3) = 6
    assert sqrt_product([3, 4, 3]) == RadicalScalar.from_rational(6)


@given(radical_scalars(), radical_scalars(), radical_scalars())
def test_field_axioms_associativity_distributivity(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) + c == a + (b + c)


@given(nonzero_radical_scalars())
def test_field_inverse(a):
    assert a * a.inverse() == RadicalScalar.one()


@given(radical_scalars())
def test_json_round_trip(a):
    assert RadicalScalar.from_json(a.to_json()) == a


def test_json_shape():
    a = RadicalScalar({1: Fraction(1, 2), 2: Fraction(-3)})
    assert a.to_json() == [
        {"coef": "1/2", "radicand": 1},
        {"coef": "-3", "radicand": 2},
    ]


def test_radicand_must_be_squarefree():
    with pytest.raises(DomainError):
        RadicalScalar({4: Fraction(1)})


def test_hpoly_arithmetic():
    h = HPoly.hbar()
    p = h * h + 2 * h + 1
    assert p.coeff(0) == RadicalScalar.one()
    assert p.coeff(1) == RadicalScalar.from_rational(2)
    assert p.degree() == 2
    assert p.at_zero() == RadicalScalar.one()


def test_hpoly_shift_down_exact_and_error():
    p = HPoly.hbar(2) * 3
    assert p.shift_down(2) == HPoly.from_scalar(3)
    from quantumcurves.errors import InternalInconsistencyError

    with pytest.raises(InternalInconsistencyError):
        (HPoly.hbar() + 1).shift_down(1)
