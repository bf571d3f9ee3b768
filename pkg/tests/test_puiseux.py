import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import fractions
from quantumcurves.errors import DomainError
from quantumcurves.exactnum import RadicalScalar
from quantumcurves.puiseux import PuiseuxSeries


def series(pairs, log=0, trunc=math.inf):
    return PuiseuxSeries.from_exponent_map(
        {Fraction(e): c for e, c in pairs.items()}, log, trunc
    )


def small_series():
    exponents = st.sampled_from(
        [Fraction(k, d) for d in (1, 2, 3) for k in range(-4, 7)]
    )
    return st.builds(
        lambda pairs: series(dict(pairs)),
        st.lists(st.tuples(exponents, fractions()), min_size=0, max_size=4),
    )


def test_derive_examples():
    assert series({Fraction(3, 2): 1}).derive() == series({Fraction(1, 2): Fraction(3, 2)})
    assert PuiseuxSeries.log_x(Fraction(-1, 4)).derive() == series({-1: Fraction(-1, 4)})
    assert PuiseuxSeries.constant(7).derive().is_zero()


def test_integrate_examples():
    assert series({Fraction(1, 2): 1}).integrate() == series(
        {Fraction(3, 2): Fraction(2, 3)}
    )
    assert series({-1: 1}).integrate() == PuiseuxSeries.log_x(1)
    assert series({Fraction(-5, 2): Fraction(-5, 32)}).integrate() == series(
        {Fraction(-3, 2): Fraction(5, 48)}
    )


def test_integrate_rejects_log():
    with pytest.raises(DomainError):
        PuiseuxSeries.log_x(1).integrate()


@given(small_series())
def test_derive_integrate_identity(s):
    # restrict to series with no exponent -1 term and no log term
    cleaned = series(
        {e: c for e, c in s.exponent_items() if e != -1},
    )
    assert cleaned.integrate().derive() == cleaned


@given(small_series(), small_series(), st.integers(0, 8))
def test_truncation_propagation(a, b, order):
    t = Fraction(order)
    at = a.truncated(t)
    total = at + b
    assert total.truncation == min(at.truncation, b.truncation)
    for e, _ in total.exponent_items():
        assert e < total.truncation
    if at.terms and b.terms:
        prod = at * b
        expected = min(
            at.truncation + b.low_exponent(), b.truncation + at.low_exponent()
        )
        assert prod.truncation == expected
        for e, _ in prod.exponent_items():
            assert e < prod.truncation


def test_sqrt_monomial_and_branch_denominator():
    s = series({1: 1}).sqrt()
    assert s == series({Fraction(1, 2): 1})
    assert s.branch_denominator == 2


def test_sqrt_series_with_radical_extension():
    q = (PuiseuxSeries.constant(2) + PuiseuxSeries.x_power(1)).truncated(6)
    root = q.sqrt()
    square = root * root
    diff = square - q
    assert diff.is_zero()
    lead = root.coeff(Fraction(0))
    assert lead == RadicalScalar.sqrt_int(2)


def test_sqrt_rejects_stacked_radicals():
    q = PuiseuxSeries.x_power(1, RadicalScalar.sqrt_int(2))
    with pytest.raises(DomainError):
        q.sqrt()


def test_sqrt_requires_truncation_for_series():
    q = PuiseuxSeries.constant(1) + PuiseuxSeries.x_power(1)
    with pytest.raises(DomainError):
        q.sqrt()


def test_reciprocal():
    s = series({1: 2}).reciprocal()
    assert s == series({-1: Fraction(1, 2)})
    q = (PuiseuxSeries.constant(1) + PuiseuxSeries.x_power(1)).truncated(5)
    inv = q.reciprocal()
    assert (q * inv - PuiseuxSeries.constant(1)).is_zero()


def test_log_of_monomial():
    s = series({Fraction(1, 2): -1}).log()
    assert s.log_coefficient == RadicalScalar.from_rational(Fraction(1, 2))
    assert not s.terms


def test_mul_with_log_raises():
    with pytest.raises(DomainError):
        PuiseuxSeries.log_x(1) * series({1: 1})
