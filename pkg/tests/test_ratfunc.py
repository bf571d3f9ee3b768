from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import fractions
from quantumcurves.errors import DomainError
from quantumcurves.exactnum import RadicalScalar
from quantumcurves.ratfunc import (
    Polynomial,
    RationalFunction,
    parse_rational_function,
    squarefree_decomposition,
)


def poly(*coeffs):
    return Polynomial(list(coeffs))


def test_divmod_and_gcd():
    p = poly(-1, 0, 1)  # x^2 - 1
    d = poly(-1, 1)  # x - 1
    q, r = p.divmod(d)
    assert q == poly(1, 1) and r.is_zero()
    assert p.gcd(d) == poly(-1, 1)


def test_gcd_is_monic_over_radicals():
    r2 = RadicalScalar.sqrt_int(2)
    p = poly(0, r2) * poly(1, 1)  # sqrt(2) x (x + 1)
    q = poly(0, 2) * poly(1, 1)
    g = p.gcd(q)
    assert g == poly(0, 1) * poly(1, 1)  # monic x(x+1)


def test_rational_function_reduces():
    f = RationalFunction(poly(-1, 0, 1), poly(-1, 1))  # (x^2-1)/(x-1)
    assert f.is_polynomial()
    assert f.num == poly(1, 1)


def test_rational_function_derivative():
    f = RationalFunction(poly(0, 1), poly(1, 1))  # x/(x+1)
    df = f.derivative()
    assert df == RationalFunction(poly(1), poly(1, 1) * poly(1, 1))


@given(fractions(), fractions())
def test_eval_matches_horner(a, b):
    p = poly(a, b, 1)
    x = Fraction(3, 2)
    assert p.eval(x) == RadicalScalar.from_rational(a + b * x + x * x)


def test_squarefree_decomposition():
    # x^2 (x+1)^3 (x^2+1)
    p = poly(0, 1) ** 2 * poly(1, 1) ** 3 * poly(1, 0, 1)
    out = squarefree_decomposition(p)
    assert (poly(1, 0, 1), 1) in out
    assert (poly(0, 1), 2) in out
    assert (poly(1, 1), 3) in out


def test_parse_rational_function():
    f = parse_rational_function("(x^2 + 1)/x - 2")
    assert f == RationalFunction(poly(1, -2, 1), poly(0, 1))
    with pytest.raises(DomainError):
        parse_rational_function("x + ")
    with pytest.raises(DomainError):
        parse_rational_function("y")
