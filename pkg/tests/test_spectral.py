from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quantumcurves.errors import DomainError
from quantumcurves.ratfunc import parse_rational_function
from quantumcurves.spectral import (
    DivisorData,
    discriminant_from_rational,
    genus_report,
    normalization_chart,
    odd_point_charts,
    quantum_curve_class_at_infinity,
    singularity_class,
)


def P1_divisor(zeros, poles):
    return DivisorData(0, zeros, poles)


def test_discriminant_examples():
    d = discriminant_from_rational(parse_rational_function("x"))
    assert d.zeros == [("x (root 1)", 1)]
    assert d.poles == [("∞", 5)]

    d3 = discriminant_from_rational(parse_rational_function("x^3"))
    assert d3.zeros == [("x (root 1)", 3)]
    assert d3.poles == [("∞", 7)]

    d1 = discriminant_from_rational(parse_rational_function("1"))
    assert d1.zeros == []
    assert d1.poles == [("∞", 4)]


def test_discriminant_quadratic_factor_counts_two_points():
    d = discriminant_from_rational(parse_rational_function("x^2 + 1"))
    assert sorted(m for _, m in d.zeros) == [1, 1]
    assert d.poles == [("∞", 6)]


def test_discriminant_rejects_zero():
    with pytest.raises(DomainError):
        discriminant_from_rational(parse_rational_function("0"))


def test_divisor_balance_enforced():
    with pytest.raises(DomainError):
        P1_divisor([("p", 1)], [])


def test_genus_report_airy():
    rep = genus_report(P1_divisor([("0", 1)], [("∞", 5)]))
    assert (rep.a, rep.p_a, rep.delta, rep.p_g, rep.blowups) == (5, 2, 2, 0, 2)


def test_genus_report_holomorphic_genus_two():
    rep = genus_report(DivisorData(2, [(f"z{i}", 1) for i in range(4)], []))
    assert rep.delta == 4
    assert rep.p_g == 5
    assert rep.p_a == 5  # equals 4g - 3 with a = 0


def test_genus_report_higher_order():
    rep = genus_report(P1_divisor([("0", 3)], [("∞", 7)]))
    assert (rep.p_a, rep.delta, rep.p_g, rep.blowups) == (4, 2, 0, 4)


def test_genus_report_rejects_reducible():
    # all-even multiplicities on genus 0: delta = 0 forces p_g = -1
    with pytest.raises(DomainError):
        genus_report(P1_divisor([("0", 2), ("1", 2)], [("∞", 4), ("2", 4)]))


@given(
    st.lists(st.integers(1, 6), min_size=0, max_size=4),
    st.integers(0, 2),
)
def test_riemann_hurwitz_consistency(zero_orders, g):
    # build a balanced divisor: one extra point soaks up the remaining degree
    zeros = [(f"p{i}", m) for i, m in enumerate(zero_orders)]
    poles = []
    need = 4 * g - 4 - sum(zero_orders)
    if need > 0:
        zeros.append(("extra", need))
    elif need < 0:
        poles.append(("extra", -need))
    d = DivisorData(g, zeros, poles)
    try:
        rep = genus_report(d)
    except DomainError:
        return  # reducible configuration
    assert 2 - 2 * rep.p_g == 2 * (2 - 2 * g) - rep.delta
    assert rep.delta % 2 == 0


def test_normalization_chart_examples():
    c5 = normalization_chart(5)
    assert (c5.x_exponent, c5.y_exponent) == (2, -5)
    assert c5.galois == "z -> -z"
    assert (c5.airy_x, c5.airy_y) == ("4/t^2", "-2/t")
    c1 = normalization_chart(1)
    assert (c1.x_exponent, c1.y_exponent) == (2, -1)
    with pytest.raises(DomainError):
        normalization_chart(4)


def test_singularity_class_examples():
    airy = singularity_class(1, 5)
    assert airy.kind == "irregular" and airy.klass == Fraction(3, 2)
    assert singularity_class(1, 2).kind == "regular"
    k34 = singularity_class(3, 4)
    assert k34.klass == Fraction(2)
    assert singularity_class(None, 2).kind == "regular"
    assert singularity_class(None, 6).klass == Fraction(2)


def test_class_at_infinity_from_potential():
    assert quantum_curve_class_at_infinity(
        parse_rational_function("x")
    ).render() == "3/2"
    assert (
        quantum_curve_class_at_infinity(parse_rational_function("x^3")).render()
        == "5/2"
    )


def test_odd_point_charts():
    d = P1_divisor([("0", 1)], [("∞", 5)])
    charts = odd_point_charts(d)
    assert [c.order for c in charts] == [1, 5]
