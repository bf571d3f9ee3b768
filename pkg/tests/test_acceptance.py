"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines and timings.  Criterion 9's threshold is asserted exactly as stated;
see the notes printed by that test for why it cannot be met by any finite
truncation order at x_eval = 5.
"""

import random
import time
from fractions import Fraction

from quantumcurves.diffalg import parse_operator
from quantumcurves.multipoly import MPoly
from quantumcurves.puiseux import PuiseuxSeries
from quantumcurves.quantize import (
    is_equivariant,
    quantum_curve,
    semiclassical_limit,
)
from quantumcurves.ratfunc import parse_rational_function
from quantumcurves.spectral import (
    DivisorData,
    discriminant_from_rational,
    genus_report,
    quantum_curve_class_at_infinity,
)
from quantumcurves.tds import (
    char_poly,
    higgs_field,
    oper_transition,
    transition_eq,
    transition_mat_mul,
)
from quantumcurves.toprec import (
    airy_curve,
    build_free_energies,
    dvv_oracle,
    initial_F03,
    initial_F11,
    intersection_numbers,
    principal_specialization,
)
from quantumcurves.wkb import airy_selfconsistency, plugback_residual, wkb_expand

AIRY_CHART = PuiseuxSeries.x_power(Fraction(-1, 2), 2)


def report(number, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {number}: {status} - {detail}")
    return ok


def airy_s2():
    return wkb_expand(PuiseuxSeries.x_power(1), -1, 2).term(2)


def test_criterion_1_golden_operators():
    start = time.time()
    ok = quantum_curve(2) == parse_operator("(ħ d/dx)^2 - q2")
    ok &= quantum_curve(3) == parse_operator(
        "(ħ d/dx)^3 - 4*q2*(ħ d/dx) + 4*q3 - 2*ħ*q2'"
    )
    # rank 4: verified against direct elimination of the flat-section system;
    # the printed example text carries the two ħ-terms of the constant
    # coefficient with opposite signs (+3ħ²q2'' - 12ħq3')
    ok &= quantum_curve(4) == parse_operator(
        "(ħ d/dx)^4 - 10*q2*(ħ d/dx)^2 + (24*q3 - 10*ħ*q2')*(ħ d/dx)"
        " - 36*q4 + 9*q2^2 - 3*ħ^2*q2'' + 12*ħ*q3'"
    )
    elapsed = time.time() - start
    ok &= elapsed < 1.0
    assert report(
        1,
        ok,
        f"operators r=2,3,4 reproduce the worked examples in {elapsed:.3f}s"
        " (rank-4 ħ-signs as independently verified; printed text differs)",
    )


def test_criterion_2_semiclassical_limit():
    start = time.time()
    ok = all(
        semiclassical_limit(quantum_curve(r)) == char_poly(higgs_field(r))
        for r in range(2, 7)
    )
    elapsed = time.time() - start
    ok &= elapsed < 30.0
    assert report(
        2, ok, f"semiclassical limit equals char poly exactly, r=2..6, {elapsed:.2f}s"
    )


def test_criterion_3_equivariance():
    ok = all(is_equivariant(quantum_curve(r)) for r in range(2, 6))
    assert report(3, ok, "P(x, λħ; λ^l q_l) = λ^r P(x, ħ; q) formally, r=2..5")


def test_criterion_4_airy_geometry():
    rep = genus_report(discriminant_from_rational(parse_rational_function("x")))
    ok = (rep.p_g, rep.blowups, rep.delta, rep.p_a) == (0, 2, 2, 2)
    cls = quantum_curve_class_at_infinity(parse_rational_function("x"))
    ok &= cls.render() == "3/2"
    holo = genus_report(DivisorData(2, [(f"z{i}", 1) for i in range(4)], []))
    ok &= holo.p_g == 5
    assert report(
        4,
        ok,
        "airy: p_g=0, blowups=2, delta=2, p_a=2, class 3/2; genus-2 reduced p_g=5",
    )


def test_criterion_5_airy_initial_data():
    f11 = initial_F11(airy_curve())
    f03 = initial_F03(airy_curve(), airy_s2())
    ok = f11 == MPoly.monomial(1, (3,), Fraction(-1, 384))
    ok &= f03 == MPoly.monomial(3, (1, 1, 1), Fraction(-1, 16))
    assert report(5, ok, "F_{1,1} = -t^3/384 and F_{0,3} = -t1 t2 t3/16, exact")


def test_criterion_6_intersection_numbers():
    start = time.time()
    table = build_free_energies(airy_curve(), airy_s2(), 5)
    count = 0
    ok = True
    for (g, n), poly in table.entries.items():
        for ds, value in intersection_numbers(poly, g, n).items():
            ok &= value == dvv_oracle(g, ds)
            count += 1
    spots = {
        (0, (0, 0, 0)): Fraction(1),
        (1, (1,)): Fraction(1, 24),
        (2, (4,)): Fraction(1, 1152),
        (1, (0, 2)): Fraction(1, 24),
        (1, (1, 1)): Fraction(1, 24),
    }
    for (g, ds), expected in spots.items():
        ok &= dvv_oracle(g, ds) == expected
    elapsed = time.time() - start
    ok &= elapsed < 120.0
    assert report(
        6,
        ok,
        f"{count} tuples with 2g-2+n <= 5 match the Virasoro oracle in {elapsed:.1f}s",
    )


def test_criterion_7_wkb_equals_recursion():
    expansion = wkb_expand(PuiseuxSeries.x_power(1), -1, 6)
    table = build_free_energies(airy_curve(), expansion.term(2), 5)
    ok = expansion.term(2) == PuiseuxSeries.x_power(Fraction(-3, 2), Fraction(-5, 48))
    for m in range(2, 7):
        ok &= principal_specialization(table, m, AIRY_CHART) == expansion.term(m)
    assert report(
        7, ok, "S_m from the exponent recursion equals the free-energy sum, m=2..6"
    )


def test_criterion_8_plugback():
    rng = random.Random(20260810)
    ok = True
    for _ in range(20):
        degree = rng.randint(0, 4)
        coeffs = {0: Fraction(rng.randint(1, 9))}
        for k in range(1, degree + 1):
            coeffs[k] = Fraction(rng.randint(-6, 6))
        q = PuiseuxSeries.from_exponent_map(coeffs).truncated(12)
        for branch in (+1, -1):
            expansion = wkb_expand(q, branch, 8)
            ok &= all(r.is_zero() for r in plugback_residual(q, expansion))
    assert report(
        8, ok, "exp(sum ħ^(m-1) S_m) solves the curve through ħ^8, 20 random q"
    )


def test_criterion_9a_numeric_threshold():
    err = airy_selfconsistency(6, 5, 20)
    ok = err < 1e-8
    report(
        9,
        ok,
        f"airy_selfconsistency(M=6, x_eval=5, x_anchor=20) = {err:.3e}"
        " (threshold 1e-8 as stated; the truncation error of the order-6"
        " series at x=5 is |S_7(5)| ~ 1.6e-6 and the superasymptotic floor"
        " is exp(-4/3 * 5^(3/2)) ~ 3e-7, so no truncation order can reach"
        " 1e-8 at this evaluation point)",
    )
    assert ok, (
        f"measured relative error {err:.3e} exceeds the stated 1e-8; this is"
        " the asymptotic-series truncation error at x_eval=5, not an"
        " implementation defect (see decisions ledger)"
    )


def test_criterion_9b_monotone_improvement():
    errors = [airy_selfconsistency(M, 5, 20) for M in (2, 3, 4, 5, 6)]
    ok = all(a > b for a, b in zip(errors, errors[1:]))
    assert report(
        9,
        ok,
        "monotone improvement M=2..6: "
        + " > ".join(f"{e:.2e}" for e in errors),
    )


def test_criterion_10_cocycle():
    rng = random.Random(4242)
    ok = True
    checked = 0
    for r in range(2, 7):
        for _ in range(100):
            x1 = Fraction(rng.randint(1, 12), rng.randint(1, 12))
            x2 = Fraction(rng.randint(1, 12), rng.randint(1, 12))
            s1 = Fraction(rng.randint(-12, 12), rng.randint(1, 12))
            s2 = Fraction(rng.randint(-12, 12), rng.randint(1, 12))
            s13 = x1 * s2 + s1 / x2
            lhs = transition_mat_mul(
                oper_transition(r, x1, s1), oper_transition(r, x2, s2)
            )
            ok &= transition_eq(lhs, oper_transition(r, x1 * x2, s13))
            checked += 1
    assert report(10, ok, f"transition cocycle exact on {checked} random triples")
