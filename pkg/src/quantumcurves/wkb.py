"""All-order WKB expansion for order-2 quantum curves, plus a quarantined
numeric self-consistency oracle for the Airy operator.

The exponent recursion: S_0' = ±sqrt(q), 2 S_0' S_1' + S_0'' = 0, and

    S_{m+1}' = -( S_m'' + sum_{a+b=m+1, 1<=a,b<=m} S_a' S_b' ) / (2 S_0')

for m >= 1.  Everything here is exact Puiseux arithmetic except
`airy_selfconsistency`, which is the only floating-point code in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .errors import DomainError
from .exactnum import RadicalScalar
from .multipoly import MPoly
from .puiseux import PuiseuxSeries


@dataclass(frozen=True)
class WkbExpansion:
    branch: int  # +1 or -1
    terms: Tuple[PuiseuxSeries, ...]  # S_0 .. S_M
    order: int

    def term(self, m: int) -> PuiseuxSeries:
        return self.terms[m]


def wkb_expand(q: PuiseuxSeries, branch: int, order: int) -> WkbExpansion:
    """S_0..S_order for (ħ d/dx)^2 - q; branch picks the sign of sqrt(q).

    For a non-monomial q a finite truncation order must be carried by q
    itself (`q.truncated(...)`), otherwise the square root has no exact
    finite representation.
    """
    if branch not in (+1, -1):
        raise DomainError("branch must be +1 or -1")
    if order < 0:
        raise DomainError("order must be >= 0")
    if q.is_zero():
        raise DomainError("identically-zero potential has no WKB expansion")
    s0_prime = q.sqrt().scaled(branch)
    inv_2s0 = (s0_prime.scaled(2)).reciprocal()
    s_primes: List[PuiseuxSeries] = [s0_prime]
    s_terms: List[PuiseuxSeries] = [s0_prime.integrate()]
    if order >= 1:
        # S_1 = -(1/2) log S_0', with the constant of integration dropped
        s1 = s0_prime.log().scaled(Fraction(-1, 2))
        s_terms.append(s1)
        s_primes.append(s1.derive())
    for m in range(1, order):
        total = s_primes[m].derive()
        for a in range(1, m + 1):
            b = m + 1 - a
            if 1 <= b <= m:
                total = total + s_primes[a] * s_primes[b]
        nxt = (-total) * inv_2s0
        s_primes.append(nxt)
        s_terms.append(nxt.integrate())
    return WkbExpansion(branch, tuple(s_terms), order)


def plugback_residual(q: PuiseuxSeries, expansion: WkbExpansion) -> List[PuiseuxSeries]:
    """Coefficients of ħ^0..ħ^M in ħ²F'' + ħ²(F')² - q for F = Σ ħ^(m-1) S_m.

    All entries must vanish identically (within the tracked truncation) when
    the expansion satisfies the exponent recursion.
    """
    M = expansion.order
    primes = [s.derive() for s in expansion.terms]
    seconds = [p.derive() for p in primes]
    out: List[PuiseuxSeries] = []
    for k in range(M + 1):
        acc = PuiseuxSeries.zero()
        if k >= 1:
            acc = acc + seconds[k - 1]
        for a in range(0, k + 1):
            b = k - a
            if a <= M and b <= M:
                acc = acc + primes[a] * primes[b]
        if k == 0:
            acc = acc - q
        out.append(acc)
    return out


def wkb_expand_z(h: MPoly, s2_in_z: MPoly, order: int) -> List[MPoly]:
    """S_2..S_order as Laurent polynomials in the normalization coordinate z.

    Implements the z-side recursion
        S_{m+1}' = -(1/(2h)) (S_m'' + sum_{a+b=m+1, a,b>=2} S_a' S_b')
                   - (1/(2h))' S_m'
    seeded with S_2; h must be a Laurent monomial so that 1/(2h) stays in
    the ring.
    """
    if order < 2:
        raise DomainError("order must be >= 2")
    if h.nvars != 1 or s2_in_z.nvars != 1:
        raise DomainError("expected univariate Laurent data")
    if len(h.terms) != 1:
        raise DomainError("1/(2h) is only exact for a monomial h")
    (he,), hc = next(iter(h.terms.items()))
    inv2h = MPoly.monomial(1, (-he,), Fraction(1, 2) / hc)
    inv2h_prime = inv2h.partial(0)
    terms: List[MPoly] = [s2_in_z]
    primes: List[MPoly] = [s2_in_z.partial(0)]

    def prime(m: int) -> MPoly:
        return primes[m - 2]

    for m in range(2, order):
        total = prime(m).partial(0)
        for a in range(2, m):
            b = m + 1 - a
            if 2 <= b <= m and a <= b:
                prod = prime(a) * prime(b)
                total = total + (prod if a == b else prod * 2)
        nxt = -(inv2h * total) - inv2h_prime * prime(m)
        primes.append(nxt)
        terms.append(nxt.integrate_from_zero(0))
    return terms


# ---------------------------------------------------------------------------
# numeric oracle (the only floating-point code in the package)
# ---------------------------------------------------------------------------


def _radical_to_float(c: RadicalScalar) -> float:
    return sum(float(coef) * math.sqrt(m) for m, coef in c.terms.items())


def _eval_series(s: PuiseuxSeries, x: float) -> float:
    total = 0.0
    for e, c in s.exponent_items():
        total += _radical_to_float(c) * x ** float(e)
    if s.has_log():
        total += _radical_to_float(s.log_coefficient) * math.log(x)
    return total


def airy_selfconsistency(order: int, x_eval, x_anchor) -> float:
    """Integrate psi'' = x psi from x_anchor down to x_eval with initial data
    from the order-M WKB sum (decaying branch, ħ = 1); return the relative
    deviation from the WKB value at x_eval."""
    from scipy.integrate import solve_ivp

    x_eval = float(x_eval)
    x_anchor = float(x_anchor)
    if not 0 < x_eval <= x_anchor:
        raise DomainError("need 0 < x_eval <= x_anchor")
    q = PuiseuxSeries.x_power(1)
    expansion = wkb_expand(q, branch=-1, order=order)
    primes = [s.derive() for s in expansion.terms]

    def wkb_log(x: float) -> float:
        return sum(_eval_series(s, x) for s in expansion.terms)

    def wkb_dlog(x: float) -> float:
        return sum(_eval_series(p, x) for p in primes)

    if x_eval == x_anchor:
        return 0.0
    psi0 = math.exp(wkb_log(x_anchor))
    dpsi0 = wkb_dlog(x_anchor) * psi0
    sol = solve_ivp(
        lambda x, y: [y[1], x * y[0]],
        (x_anchor, x_eval),
        [psi0, dpsi0],
        method="DOP853",
        rtol=1e-12,
        atol=1e-300,
        dense_output=True,
    )
    if not sol.success:
        raise DomainError(f"integrator failed: {sol.message}")
    psi_numeric = float(sol.sol(x_eval)[0])
    psi_wkb = math.exp(wkb_log(x_eval))
    return abs(psi_numeric - psi_wkb) / abs(psi_wkb)
