"""Geometry of degree-2 spectral curves: discriminant divisor, genus counts,
blow-up schedule, local normalization charts, and singularity classes.

Points are opaque labels; all the published formulas consume multiplicities
only, so roots are never located beyond a squarefree factorization over Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .errors import DomainError, InternalInconsistencyError
from .ratfunc import RationalFunction, squarefree_decomposition

PointList = List[Tuple[str, int]]


@dataclass(frozen=True)
class DivisorData:
    """Zeros and poles (with multiplicity) of a quadratic differential on a
    base of genus g; the degree balance sum(m) - sum(n) = 4g - 4 is enforced."""

    base_genus: int
    zeros: PointList
    poles: PointList

    def __post_init__(self):
        if self.base_genus < 0:
            raise DomainError("base genus must be >= 0")
        if any(m <= 0 for _, m in self.zeros) or any(n <= 0 for _, n in self.poles):
            raise DomainError("multiplicities must be positive")
        balance = sum(m for _, m in self.zeros) - sum(n for _, n in self.poles)
        if balance != 4 * self.base_genus - 4:
            raise DomainError(
                f"degree balance {balance} != 4g-4 = {4*self.base_genus-4}:"
                " malformed divisor data"
            )


@dataclass(frozen=True)
class GenusReport:
    a: int
    p_a: int
    delta: int
    p_g: int
    blowups: int


@dataclass(frozen=True)
class SingularityClass:
    kind: str  # "regular" | "irregular"
    klass: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind == "irregular" and (self.klass is None or self.klass <= 0):
            raise DomainError("irregular class must be positive")

    def render(self) -> str:
        return "regular" if self.kind == "regular" else str(self.klass)


def discriminant_from_rational(
    q: RationalFunction, include_infinity: bool = True
) -> DivisorData:
    """Divisor of the quadratic differential q(x) (dx)^2 on the projective line.

    The point at infinity enters through dx = -u^(-2) du, which shifts the
    order of q there by -4.
    """
    if q.is_zero():
        raise DomainError("discriminant of the zero differential")
    if not (q.num.is_rational() and q.den.is_rational()):
        raise DomainError("rational-coefficient input required for factorization")
    zeros: PointList = []
    poles: PointList = []
    for f, mult in squarefree_decomposition(q.num):
        for root_index in range(f.degree()):
            zeros.append((f"{f} (root {root_index + 1})", mult))
    for f, mult in squarefree_decomposition(q.den):
        for root_index in range(f.degree()):
            poles.append((f"{f} (root {root_index + 1})", mult))
    if include_infinity:
        order_at_infinity = q.den.degree() - q.num.degree() - 4
        if order_at_infinity > 0:
            zeros.append(("∞", order_at_infinity))
        elif order_at_infinity < 0:
            poles.append(("∞", -order_at_infinity))
    return DivisorData(0, zeros, poles)


def genus_report(d: DivisorData) -> GenusReport:
    g = d.base_genus
    a = sum(n for _, n in d.poles)
    p_a = 4 * g - 3 + a
    delta = sum(1 for _, m in d.zeros if m % 2) + sum(1 for _, n in d.poles if n % 2)
    if delta % 2:
        raise InternalInconsistencyError("delta must be even given the degree balance")
    p_g = 2 * g - 1 + delta // 2
    if p_g < 0:
        raise DomainError(
            "negative geometric genus: the spectral curve would be reducible"
        )
    # Riemann-Hurwitz restated: 2 - 2 p_g = 2(2 - 2g) - delta
    if 2 - 2 * p_g != 2 * (2 - 2 * g) - delta:
        raise InternalInconsistencyError("Riemann-Hurwitz consistency failed")
    blowups = sum(m // 2 for _, m in d.zeros) + sum(n // 2 for _, n in d.poles)
    return GenusReport(a=a, p_a=p_a, delta=delta, p_g=p_g, blowups=blowups)


@dataclass(frozen=True)
class NormalizationChart:
    """Local double cover x ~ z^2, y ~ z^-(2*mu+1), Galois action z -> -z."""

    order: int
    mu: int
    x_exponent: int
    y_exponent: int
    galois: str = "z -> -z"
    airy_x: Optional[str] = None
    airy_y: Optional[str] = None


def normalization_chart(order: int) -> NormalizationChart:
    if order < 1 or order % 2 == 0:
        raise DomainError(
            f"order {order} is even: the curve germ splits into two sheets"
        )
    mu = (order - 1) // 2
    chart = NormalizationChart(
        order=order,
        mu=mu,
        x_exponent=2,
        y_exponent=-(2 * mu + 1),
        airy_x="4/t^2" if mu == 2 else None,
        airy_y="-2/t" if mu == 2 else None,
    )
    return chart


PoleOrder = Union[int, None]  # None encodes an identically-zero coefficient


def singularity_class(k: PoleOrder, ell: PoleOrder) -> SingularityClass:
    """Newton-polygon class of psi'' + a_1 psi' + a_2 psi = 0 at a pole,
    where k and ell are the pole orders of a_1 and a_2 (None if absent)."""
    k_small = k is None or k <= 1
    ell_small = ell is None or ell <= 2
    if k_small and ell_small:
        return SingularityClass("regular")
    if k is None:
        r = Fraction(ell, 2)
    elif ell is None:
        r = Fraction(k)
    else:
        r = Fraction(k) if 2 * k >= ell else Fraction(ell, 2)
    if r <= 1:
        return SingularityClass("regular")
    return SingularityClass("irregular", r - 1)


def quantum_curve_class_at_infinity(q: RationalFunction) -> SingularityClass:
    """Singularity class at x = infinity of psi'' = q psi (written at u = 1/x,
    where a_1 = 2/u has a simple pole and a_2 has the pole order of q (dx)^2)."""
    if q.is_zero():
        raise DomainError("zero potential")
    order_at_infinity = q.den.degree() - q.num.degree() - 4
    if order_at_infinity >= 0:
        return singularity_class(1, None)
    return singularity_class(1, -order_at_infinity)


def odd_point_charts(d: DivisorData) -> List[NormalizationChart]:
    """Normalization charts at every odd zero or pole of the discriminant."""
    charts = []
    for _, m in d.zeros:
        if m % 2:
            charts.append(normalization_chart(m))
    for _, n in d.poles:
        if n % 2:
            charts.append(normalization_chart(n))
    return charts
