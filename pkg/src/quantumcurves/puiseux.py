"""Truncated Puiseux series in one variable with an optional log term.

A series is a finite sum  sum_k c_k * x^(k/d)  plus  L * log(x), where d is
the branch denominator and the coefficients live in the radical field.  Which
branch of x^(1/d) is meant is the caller's choice; nothing here depends on it.

Truncation bookkeeping: `truncation` is an exponent bound (a Fraction, or
math.inf for exact values).  Coefficients at exponents >= truncation are never
stored, and every operation propagates the weakest bound of its operands.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Tuple, Union

from .errors import DomainError
from .exactnum import RAD_ZERO, RadicalScalar

Exponent = Fraction
TruncT = Union[Fraction, float]  # Fraction or math.inf


def _coerce_scalar(c) -> RadicalScalar:
    if isinstance(c, RadicalScalar):
        return c
    return RadicalScalar.from_rational(c)


class PuiseuxSeries:
    __slots__ = ("branch_denominator", "terms", "log_coefficient", "truncation")

    def __init__(
        self,
        branch_denominator: int = 1,
        terms: Dict[int, RadicalScalar] | None = None,
        log_coefficient=0,
        truncation: TruncT = math.inf,
    ):
        if branch_denominator < 1:
            raise DomainError("branch denominator must be positive")
        d = branch_denominator
        clean = {}
        for k, c in (terms or {}).items():
            c = _coerce_scalar(c)
            if c.is_zero():
                continue
            if Fraction(k, d) >= truncation:
                continue
            clean[k] = c
        # reduce the branch denominator when possible
        g = d
        for k in clean:
            g = gcd(g, abs(k))
            if g == 1:
                break
        if g > 1 and clean:
            clean = {k // g: c for k, c in clean.items()}
            d = d // g
        elif not clean:
            d = 1
        self.branch_denominator = d
        self.terms = clean
        self.log_coefficient = _coerce_scalar(log_coefficient)
        self.truncation = truncation

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, truncation: TruncT = math.inf) -> "PuiseuxSeries":
        return cls(1, {}, 0, truncation)

    @classmethod
    def constant(cls, c, truncation: TruncT = math.inf) -> "PuiseuxSeries":
        return cls(1, {0: _coerce_scalar(c)}, 0, truncation)

    @classmethod
    def x_power(cls, e, coef=1, truncation: TruncT = math.inf) -> "PuiseuxSeries":
        e = Fraction(e)
        return cls(e.denominator, {e.numerator: _coerce_scalar(coef)}, 0, truncation)

    @classmethod
    def log_x(cls, coef=1) -> "PuiseuxSeries":
        return cls(1, {}, coef)

    @classmethod
    def from_exponent_map(
        cls, pairs: Dict, log_coefficient=0, truncation: TruncT = math.inf
    ) -> "PuiseuxSeries":
        d = 1
        fr = {Fraction(e): c for e, c in pairs.items()}
        for e in fr:
            d = d * e.denominator // gcd(d, e.denominator)
        return cls(
            d,
            {int(e * d): _coerce_scalar(c) for e, c in fr.items()},
            log_coefficient,
            truncation,
        )

    # -- inspection ----------------------------------------------------------

    def exponent_items(self) -> Iterable[Tuple[Fraction, RadicalScalar]]:
        d = self.branch_denominator
        return sorted(((Fraction(k, d), c) for k, c in self.terms.items()))

    def coeff(self, e) -> RadicalScalar:
        e = Fraction(e)
        k = e * self.branch_denominator
        if k.denominator != 1:
            return RAD_ZERO
        return self.terms.get(int(k), RAD_ZERO)

    def has_log(self) -> bool:
        return not self.log_coefficient.is_zero()

    def is_zero(self) -> bool:
        return not self.terms and not self.has_log()

    def is_monomial(self) -> bool:
        return len(self.terms) == 1 and not self.has_log()

    def low_exponent(self) -> Fraction:
        if not self.terms:
            raise DomainError("lowest exponent of an empty series")
        return Fraction(min(self.terms), self.branch_denominator)

    def truncated(self, order: TruncT) -> "PuiseuxSeries":
        return PuiseuxSeries(
            self.branch_denominator,
            dict(self.terms),
            self.log_coefficient,
            min(self.truncation, order),
        )

    # -- ring operations -----------------------------------------------------

    @staticmethod
    def _coerce(other) -> "PuiseuxSeries":
        if isinstance(other, PuiseuxSeries):
            return other
        if isinstance(other, (int, Fraction, RadicalScalar)):
            return PuiseuxSeries.constant(other)
        return NotImplemented  # type: ignore[return-value]

    def _aligned(self, other: "PuiseuxSeries"):
        d = self.branch_denominator * other.branch_denominator // gcd(
            self.branch_denominator, other.branch_denominator
        )
        f1 = d // self.branch_denominator
        f2 = d // other.branch_denominator
        return d, {k * f1: c for k, c in self.terms.items()}, {
            k * f2: c for k, c in other.terms.items()
        }

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d, t1, t2 = self._aligned(other)
        for k, c in t2.items():
            t1[k] = t1.get(k, RAD_ZERO) + c
        return PuiseuxSeries(
            d,
            t1,
            self.log_coefficient + other.log_coefficient,
            min(self.truncation, other.truncation),
        )

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries(
            self.branch_denominator,
            {k: -c for k, c in self.terms.items()},
            -self.log_coefficient,
            self.truncation,
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scaled(self, c) -> "PuiseuxSeries":
        c = _coerce_scalar(c)
        return PuiseuxSeries(
            self.branch_denominator,
            {k: v * c for k, v in self.terms.items()},
            self.log_coefficient * c,
            self.truncation,
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RadicalScalar)):
            return self.scaled(other)
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        if self.has_log() or other.has_log():
            # log x times anything non-constant leaves the ring
            if other.is_zero() or self.is_zero():
                return PuiseuxSeries.zero(min(self.truncation, other.truncation))
            raise DomainError("product with a log term is outside the series ring")
        d, t1, t2 = self._aligned(other)
        trunc = min(
            (self.truncation + other.low_exponent()) if other.terms else math.inf,
            (other.truncation + self.low_exponent()) if self.terms else math.inf,
        )
        out: Dict[int, RadicalScalar] = {}
        for k1, c1 in t1.items():
            for k2, c2 in t2.items():
                k = k1 + k2
                if Fraction(k, d) >= trunc:
                    continue
                out[k] = out.get(k, RAD_ZERO) + c1 * c2
        return PuiseuxSeries(d, out, 0, trunc)

    __rmul__ = __mul__

    # -- calculus ------------------------------------------------------------

    def derive(self) -> "PuiseuxSeries":
        """Term-wise d/dx; log x differentiates to 1/x."""
        d = self.branch_denominator
        out: Dict[int, RadicalScalar] = {}
        for k, c in self.terms.items():
            if k == 0:
                continue
            out[k - d] = out.get(k - d, RAD_ZERO) + c * Fraction(k, d)
        if self.has_log():
            out[-d] = out.get(-d, RAD_ZERO) + self.log_coefficient
        return PuiseuxSeries(d, out, 0, self.truncation - 1)

    def integrate(self) -> "PuiseuxSeries":
        """Term-wise antiderivative, zero integration constant; x^-1 -> log x."""
        if self.has_log():
            raise DomainError("cannot integrate a series containing log x")
        d = self.branch_denominator
        out: Dict[int, RadicalScalar] = {}
        log_coef = RAD_ZERO
        for k, c in self.terms.items():
            if k == -d:
                log_coef = log_coef + c
            else:
                out[k + d] = c * Fraction(d, k + d)
        return PuiseuxSeries(d, out, log_coef, self.truncation + 1)

    # -- series inverses -----------------------------------------------------

    def _split_leading(self):
        """Write self = c * x^e * (1 + u) with u of positive valuation."""
        if self.has_log():
            raise DomainError("series with log term has no multiplicative leading part")
        if not self.terms:
            raise DomainError("zero series")
        e = self.low_exponent()
        c = self.coeff(e)
        rel = PuiseuxSeries(
            self.branch_denominator,
            {k - int(e * self.branch_denominator): v * c.inverse()
             for k, v in self.terms.items()},
            0,
            self.truncation - e,
        )
        u = rel - PuiseuxSeries.constant(1, rel.truncation)
        return c, e, u

    def _geometric(self, coeff_fn) -> "PuiseuxSeries":
        """sum_k coeff_fn(k) u^k, truncated; requires finite truncation if u != 0."""
        _, _, u = self._split_leading()
        if u.is_zero():
            return PuiseuxSeries.constant(coeff_fn(0), u.truncation)
        if u.truncation == math.inf:
            raise DomainError(
                "a truncation order is required for series expansion of a non-monomial"
            )
        acc = PuiseuxSeries.constant(coeff_fn(0), u.truncation)
        power = PuiseuxSeries.constant(1, u.truncation)
        k = 0
        low = u.low_exponent()
        while k * low < u.truncation:
            k += 1
            power = power * u
            if power.is_zero():
                break
            acc = acc + power.scaled(coeff_fn(k))
        return acc

    def reciprocal(self) -> "PuiseuxSeries":
        c, e, _ = self._split_leading()
        body = self._geometric(lambda k: Fraction(-1) ** k)
        return PuiseuxSeries.x_power(-e, c.inverse()) * body

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scaled(Fraction(1, 1) / Fraction(other))
        if isinstance(other, RadicalScalar):
            return self.scaled(other.inverse())
        if isinstance(other, PuiseuxSeries):
            return self * other.reciprocal()
        return NotImplemented

    def sqrt(self) -> "PuiseuxSeries":
        """Square root on the chosen branch.

        The leading coefficient must be a positive rational; its root may
        introduce a single radical, and the branch denominator may double.
        """
        c, e, _ = self._split_leading()
        if not c.is_rational():
            raise DomainError(
                "sqrt would stack radicals: leading coefficient is already irrational"
            )
        cf = c.as_fraction()
        if cf <= 0:
            raise DomainError("sqrt of a series with non-positive leading coefficient")
        root = RadicalScalar.sqrt_int(cf.numerator) * RadicalScalar.sqrt_int(
            cf.denominator
        ) * Fraction(1, cf.denominator)

        def binom_half(k: int) -> Fraction:
            out = Fraction(1)
            for i in range(k):
                out *= Fraction(1, 2) - i
            return out / math.factorial(k)

        body = self._geometric(binom_half)
        return PuiseuxSeries.x_power(e / 2, root) * body

    def log(self) -> "PuiseuxSeries":
        """log of the series, discarding the constant log(leading coefficient).

        Returns e*log(x) + log(1+u) for self = c x^e (1+u); the additive
        constant only rescales exp(S), so it is dropped.
        """
        _, e, _ = self._split_leading()
        body = self._geometric(
            lambda k: Fraction(0) if k == 0 else Fraction((-1) ** (k + 1), k)
        )
        return body + PuiseuxSeries.log_x(e)

    def pow_int(self, n: int) -> "PuiseuxSeries":
        if n < 0:
            return self.reciprocal().pow_int(-n)
        out = PuiseuxSeries.constant(1, self.truncation if n else math.inf)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- comparison and display ----------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (
            dict(self.exponent_items()) == dict(other.exponent_items())
            and self.log_coefficient == other.log_coefficient
        )

    __hash__ = None  # type: ignore[assignment]

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        if self.has_log():
            lc = str(self.log_coefficient)
            parts.append(f"{lc}*log(x)" if lc not in ("1", "-1") else ("log(x)" if lc == "1" else "-log(x)"))
        for e, c in self.exponent_items():
            cs = str(c)
            if "+" in cs or " - " in cs:
                cs = f"({cs})"
            if e == 0:
                parts.append(cs)
            else:
                xs = "x" if e == 1 else f"x^({e})" if e.denominator != 1 or e < 0 else f"x^{e}"
                parts.append(xs if cs == "1" else f"-{xs}" if cs == "-1" else f"{cs}*{xs}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    __repr__ = __str__
