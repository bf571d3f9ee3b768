"""Exact scalars: Q-linear combinations of square roots, and polynomials in hbar.

A RadicalScalar is an element of the ring Q[sqrt(m) : m squarefree].  This ring
is closed under multiplication (sqrt(m)*sqrt(m') reduces through the gcd) and
under inversion (repeated conjugation, one prime at a time), so it is in fact
a field.  It is exactly where the entries sqrt(s_i s_{i+1} ...) of the
principal sl(2) matrices live.

HPoly is a dense univariate polynomial in the formal parameter hbar with
RadicalScalar coefficients.  No floating point appears anywhere in this module.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Tuple, Union

from .errors import DomainError, InternalInconsistencyError

RationalLike = Union[int, Fraction]


def normalize_radicand(n: int) -> Tuple[int, int]:
    """Split n >= 1 as n = square_root_part**2 * squarefree_part."""
    if n < 1:
        raise DomainError(f"radicand must be a positive integer, got {n}")
    square, free = 1, 1
    d = 2
    m = n
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            square *= d ** (e // 2)
            if e % 2:
                free *= d
        d += 1 if d == 2 else 2
    free *= m
    return square, free


def _is_squarefree(n: int) -> bool:
    return n >= 1 and normalize_radicand(n)[0] == 1


class RadicalScalar:
    """Exact number sum(coef_m * sqrt(m)) with squarefree radicands m."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[int, RationalLike] | None = None):
        clean: Dict[int, Fraction] = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c == 0:
                continue
            if not _is_squarefree(m):
                raise DomainError(f"radicand {m} is not squarefree")
            clean[m] = clean.get(m, Fraction(0)) + c
        self.terms = {m: c for m, c in clean.items() if c != 0}

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rational(cls, c: RationalLike) -> "RadicalScalar":
        return cls({1: Fraction(c)})

    @classmethod
    def sqrt_int(cls, n: int) -> "RadicalScalar":
        """Exact sqrt(n) for a positive integer n."""
        square, free = normalize_radicand(n)
        return cls({free: Fraction(square)})

    @classmethod
    def zero(cls) -> "RadicalScalar":
        return cls({})

    @classmethod
    def one(cls) -> "RadicalScalar":
        return cls({1: Fraction(1)})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(m == 1 for m in self.terms)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise InternalInconsistencyError(f"radical residue in {self}")
        return self.terms.get(1, Fraction(0))

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "RadicalScalar":
        if isinstance(other, RadicalScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return RadicalScalar.from_rational(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return RadicalScalar(terms)

    __radd__ = __add__

    def __neg__(self):
        return RadicalScalar({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: Dict[int, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                square, free = normalize_radicand(m1 * m2)
                terms[free] = terms.get(free, Fraction(0)) + c1 * c2 * square
        return RadicalScalar(terms)

    __rmul__ = __mul__

    def inverse(self) -> "RadicalScalar":
        """Multiplicative inverse by conjugating away one prime at a time."""
        if self.is_zero():
            raise DomainError("division by zero RadicalScalar")
        a = self
        num = RadicalScalar.one()
        while not a.is_rational():
            p = None
            for m in a.terms:
                if m > 1:
                    d = 2
                    while m % d:
                        d += 1
                    p = d
                    break
            assert p is not None
            conj = RadicalScalar(
                {m: (-c if m % p == 0 else c) for m, c in a.terms.items()}
            )
            num = num * conj
            a = a * conj
        r = a.terms.get(1, Fraction(0))
        if r == 0:
            raise InternalInconsistencyError("rationalized denominator is zero")
        return num * RadicalScalar.from_rational(Fraction(1) / r)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = RadicalScalar.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- serialization and display ------------------------------------------

    def to_json(self) -> List[dict]:
        return [
            {"coef": str(Fraction(c)), "radicand": m}
            for m, c in sorted(self.terms.items())
        ]

    @classmethod
    def from_json(cls, data: Iterable[dict]) -> "RadicalScalar":
        return cls({item["radicand"]: Fraction(item["coef"]) for item in data})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            if m == 1:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"sqrt({m})")
            elif c == -1:
                parts.append(f"-sqrt({m})")
            else:
                parts.append(f"{c}*sqrt({m})")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    __repr__ = __str__


RAD_ZERO = RadicalScalar.zero()
RAD_ONE = RadicalScalar.one()


def sqrt_product(values: Iterable[int]) -> RadicalScalar:
    """sqrt of a product of positive integers, reduced."""
    prod = 1
    for v in values:
        prod *= v
    return RadicalScalar.sqrt_int(prod)


class HPoly:
    """Dense polynomial in hbar over RadicalScalar; highest coefficient nonzero."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RadicalScalar | RationalLike] = ()):
        cs = [
            c if isinstance(c, RadicalScalar) else RadicalScalar.from_rational(c)
            for c in coeffs
        ]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = cs

    @classmethod
    def from_scalar(cls, c) -> "HPoly":
        return cls([c])

    @classmethod
    def hbar(cls, power: int = 1) -> "HPoly":
        return cls([RAD_ZERO] * power + [RAD_ONE])

    @classmethod
    def zero(cls) -> "HPoly":
        return cls()

    @classmethod
    def one(cls) -> "HPoly":
        return cls([RAD_ONE])

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> RadicalScalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else RAD_ZERO

    def at_zero(self) -> RadicalScalar:
        """Evaluate at hbar = 0."""
        return self.coeff(0)

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    @staticmethod
    def _coerce(other):
        if isinstance(other, HPoly):
            return other
        if isinstance(other, (int, Fraction, RadicalScalar)):
            return HPoly.from_scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return HPoly([self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return HPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return HPoly.zero()
        out = [RAD_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return HPoly(out)

    __rmul__ = __mul__

    def shift_down(self, k: int) -> "HPoly":
        """Exact division by hbar**k."""
        if any(not c.is_zero() for c in self.coeffs[:k]):
            raise InternalInconsistencyError(
                f"HPoly {self} is not divisible by hbar^{k}"
            )
        return HPoly(self.coeffs[k:])

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(hash(c) for c in self.coeffs))

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            h = "" if k == 0 else ("ħ" if k == 1 else f"ħ^{k}")
            cs = str(c)
            if k == 0:
                parts.append(cs)
            elif cs == "1":
                parts.append(h)
            elif cs == "-1":
                parts.append(f"-{h}")
            else:
                parts.append(f"{cs}*{h}" if ("+" not in cs and " - " not in cs) else f"({cs})*{h}")
        return " + ".join(parts)

    __repr__ = __str__
