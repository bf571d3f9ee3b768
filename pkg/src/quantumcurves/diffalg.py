"""Differential polynomials in the spectral coefficients q_2..q_r, and
scalar differential operators over them.

A DiffVar is q_l differentiated k times.  A DiffPoly is a finite sum of
monomials in DiffVars with coefficients polynomial in hbar over the radical
field.  hbar is a constant of the derivation d/dx.

Rendering follows the operator notation "(ħ d/dx)^3 - 4*q2*(ħ d/dx) + 4*q3
- 2*ħ*q2'", and `parse_operator` accepts the same grammar back, so golden
files can round-trip.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import DomainError
from .exactnum import HPoly, RAD_ZERO, RadicalScalar
from .ratfunc import RationalFunction

# A differential variable q_l^(k); a monomial maps DiffVar -> exponent,
# canonically stored as a tuple sorted by (level, order).
DiffVar = Tuple[int, int]
Monomial = Tuple[Tuple[DiffVar, int], ...]

_EMPTY: Monomial = ()


def _check_var(level: int, order: int):
    if level < 2:
        raise DomainError(f"q-level must be >= 2, got {level}")
    if order < 0:
        raise DomainError(f"derivative order must be >= 0, got {order}")


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    d: Dict[DiffVar, int] = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _coerce_hpoly(c) -> HPoly:
    if isinstance(c, HPoly):
        return c
    if isinstance(c, (int, Fraction, RadicalScalar)):
        return HPoly.from_scalar(c)
    raise DomainError(f"cannot use {c!r} as a coefficient")


class DiffPoly:
    __slots__ = ("monomials",)

    def __init__(self, monomials: Dict[Monomial, HPoly] | None = None):
        clean: Dict[Monomial, HPoly] = {}
        for m, c in (monomials or {}).items():
            c = _coerce_hpoly(c)
            if not c.is_zero():
                clean[tuple(sorted(m))] = c
        self.monomials = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls) -> "DiffPoly":
        return cls()

    @classmethod
    def from_coeff(cls, c) -> "DiffPoly":
        return cls({_EMPTY: _coerce_hpoly(c)})

    @classmethod
    def one(cls) -> "DiffPoly":
        return cls.from_coeff(1)

    @classmethod
    def hbar(cls, power: int = 1) -> "DiffPoly":
        return cls.from_coeff(HPoly.hbar(power))

    @classmethod
    def q(cls, level: int, order: int = 0) -> "DiffPoly":
        _check_var(level, order)
        return cls({(((level, order), 1),): HPoly.one()})

    # -- predicates ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.monomials

    def is_constant(self) -> bool:
        return all(m == _EMPTY for m in self.monomials)

    def constant_coefficient(self) -> HPoly:
        return self.monomials.get(_EMPTY, HPoly.zero())

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.monomials.values())

    def max_derivative_order(self) -> int:
        orders = [v[1] for m in self.monomials for v, _ in m]
        return max(orders, default=-1)

    def levels(self) -> set:
        return {v[0] for m in self.monomials for v, _ in m}

    # -- ring operations ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "DiffPoly":
        if isinstance(other, DiffPoly):
            return other
        if isinstance(other, (int, Fraction, RadicalScalar, HPoly)):
            return DiffPoly.from_coeff(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.monomials)
        for m, c in other.monomials.items():
            out[m] = out.get(m, HPoly.zero()) + c
        return DiffPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return DiffPoly({m: -c for m, c in self.monomials.items()})

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
        out: Dict[Monomial, HPoly] = {}
        for m1, c1 in self.monomials.items():
            for m2, c2 in other.monomials.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, HPoly.zero()) + c1 * c2
        return DiffPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = DiffPoly.one()
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
        return self.monomials == other.monomials

    __hash__ = None  # type: ignore[assignment]

    # -- the derivation ------------------------------------------------------------

    def derive(self) -> "DiffPoly":
        """Leibniz derivation sending q_l^(k) to q_l^(k+1); hbar is constant."""
        out = DiffPoly.zero()
        for m, c in self.monomials.items():
            for idx, (var, e) in enumerate(m):
                level, order = var
                d: Dict[DiffVar, int] = dict(m)
                if e == 1:
                    del d[var]
                else:
                    d[var] = e - 1
                bumped = (level, order + 1)
                d[bumped] = d.get(bumped, 0) + 1
                mono = tuple(sorted(d.items()))
                out = out + DiffPoly({mono: c * Fraction(e)})
        return out

    # -- substitution -----------------------------------------------------------------

    def substitute(
        self, assignment: Dict[int, RationalFunction]
    ) -> Dict[int, RationalFunction]:
        """Replace q_l^(k) by the k-th derivative of assignment[l].

        Returns the result as a map hbar-power -> RationalFunction.
        """
        missing = self.levels() - set(assignment)
        if missing:
            raise DomainError(f"assignment missing levels {sorted(missing)}")
        var = next(iter(assignment.values())).var if assignment else "x"
        cache: Dict[DiffVar, RationalFunction] = {}

        def deriv(level: int, order: int) -> RationalFunction:
            if (level, order) in cache:
                return cache[(level, order)]
            f = assignment[level]
            for _ in range(order):
                f = f.derivative()
            cache[(level, order)] = f
            return f

        # cache successive derivatives along the way
        for level in self.levels():
            cache[(level, 0)] = assignment[level]

        out: Dict[int, RationalFunction] = {}
        for m, c in self.monomials.items():
            value = RationalFunction.constant(1, var)
            for (level, order), e in m:
                value = value * deriv(level, order) ** e
            for p in range(c.degree() + 1):
                coef = c.coeff(p)
                if coef.is_zero():
                    continue
                term = value * RationalFunction.constant(coef, var)
                out[p] = out.get(p, RationalFunction.constant(0, var)) + term
        return {p: f for p, f in out.items() if not f.is_zero()}

    # -- grading ------------------------------------------------------------------------

    def lambda_components(self) -> Dict[int, "DiffPoly"]:
        """Split by weight under hbar -> L*hbar, q_l^(k) -> L^l * q_l^(k)."""
        out: Dict[int, DiffPoly] = {}
        for m, c in self.monomials.items():
            base = sum(level * e for (level, _), e in m)
            for p in range(c.degree() + 1):
                coef = c.coeff(p)
                if coef.is_zero():
                    continue
                w = base + p
                piece = DiffPoly({m: HPoly([RAD_ZERO] * p + [coef])})
                out[w] = out.get(w, DiffPoly.zero()) + piece
        return out

    def weighted_degree(self) -> Optional[int]:
        """Common weight of all monomials, or None if inhomogeneous."""
        weights = set(self.lambda_components())
        if len(weights) == 1:
            return weights.pop()
        return None

    # -- hbar manipulation -----------------------------------------------------------------

    def at_hbar_zero(self) -> "DiffPoly":
        return DiffPoly(
            {m: HPoly.from_scalar(c.at_zero()) for m, c in self.monomials.items()}
        )

    def divide_hbar(self, k: int) -> "DiffPoly":
        """Exact division by hbar**k."""
        return DiffPoly({m: c.shift_down(k) for m, c in self.monomials.items()})

    # -- display ------------------------------------------------------------------------

    def render(self) -> str:
        return _render_sum(self._render_terms())

    def _render_terms(self) -> List[str]:
        parts: List[str] = []
        for m in sorted(self.monomials, key=_mono_sort_key):
            c = self.monomials[m]
            for p in range(c.degree() + 1):
                coef = c.coeff(p)
                if coef.is_zero():
                    continue
                parts.append(_render_term(coef, p, m))
        return parts

    def __str__(self):
        return self.render()

    __repr__ = __str__


def _mono_sort_key(m: Monomial):
    degree = sum(e for _, e in m)
    return (degree, m)


def _render_scalar(c: RadicalScalar) -> str:
    s = str(c)
    if ("+" in s) or (" - " in s):
        return f"({s})"
    return s


def _render_term(coef: RadicalScalar, hpow: int, mono: Monomial) -> str:
    factors: List[str] = []
    if hpow == 1:
        factors.append("ħ")
    elif hpow > 1:
        factors.append(f"ħ^{hpow}")
    for (level, order), e in mono:
        name = f"q{level}" + "'" * order
        factors.append(name if e == 1 else f"{name}^{e}")
    cs = _render_scalar(coef)
    if not factors:
        return cs
    body = "*".join(factors)
    if cs == "1":
        return body
    if cs == "-1":
        return f"-{body}"
    return f"{cs}*{body}"


def _render_sum(parts: List[str]) -> str:
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


class YPoly:
    """Polynomial in the fiber variable y with DiffPoly coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[DiffPoly] = ()):
        cs = [c if isinstance(c, DiffPoly) else DiffPoly._coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = cs

    @classmethod
    def y(cls, power: int = 1) -> "YPoly":
        return cls([DiffPoly.zero()] * power + [DiffPoly.one()])

    @classmethod
    def constant(cls, c) -> "YPoly":
        return cls([DiffPoly._coerce(c)])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> DiffPoly:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else DiffPoly.zero()

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        if not isinstance(other, YPoly):
            other = YPoly.constant(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return YPoly([self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return YPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, YPoly):
            other = YPoly.constant(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, YPoly):
            other = YPoly.constant(other)
        if self.is_zero() or other.is_zero():
            return YPoly()
        out = [DiffPoly.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return YPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, YPoly):
            other = YPoly.constant(other)
        return self.coeffs == other.coeffs

    __hash__ = None  # type: ignore[assignment]

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    def render(self) -> str:
        parts: List[str] = []
        for k in range(self.degree(), -1, -1):
            c = self.coeff(k)
            if c.is_zero():
                continue
            ys = "" if k == 0 else ("y" if k == 1 else f"y^{k}")
            body = c._render_terms()
            if not ys:
                parts.extend(body)
            elif len(body) == 1 and body[0] == "1":
                parts.append(ys)
            elif len(body) == 1 and body[0] == "-1":
                parts.append(f"-{ys}")
            elif len(body) == 1:
                parts.append(f"{body[0]}*{ys}")
            else:
                parts.append(f"({_render_sum(body)})*{ys}")
        return _render_sum(parts)

    def __str__(self):
        return self.render()

    __repr__ = __str__


@dataclass(frozen=True)
class ScalarOperator:
    """Order-r operator sum_j a_j (ħ d/dx)^j, a_r = 1 after normalization.

    The coefficient of the bare (d/dx)^j is a_j * hbar^j; both views are
    exposed (`coeffs` holds a_j, `d_dx_coefficient` returns the other one).
    """

    order: int
    coeffs: Tuple[DiffPoly, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise DomainError("coefficient count must be order + 1")

    def leading(self) -> DiffPoly:
        return self.coeffs[self.order]

    def d_dx_coefficient(self, j: int) -> DiffPoly:
        """Coefficient of (d/dx)^j, i.e. hbar^j * a_j."""
        return DiffPoly.hbar(j) * self.coeffs[j]

    def render(self) -> str:
        parts: List[str] = []
        for j in range(self.order, -1, -1):
            a = self.coeffs[j]
            if a.is_zero():
                continue
            dop = "" if j == 0 else ("(ħ d/dx)" if j == 1 else f"(ħ d/dx)^{j}")
            body = a._render_terms()
            if not dop:
                parts.extend(body)
            elif len(body) == 1 and body[0] == "1":
                parts.append(dop)
            elif len(body) == 1 and body[0] == "-1":
                parts.append(f"-{dop}")
            elif len(body) == 1:
                parts.append(f"{body[0]}*{dop}")
            else:
                parts.append(f"({_render_sum(body)})*{dop}")
        return _render_sum(parts)

    def __str__(self):
        return self.render()


# -- parser -----------------------------------------------------------------------


class _Token:
    def __init__(self, kind: str, value=None):
        self.kind = kind
        self.value = value

    def __repr__(self):
        return f"{self.kind}:{self.value}"


def _tokenize(text: str) -> List[_Token]:
    tokens: List[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if text.startswith("(ħ d/dx)", i):
            i += len("(ħ d/dx)")
            tokens.append(_Token("DOP"))
            continue
        if text.startswith("(hbar d/dx)", i):
            i += len("(hbar d/dx)")
            tokens.append(_Token("DOP"))
            continue
        if ch in "+-*^()":
            tokens.append(_Token(ch))
            i += 1
            continue
        if ch == "ħ":
            tokens.append(_Token("HBAR"))
            i += 1
            continue
        if text.startswith("hbar", i):
            tokens.append(_Token("HBAR"))
            i += 4
            continue
        if text.startswith("sqrt", i):
            j = i + 4
            if j >= n or text[j] != "(":
                raise DomainError("sqrt must be followed by (m)")
            k = text.index(")", j)
            tokens.append(_Token("SQRT", int(text[j + 1 : k])))
            i = k + 1
            continue
        if ch == "y":
            tokens.append(_Token("Y"))
            i += 1
            continue
        if ch == "q":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise DomainError("q must carry a level")
            level = int(text[i + 1 : j])
            order = 0
            while j < n and text[j] == "'":
                order += 1
                j += 1
            tokens.append(_Token("QVAR", (level, order)))
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            num = int(text[i:j])
            if j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
                k = j + 1
                while k < n and text[k].isdigit():
                    k += 1
                tokens.append(_Token("NUM", Fraction(num, int(text[j + 1 : k]))))
                i = k
            else:
                tokens.append(_Token("NUM", Fraction(num)))
                i = j
            continue
        raise DomainError(f"cannot tokenize {text[i:]!r}")
    return tokens


class _OpParser:
    """Parses sums of products of NUM, SQRT, HBAR^k, QVAR^k, DOP^k, Y^k."""

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def _peek(self) -> Optional[_Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self) -> _Token:
        tok = self._peek()
        if tok is None:
            raise DomainError("unexpected end of operator string")
        self.pos += 1
        return tok

    def parse_terms(self) -> List[Tuple[DiffPoly, str, int]]:
        """Returns (coefficient DiffPoly, kind in {'', 'dop', 'y'}, power)."""
        terms = []
        sign = 1
        tok = self._peek()
        if tok and tok.kind in ("+", "-"):
            self._next()
            sign = -1 if tok.kind == "-" else 1
        while True:
            terms.append(self._term(sign))
            tok = self._peek()
            if tok is None:
                return terms
            if tok.kind not in ("+", "-"):
                raise DomainError(f"expected + or - at {tok}")
            self._next()
            sign = -1 if tok.kind == "-" else 1

    def _power_suffix(self) -> int:
        tok = self._peek()
        if tok and tok.kind == "^":
            self._next()
            num = self._next()
            if num.kind != "NUM" or num.value.denominator != 1:
                raise DomainError("exponent must be an integer")
            return int(num.value)
        return 1

    def _term(self, sign: int) -> Tuple[DiffPoly, str, int]:
        coef = DiffPoly.from_coeff(Fraction(sign))
        kind = ""
        power = 0
        expect_factor = True
        while expect_factor:
            tok = self._next()
            if tok.kind == "NUM":
                coef = coef * Fraction(tok.value)
            elif tok.kind == "SQRT":
                coef = coef * RadicalScalar.sqrt_int(tok.value)
            elif tok.kind == "HBAR":
                coef = coef * DiffPoly.hbar(self._power_suffix())
            elif tok.kind == "QVAR":
                level, order = tok.value
                coef = coef * (DiffPoly.q(level, order) ** self._power_suffix())
            elif tok.kind == "DOP":
                kind = "dop"
                power = self._power_suffix()
            elif tok.kind == "Y":
                kind = "y"
                power = self._power_suffix()
            elif tok.kind == "(":
                coef = coef * self._paren_sum()
            else:
                raise DomainError(f"unexpected token {tok}")
            nxt = self._peek()
            if nxt and nxt.kind == "*":
                self._next()
                expect_factor = True
            else:
                expect_factor = False
        return coef, kind, power

    def _paren_sum(self) -> DiffPoly:
        """A parenthesized sum of coefficient terms; the '(' is consumed."""
        total = DiffPoly.zero()
        sign = 1
        tok = self._peek()
        if tok and tok.kind in ("+", "-"):
            self._next()
            sign = -1 if tok.kind == "-" else 1
        while True:
            coef, kind, _ = self._term(sign)
            if kind:
                raise DomainError(
                    "operator factors are not allowed inside coefficient parentheses"
                )
            total = total + coef
            tok = self._next()
            if tok.kind == ")":
                return total
            if tok.kind not in ("+", "-"):
                raise DomainError(f"expected + or - inside parentheses, got {tok}")
            sign = -1 if tok.kind == "-" else 1


def parse_operator(text: str) -> ScalarOperator:
    terms = _OpParser(text).parse_terms()
    order = 0
    for _, kind, power in terms:
        if kind == "y":
            raise DomainError("operator string contains y")
        if kind == "dop":
            order = max(order, power)
    coeffs = [DiffPoly.zero() for _ in range(order + 1)]
    for coef, kind, power in terms:
        j = power if kind == "dop" else 0
        coeffs[j] = coeffs[j] + coef
    return ScalarOperator(order, tuple(coeffs))


def parse_ypoly(text: str) -> YPoly:
    terms = _OpParser(text).parse_terms()
    degree = 0
    for _, kind, power in terms:
        if kind == "dop":
            raise DomainError("polynomial string contains (ħ d/dx)")
        if kind == "y":
            degree = max(degree, power)
    coeffs = [DiffPoly.zero() for _ in range(degree + 1)]
    for coef, kind, power in terms:
        k = power if kind == "y" else 0
        coeffs[k] = coeffs[k] + coef
    return YPoly(coeffs)
