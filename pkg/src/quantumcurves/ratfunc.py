"""Univariate polynomials and reduced rational functions over RadicalScalar."""

from __future__ import annotations

from typing import Iterable, List, Tuple

from .errors import DomainError
from .exactnum import RAD_ZERO, RadicalScalar

Scalar = RadicalScalar


def _coerce_scalar(c) -> Scalar:
    if isinstance(c, RadicalScalar):
        return c
    return RadicalScalar.from_rational(c)


class Polynomial:
    """Dense univariate polynomial over the radical field, in a named variable."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        cs = [_coerce_scalar(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = cs
        self.var = var

    @classmethod
    def constant(cls, c, var: str = "x") -> "Polynomial":
        return cls([c], var)

    @classmethod
    def x(cls, var: str = "x") -> "Polynomial":
        return cls([0, 1], var)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def coeff(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else RAD_ZERO

    def leading(self) -> Scalar:
        if self.is_zero():
            raise DomainError("leading coefficient of the zero polynomial")
        return self.coeffs[-1]

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    def _check_var(self, other: "Polynomial"):
        if self.var != other.var and not (self.is_zero() or other.is_zero()):
            raise DomainError(f"variable mismatch: {self.var} vs {other.var}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.var)
        self._check_var(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self.coeff(i) + other.coeff(i) for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.var)
        return self + (-other)

    def __rsub__(self, other):
        return Polynomial.constant(other, self.var) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.var)
        self._check_var(other)
        if self.is_zero() or other.is_zero():
            return Polynomial([], self.var)
        out = [RAD_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Polynomial.constant(1, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: "Polynomial") -> Tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise DomainError("polynomial division by zero")
        self._check_var(other)
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial([], self.var), self
        quo = [RAD_ZERO] * (dq + 1)
        inv_lead = other.leading().inverse()
        for k in range(dq, -1, -1):
            c = rem[k + other.degree()] * inv_lead
            quo[k] = c
            if not c.is_zero():
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return Polynomial(quo, self.var), Polynomial(rem[: other.degree()], self.var)

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        inv = self.leading().inverse()
        return Polynomial([c * inv for c in self.coeffs], self.var)

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic Euclidean gcd over the radical field."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero() else a

    def derivative(self) -> "Polynomial":
        return Polynomial(
            [self.coeffs[k] * k for k in range(1, len(self.coeffs))], self.var
        )

    def eval(self, value):
        acc = RAD_ZERO
        for c in reversed(self.coeffs):
            acc = acc * _coerce_scalar(value) + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.var)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((tuple(hash(c) for c in self.coeffs), self.var))

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree(), -1, -1):
            c = self.coeff(k)
            if c.is_zero():
                continue
            cs = str(c)
            if k == 0:
                parts.append(cs)
                continue
            xs = self.var if k == 1 else f"{self.var}^{k}"
            if cs == "1":
                parts.append(xs)
            elif cs == "-1":
                parts.append(f"-{xs}")
            elif "+" in cs or " - " in cs:
                parts.append(f"({cs})*{xs}")
            else:
                parts.append(f"{cs}*{xs}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    __repr__ = __str__


class RationalFunction:
    """num/den over the radical field, stored reduced with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = Polynomial.constant(1, num.var)
        if den.is_zero():
            raise DomainError("rational function with zero denominator")
        g = num.gcd(den)
        if not g.is_zero() and g.degree() > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lead_inv = den.leading().inverse()
        self.num = num * Polynomial.constant(lead_inv, num.var)
        self.den = den * Polynomial.constant(lead_inv, den.var)

    @classmethod
    def constant(cls, c, var: str = "x") -> "RationalFunction":
        return cls(Polynomial.constant(c, var))

    @classmethod
    def x(cls, var: str = "x") -> "RationalFunction":
        return cls(Polynomial.x(var))

    @property
    def var(self) -> str:
        return self.num.var if not self.num.is_zero() else self.den.var

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree() == 0

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.constant(other, self.var)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.constant(other, self.var)
        return self + (-other)

    def __rsub__(self, other):
        return RationalFunction.constant(other, self.var) - self

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.constant(other, self.var)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.constant(other, self.var)
        if other.is_zero():
            raise DomainError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RationalFunction.constant(other, self.var) / self

    def __pow__(self, n: int):
        if n < 0:
            return (RationalFunction.constant(1, self.var) / self) ** (-n)
        return RationalFunction(self.num**n, self.den**n)

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def eval(self, value):
        d = self.den.eval(value)
        if d.is_zero():
            raise DomainError(f"pole at {value}")
        return self.num.eval(value) * d.inverse()

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.constant(other, self.var)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        ns, ds = str(self.num), str(self.den)
        if "+" in ns or " - " in ns or "*" in ns:
            ns = f"({ns})"
        if "+" in ds or " - " in ds or "*" in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    __repr__ = __str__


def squarefree_decomposition(p: Polynomial) -> List[Tuple[Polynomial, int]]:
    """Yun's algorithm: p = lc * prod f_i^i with the f_i squarefree, coprime."""
    if p.is_zero():
        raise DomainError("squarefree decomposition of zero")
    p = p.monic()
    out: List[Tuple[Polynomial, int]] = []
    if p.degree() == 0:
        return out
    d = p.derivative()
    a = p.gcd(d)
    b = p.divmod(a)[0]
    c = d.divmod(a)[0]
    z = c - b.derivative()
    i = 1
    while b.degree() > 0:
        f = b.gcd(z)
        if f.degree() > 0:
            out.append((f, i))
        b = b.divmod(f)[0]
        z = z.divmod(f)[0] - b.derivative()
        i += 1
    return out


# -- parsing of rational-function strings for the CLI -----------------------


class _RatParser:
    """Recursive descent for '+ - * / ^ ( )' over integers, fractions and x."""

    def __init__(self, text: str, var: str):
        self.text = text
        self.pos = 0
        self.var = var

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> RationalFunction:
        value = self._expr()
        self._skip()
        if self.pos != len(self.text):
            raise DomainError(f"unexpected input at {self.text[self.pos:]!r}")
        return value

    def _expr(self) -> RationalFunction:
        sign = 1
        while self._peek() in ("+", "-"):
            if self.text[self.pos] == "-":
                sign = -sign
            self.pos += 1
        value = self._term() * sign
        while self._peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self._term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _term(self) -> RationalFunction:
        value = self._factor()
        while self._peek() in ("*", "/"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self._factor()
            value = value * rhs if op == "*" else value / rhs
        return value

    def _factor(self) -> RationalFunction:
        base = self._atom()
        if self._peek() == "^":
            self.pos += 1
            neg = False
            if self._peek() == "-":
                neg = True
                self.pos += 1
            n = self._integer()
            base = base ** (-n if neg else n)
        return base

    def _atom(self) -> RationalFunction:
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            value = self._expr()
            if self._peek() != ")":
                raise DomainError("unbalanced parenthesis")
            self.pos += 1
            return value
        if ch == self.var:
            self.pos += 1
            return RationalFunction.x(self.var)
        if ch.isdigit():
            n = self._integer()
            return RationalFunction.constant(n, self.var)
        raise DomainError(f"cannot parse {self.text[self.pos:]!r}")

    def _integer(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise DomainError("expected an integer")
        return int(self.text[start : self.pos])


def parse_rational_function(text: str, var: str = "x") -> RationalFunction:
    return _RatParser(text, var).parse()
