"""Sparse multivariate Laurent polynomials over exact rationals.

Keys are exponent tuples (integers, negatives allowed); values are nonzero
Fractions.  This is the workhorse ring for the free-energy recursion, where
every denominator clearing must be exact.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Dict, Iterable, Tuple

from .errors import DomainError, InternalInconsistencyError

Expo = Tuple[int, ...]


class MPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Expo, Fraction] | None = None):
        self.nvars = nvars
        clean: Dict[Expo, Fraction] = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise DomainError(f"exponent tuple {e} has wrong arity")
            c = Fraction(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> "MPoly":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def monomial(cls, nvars: int, expo: Expo, c=1) -> "MPoly":
        return cls(nvars, {tuple(expo): Fraction(c)})

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> "MPoly":
        e = [0] * nvars
        e[i] = power
        return cls.monomial(nvars, tuple(e))

    # -- basic ring ops ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.nvars, other)
        if self.nvars != other.nvars:
            raise DomainError("arity mismatch")
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return MPoly.const(self.nvars, other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MPoly(
                self.nvars, {e: c * Fraction(other) for e, c in self.terms.items()}
            )
        if self.nvars != other.nvars:
            raise DomainError("arity mismatch")
        out: Dict[Expo, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MPoly(self.nvars, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.nvars, other)
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    # -- calculus ------------------------------------------------------------

    def partial(self, i: int) -> "MPoly":
        out: Dict[Expo, Fraction] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            key = tuple(ne)
            out[key] = out.get(key, Fraction(0)) + c * e[i]
        return MPoly(self.nvars, out)

    def integrate_from_zero(self, i: int) -> "MPoly":
        """Antiderivative in variable i with F(...,0,...) = 0.

        Terms must have exponent != -1 in variable i (a residue obstruction),
        and no negative exponents survive the 'integrate from zero' convention.
        """
        out: Dict[Expo, Fraction] = {}
        for e, c in self.terms.items():
            if e[i] == -1:
                raise InternalInconsistencyError(
                    f"residue term (exponent -1 in variable {i}) cannot be integrated"
                )
            ne = list(e)
            ne[i] += 1
            out[tuple(ne)] = c / (e[i] + 1)
        return MPoly(self.nvars, out)

    # -- variable plumbing -----------------------------------------------------

    def permute_vars(self, perm: Iterable[int]) -> "MPoly":
        """Send variable i of the result to variable perm[i] of self."""
        perm = tuple(perm)
        out: Dict[Expo, Fraction] = {}
        for e, c in self.terms.items():
            ne = [0] * self.nvars
            for i, p in enumerate(perm):
                ne[i] = e[p]
            key = tuple(ne)
            out[key] = out.get(key, Fraction(0)) + c
        return MPoly(self.nvars, out)

    def map_vars(self, targets: Iterable[int], new_nvars: int) -> "MPoly":
        """Substitute variable i of self by variable targets[i] of a new ring.

        Several source variables may map to the same target (diagonal maps).
        """
        targets = tuple(targets)
        out: Dict[Expo, Fraction] = {}
        for e, c in self.terms.items():
            ne = [0] * new_nvars
            for i, t in enumerate(targets):
                ne[t] += e[i]
            key = tuple(ne)
            out[key] = out.get(key, Fraction(0)) + c
        return MPoly(new_nvars, out)

    def diagonal(self) -> "MPoly":
        """Specialize all variables to a single one."""
        return self.map_vars([0] * self.nvars, 1)

    def eval_fraction(self, values: Iterable[Fraction]) -> Fraction:
        values = [Fraction(v) for v in values]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                term *= v**k
            total += term
        return total

    # -- structure checks ------------------------------------------------------

    def total_degrees(self) -> set:
        return {sum(e) for e in self.terms}

    def is_symmetric(self) -> bool:
        groups: Dict[Expo, Dict[Expo, Fraction]] = {}
        for e, c in self.terms.items():
            groups.setdefault(tuple(sorted(e)), {})[e] = c
        for key, members in groups.items():
            orbit = set(permutations(key))
            if len(members) != len(orbit):
                return False
            vals = set(members.values())
            if len(vals) != 1:
                return False
        return True

    def symmetrized(self) -> "MPoly":
        out: Dict[Expo, Fraction] = {}
        groups: Dict[Expo, Fraction] = {}
        for e, c in self.terms.items():
            key = tuple(sorted(e))
            groups[key] = groups.get(key, Fraction(0)) + c
        for key, total in groups.items():
            orbit = set(permutations(key))
            share = total / len(orbit)
            for arr in orbit:
                out[arr] = out.get(arr, Fraction(0)) + share
        return MPoly(self.nvars, out)

    # -- division ---------------------------------------------------------------

    def mul_monomial(self, expo: Expo, c=1) -> "MPoly":
        return MPoly(
            self.nvars,
            {
                tuple(a + b for a, b in zip(e, expo)): cc * Fraction(c)
                for e, cc in self.terms.items()
            },
        )

    def divide_exact_linear(self, i: int, j: int, sign: int) -> "MPoly":
        """Exact division by (z_i + sign * z_j); raises on a nonzero remainder.

        Requires non-negative exponents in variable i.
        """
        rem: Dict[Expo, Fraction] = dict(self.terms)
        quo: Dict[Expo, Fraction] = {}
        while rem:
            e = max(rem, key=lambda t: (t[i], t))
            if e[i] < 1:
                raise InternalInconsistencyError(
                    "nonzero remainder in exact division by a linear form"
                )
            c = rem.pop(e)
            qe = list(e)
            qe[i] -= 1
            quo[tuple(qe)] = quo.get(tuple(qe), Fraction(0)) + c
            se = list(qe)
            se[j] += 1
            se = tuple(se)
            newc = rem.get(se, Fraction(0)) - sign * c
            if newc:
                rem[se] = newc
            else:
                rem.pop(se, None)
        return MPoly(self.nvars, quo)

    def divide_exact_z2_diff(self, i: int, j: int) -> "MPoly":
        """Exact division by (z_i**2 - z_j**2)."""
        return self.divide_exact_linear(i, j, -1).divide_exact_linear(i, j, +1)

    # -- display ------------------------------------------------------------------

    def render(self, names: Iterable[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = list(names) if names else [f"t{i+1}" for i in range(self.nvars)]
        if self.nvars == 1 and names == ["t1"]:
            names = ["t"]
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = []
            for name, k in zip(names, e):
                if k == 0:
                    continue
                factors.append(name if k == 1 else f"{name}^{k}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __str__(self):
        return self.render()

    __repr__ = __str__
