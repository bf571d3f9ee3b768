"""Kostant's principal three-dimensional subgroup inside sl(r), the Higgs
field on the associated section, exact characteristic polynomials, and the
transition cocycle of the hbar-deformed bundle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Tuple

from .diffalg import DiffPoly, YPoly
from .errors import DomainError, InternalInconsistencyError
from .exactnum import RAD_ONE, RAD_ZERO, RadicalScalar, sqrt_product

Matrix = List[List]  # generic: entries share one scalar type


def s_values(r: int) -> List[int]:
    """s_i = i(r-i) for i = 1..r-1."""
    return [i * (r - i) for i in range(1, r)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, m, p = len(a), len(b[0]), len(b)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for k in range(p):
                term = a[i][k] * b[k][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _zeros(r: int):
    return [[RAD_ZERO for _ in range(r)] for _ in range(r)]


@dataclass(frozen=True)
class TdsTriple:
    rank: int
    x_minus: Matrix
    x_plus: Matrix
    h: Matrix


def tds_generators(r: int) -> TdsTriple:
    """The principal sl(2) triple: x_minus has sqrt(s_i) on the subdiagonal,
    x_plus is its transpose, h = diag(r-2i+1)."""
    if r < 2:
        raise DomainError(f"rank must be >= 2, got {r}")
    s = s_values(r)
    xm = _zeros(r)
    for i in range(1, r):
        xm[i][i - 1] = RadicalScalar.sqrt_int(s[i - 1])
    xp = [[xm[j][i] for j in range(r)] for i in range(r)]
    h = _zeros(r)
    for i in range(r):
        h[i][i] = RadicalScalar.from_rational(r - 2 * (i + 1) + 1)
    return TdsTriple(r, xm, xp, h)


def xplus_power(r: int, ell: int) -> Matrix:
    """x_plus**ell via the closed form sqrt(s_i ... s_{i+ell-1}) on the
    ell-th upper diagonal, cross-checked against the actual matrix power."""
    if not 0 <= ell <= r - 1:
        raise DomainError(f"power must satisfy 0 <= ell <= r-1, got {ell}")
    s = s_values(r)
    out = _zeros(r)
    for i in range(r - ell):
        out[i][i + ell] = sqrt_product(s[i : i + ell]) if ell else RAD_ONE
    gens = tds_generators(r)
    direct = [[RAD_ONE if i == j else RAD_ZERO for j in range(r)] for i in range(r)]
    for _ in range(ell):
        direct = mat_mul(direct, gens.x_plus)
    if not mat_eq(out, direct):
        raise InternalInconsistencyError("closed form of x_plus^ell disagrees")
    return out


@dataclass(frozen=True)
class HiggsMatrix:
    rank: int
    entries: Matrix  # DiffPoly entries


def higgs_field(r: int) -> HiggsMatrix:
    """phi(q) = x_minus + sum_l q_l x_plus**(l-1), entries linear in the q_l."""
    if r < 2:
        raise DomainError(f"rank must be >= 2, got {r}")
    gens = tds_generators(r)
    entries = [[DiffPoly.from_coeff(gens.x_minus[i][j]) for j in range(r)] for i in range(r)]
    for level in range(2, r + 1):
        xp = xplus_power(r, level - 1)
        qvar = DiffPoly.q(level)
        for i in range(r):
            for j in range(r):
                if not xp[i][j].is_zero():
                    entries[i][j] = entries[i][j] + qvar * xp[i][j]
    trace = DiffPoly.zero()
    for i in range(r):
        trace = trace + entries[i][i]
    if not trace.is_zero():
        raise InternalInconsistencyError("Higgs matrix is not trace free")
    return HiggsMatrix(r, entries)


def char_poly(m: HiggsMatrix) -> YPoly:
    """det(y*I + m) by exact minor expansion; all radicals must cancel."""
    r = m.rank
    ypoly_entries = [
        [
            (YPoly.y() if i == j else YPoly([])) + YPoly.constant(m.entries[i][j])
            for j in range(r)
        ]
        for i in range(r)
    ]
    cache: Dict[Tuple[int, frozenset], YPoly] = {}

    def minor(col: int, rows: frozenset) -> YPoly:
        if col == r:
            return YPoly.constant(1)
        key = (col, rows)
        if key in cache:
            return cache[key]
        acc = YPoly([])
        ordered = sorted(rows)
        for pos, i in enumerate(ordered):
            entry = ypoly_entries[i][col]
            if entry.is_zero():
                continue
            sub = minor(col + 1, rows - {i})
            term = entry * sub
            acc = acc + (term if pos % 2 == 0 else -term)
        cache[key] = acc
        return acc

    det = minor(0, frozenset(range(r)))
    if not det.is_rational():
        raise InternalInconsistencyError(
            "radical residue in the characteristic polynomial"
        )
    return det


def oper_transition(r: int, xi, sigma) -> List[List[Dict[int, object]]]:
    """Transition matrix diag(xi^(r-2i+1)) * sum_n (ħ sigma/xi)^n x_plus^n / n!.

    The exponential truncates at n = r-1 because x_plus is nilpotent.  Entries
    are returned as maps {hbar power: scalar}; xi and sigma may be Fractions,
    RadicalScalars, or RationalFunctions (the same kind for both).  The n-th
    term carries sigma/xi, matching the sigma cocycle relation
    sigma_13 = xi_1 sigma_2 + sigma_1 / xi_2 and the rank-2 matrix
    [[xi, ħ sigma], [0, 1/xi]].
    """
    if r < 2:
        raise DomainError(f"rank must be >= 2, got {r}")
    zero = xi - xi
    if xi == zero:
        raise DomainError("transition function xi must be invertible")
    s = s_values(r)
    ratio = sigma / xi
    out: List[List[Dict[int, object]]] = [[{} for _ in range(r)] for _ in range(r)]
    for i in range(r):
        diag = xi ** (r - 2 * (i + 1) + 1)
        for n in range(0, r - i):
            j = i + n
            coef = sqrt_product(s[i : i + n]) if n else RAD_ONE
            scale = Fraction(1, factorial(n))
            if coef.is_rational():
                scalar = diag * (ratio**n) * (coef.as_fraction() * scale)
            else:
                scalar = diag * (ratio**n) * coef * scale
            if not _scalar_is_zero(scalar):
                out[i][j] = {n: scalar}
    return out


def transition_mat_mul(a, b):
    """Multiply matrices whose entries are maps {hbar power: scalar}."""
    r = len(a)
    out = [[{} for _ in range(r)] for _ in range(r)]
    for i in range(r):
        for j in range(r):
            acc: Dict[int, object] = {}
            for k in range(r):
                for p1, c1 in a[i][k].items():
                    for p2, c2 in b[k][j].items():
                        p = p1 + p2
                        term = c1 * c2
                        acc[p] = acc[p] + term if p in acc else term
            out[i][j] = {p: c for p, c in acc.items() if not _scalar_is_zero(c)}
    return out


def transition_eq(a, b) -> bool:
    r = len(a)
    for i in range(r):
        for j in range(r):
            keys = set(a[i][j]) | set(b[i][j])
            for p in keys:
                x = a[i][j].get(p)
                y = b[i][j].get(p)
                if x is None:
                    if not _scalar_is_zero(y):
                        return False
                elif y is None:
                    if not _scalar_is_zero(x):
                        return False
                elif x != y:
                    return False
    return True


def _scalar_is_zero(c) -> bool:
    if c is None:
        return True
    if isinstance(c, Fraction):
        return c == 0
    is_zero = getattr(c, "is_zero", None)
    if is_zero is not None:
        return is_zero()
    return c == 0


def gauge_rescaled_connection(r: int) -> Dict[int, Matrix]:
    """Conjugate (1/ħ) phi(q) by the formal diag(ħ^(-(r-2i+1)/2)).

    Entry (i, j) of a matrix picks up ħ^(i-j) under this conjugation, so only
    integer powers of ħ survive even though the gauge itself involves ħ^(1/2).
    Returns the result graded by ħ-exponent.
    """
    phi = higgs_field(r)
    graded: Dict[int, Matrix] = {}
    for i in range(r):
        for j in range(r):
            entry = phi.entries[i][j]
            if entry.is_zero():
                continue
            grade = -1 + (i - j)
            if grade not in graded:
                graded[grade] = [[DiffPoly.zero() for _ in range(r)] for _ in range(r)]
            graded[grade][i][j] = entry
    return graded
