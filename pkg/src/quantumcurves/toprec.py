"""Free energies of genus-0 degree-2 spectral curves via the local form of
the differential recursion, with an independent Virasoro-recursion oracle
for the psi-class intersection numbers.

Scope: normalized curves parametrized by Laurent polynomials x(t), y(t) with
Galois involution t -> -t, and eta = y dx = h(t) dt.  Every denominator is
cleared by exact division; a nonzero remainder or a residue term is an
internal-inconsistency error, never an approximation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import DomainError, InternalInconsistencyError
from .exactnum import RadicalScalar
from .multipoly import MPoly
from .puiseux import PuiseuxSeries
from .ratfunc import Polynomial, RationalFunction

GNKey = Tuple[int, int]


# ---------------------------------------------------------------------------
# spectral data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralData:
    """x(t), y(t) Laurent polynomials (1-variable MPoly), h = y x' exactly."""

    x_of_t: MPoly
    y_of_t: MPoly
    h_of_t: MPoly
    mu: int

    def __post_init__(self):
        for p in (self.x_of_t, self.y_of_t, self.h_of_t):
            if p.nvars != 1:
                raise DomainError("spectral data must be univariate in t")
        flipped = MPoly(
            1, {e: (c if e[0] % 2 == 0 else -c) for e, c in self.x_of_t.terms.items()}
        )
        if flipped != self.x_of_t:
            raise DomainError("x(t) must be invariant under t -> -t")
        xprime = self.x_of_t.partial(0)
        if self.y_of_t * xprime != self.h_of_t:
            raise DomainError("h(t) must equal y(t) x'(t) exactly")

    def omega_coefficient(self) -> MPoly:
        """Omega = (sigma^* - 1) W_{0,1} = -(h(t) + h(-t)) dt."""
        h = self.h_of_t
        even_part = MPoly(
            1, {e: c for e, c in h.terms.items() if e[0] % 2 == 0}
        )
        return even_part * Fraction(-2)

    def omega_reciprocal_monomial(self) -> Tuple[Tuple[int], Fraction]:
        """(exponent, coefficient) of 1/Omega; requires Omega to be a monomial."""
        om = self.omega_coefficient()
        if len(om.terms) != 1:
            raise DomainError(
                "1/Omega is only exact for a monomial Omega; got " + str(om)
            )
        (e, c), = om.terms.items()
        return (-e[0],), Fraction(1) / c

    def h_reciprocal_half(self) -> MPoly:
        """1/(2 h(t)) as a Laurent monomial; requires h to be a monomial."""
        if len(self.h_of_t.terms) != 1:
            raise DomainError("1/(2h) is only exact for a monomial h")
        (e, c), = self.h_of_t.terms.items()
        return MPoly.monomial(1, (-e[0],), Fraction(1, 2) / c)


def airy_curve() -> SpectralData:
    """x = 4/t^2, y = -2/t, so eta = 16 t^-4 dt (the [DMSS]-normalized chart)."""
    x = MPoly.monomial(1, (-2,), 4)
    y = MPoly.monomial(1, (-1,), -2)
    h = MPoly.monomial(1, (-4,), 16)
    return SpectralData(x, y, h, mu=2)


def curve_from_xy(x: MPoly, y: MPoly, mu: int) -> SpectralData:
    return SpectralData(x, y, y * x.partial(0), mu)


# ---------------------------------------------------------------------------
# the Cauchy kernel as a plain rational function (for tests and report output)
# ---------------------------------------------------------------------------


def omega_kernel(a) -> RationalFunction:
    """1/(z-a) - 1/(z+a) = 2a/(z^2 - a^2) in the variable z."""
    z = Polynomial.x("z")
    a = RadicalScalar.from_rational(a) if isinstance(a, (int, Fraction)) else a
    den = (z - Polynomial.constant(a, "z")) * (z + Polynomial.constant(a, "z"))
    num = Polynomial.constant(a * 2, "z")
    return RationalFunction(num, den)


# ---------------------------------------------------------------------------
# linear-denominator calculus in three variables (internal, used for F03)
# ---------------------------------------------------------------------------

# the six linear forms z_i + sign z_j for i < j
_FORMS: Tuple[Tuple[int, int, int], ...] = (
    (0, 1, -1),
    (0, 1, +1),
    (0, 2, -1),
    (0, 2, +1),
    (1, 2, -1),
    (1, 2, +1),
)


@dataclass(frozen=True)
class _LinTerm:
    """coef * z^mono / prod(form_f ^ dens_f)."""

    coef: Fraction
    mono: Tuple[int, int, int]
    dens: Tuple[int, int, int, int, int, int]

    def times(self, other: "_LinTerm") -> "_LinTerm":
        return _LinTerm(
            self.coef * other.coef,
            tuple(a + b for a, b in zip(self.mono, other.mono)),
            tuple(a + b for a, b in zip(self.dens, other.dens)),
        )


def _lt(coef=1, mono=(0, 0, 0), dens=(0, 0, 0, 0, 0, 0)) -> _LinTerm:
    return _LinTerm(Fraction(coef), tuple(mono), tuple(dens))


def _lin_mul(a: List[_LinTerm], b: List[_LinTerm]) -> List[_LinTerm]:
    return [t1.times(t2) for t1 in a for t2 in b]


def _lin_diff(terms: List[_LinTerm], var: int) -> List[_LinTerm]:
    out: List[_LinTerm] = []
    for t in terms:
        if t.mono[var] != 0:
            mono = list(t.mono)
            mono[var] -= 1
            out.append(_LinTerm(t.coef * t.mono[var], tuple(mono), t.dens))
        for f, (i, j, sign) in enumerate(_FORMS):
            e = t.dens[f]
            if e == 0:
                continue
            dlin = 1 if var == i else (sign if var == j else 0)
            if dlin == 0:
                continue
            dens = list(t.dens)
            dens[f] += 1
            out.append(_LinTerm(t.coef * (-e) * dlin, t.mono, tuple(dens)))
    return out


def _lin_to_poly(terms: List[_LinTerm]) -> MPoly:
    """Clear all linear denominators exactly; raise if a remainder survives."""
    emax = [0] * 6
    for t in terms:
        for f in range(6):
            emax[f] = max(emax[f], t.dens[f])
    numerator = MPoly.zero(3)
    for t in terms:
        piece = MPoly.monomial(3, t.mono, t.coef)
        for f, (i, j, sign) in enumerate(_FORMS):
            form = MPoly.var(3, i) + MPoly.var(3, j) * sign
            for _ in range(emax[f] - t.dens[f]):
                piece = piece * form
        numerator = numerator + piece
    for f, (i, j, sign) in enumerate(_FORMS):
        for _ in range(emax[f]):
            numerator = numerator.divide_exact_linear(i, j, sign)
    return numerator


def _w02(i: int, j: int) -> List[_LinTerm]:
    """W_{0,2}(z_i, z_j) coefficient: 1/(z_i - z_j)^2 (i < j)."""
    f = _FORMS.index((i, j, -1))
    dens = [0] * 6
    dens[f] = 2
    return [_lt(1, dens=tuple(dens))]


def _w02_conj(i: int, j: int) -> List[_LinTerm]:
    """W_{0,2}(z_i, sigma(z_j)) coefficient: -1/(z_i + z_j)^2 (any i != j)."""
    a, b = min(i, j), max(i, j)
    f = _FORMS.index((a, b, +1))
    dens = [0] * 6
    dens[f] = 2
    return [_lt(-1, dens=tuple(dens))]


def _kernel(i: int, j: int) -> List[_LinTerm]:
    """omega^(sigma(z_j) - z_j)(z_i) / dz_i = 1/(z_i+z_j) - 1/(z_i-z_j)."""
    a, b = min(i, j), max(i, j)
    plus = [0] * 6
    plus[_FORMS.index((a, b, +1))] = 1
    minus = [0] * 6
    minus[_FORMS.index((a, b, -1))] = 1
    return [_lt(1, dens=tuple(plus)), _lt(-1, dens=tuple(minus))]


def _inv_omega(s: SpectralData, var: int) -> List[_LinTerm]:
    expo, coef = s.omega_reciprocal_monomial()
    mono = [0, 0, 0]
    mono[var] = expo[0]
    return [_lt(coef, mono=tuple(mono))]


def _three_point_coefficient(s: SpectralData) -> MPoly:
    """The auxiliary 3-form W(z1,z2,z3)/dz1 dz2 dz3 entering the F03 formula."""
    term1 = _lin_mul(
        _inv_omega(s, 0),
        _lin_mul(_w02(0, 1), _w02_conj(0, 2)) + _lin_mul(_w02(0, 2), _w02_conj(0, 1)),
    )
    inner2 = _lin_mul(_kernel(0, 1), _lin_mul(_w02_conj(1, 2), _inv_omega(s, 1)))
    inner3 = _lin_mul(_kernel(0, 2), _lin_mul(_w02_conj(1, 2), _inv_omega(s, 2)))
    terms = term1 + _lin_diff(inner2, 1) + _lin_diff(inner3, 2)
    return _lin_to_poly(terms)


# ---------------------------------------------------------------------------
# initial data
# ---------------------------------------------------------------------------


def initial_F11(s: SpectralData) -> MPoly:
    """F_{1,1} = -int W_{0,2}(t, sigma(t)) / Omega(t), integrated from t = 0.

    Along the anti-diagonal the two-point form restricts to -(dt)^2/(4 t^2),
    so the integrand is -1/(4 t^2 Omega_c(t)) dt; it must be Laurent with no
    t^-1 term.
    """
    expo, coef = s.omega_reciprocal_monomial()
    integrand = MPoly.monomial(1, (expo[0] - 2,), Fraction(-1, 4) * coef)
    return -integrand.integrate_from_zero(0)


def substitute_chart(series: PuiseuxSeries, x_of_t: MPoly) -> MPoly:
    """Evaluate a Puiseux series in x on the chart x = c t^k (monomial, c > 0).

    Fractional powers use the positive root of c; the resulting exponents must
    be integers.  This is how S_2(x) is carried to the spectral-curve side.
    """
    if series.has_log():
        raise DomainError("chart substitution of a log term is not supported")
    if len(x_of_t.terms) != 1:
        raise DomainError("chart substitution needs a monomial x(t)")
    (e, c), = x_of_t.terms.items()
    k = e[0]
    if c <= 0:
        raise DomainError("chart substitution needs a positive leading constant")
    out: Dict[Tuple[int], Fraction] = {}
    for exp, coefficient in series.exponent_items():
        t_exp = exp * k
        if t_exp.denominator != 1:
            raise DomainError(f"exponent {exp} does not land on integer t-powers")
        scale = _fraction_power(c, exp)
        if not coefficient.is_rational():
            raise DomainError("chart substitution requires rational coefficients")
        key = (int(t_exp),)
        out[key] = out.get(key, Fraction(0)) + coefficient.as_fraction() * scale
    return MPoly(1, out)


def _fraction_power(c: Fraction, e: Fraction) -> Fraction:
    """c**e for positive rational c when the result is rational."""
    c = Fraction(c)
    p, q = e.numerator, e.denominator
    target = c**p
    num = _exact_root(target.numerator, q)
    den = _exact_root(target.denominator, q)
    if num is None or den is None:
        raise DomainError(f"{c}^{e} is irrational")
    return Fraction(num, den)


def _exact_root(n: int, q: int) -> Optional[int]:
    if n == 0:
        return 0
    root = round(n ** (1.0 / q))
    for candidate in (root - 1, root, root + 1):
        if candidate >= 0 and candidate**q == n:
            return candidate
    return None


def initial_F03(s: SpectralData, s2_in_x: PuiseuxSeries) -> MPoly:
    """F_{0,3} from the triple-integral formula, with integration constants
    fixed by integrating from t = 0 and checked against the S_2 consistency
    relation S_2 = F_{1,1} + F_{0,3}(diag)/6."""
    s2_t = substitute_chart(s2_in_x, s.x_of_t)
    f11 = initial_F11(s)
    w = _three_point_coefficient(s)
    pw = (
        w.integrate_from_zero(0)
        .integrate_from_zero(1)
        .integrate_from_zero(2)
    )
    pw_diag = pw.diagonal()
    adjust = s2_t - (f11 - pw_diag * Fraction(1, 6))
    g = adjust.integrate_from_zero(0)
    g1 = g.map_vars([0], 3) * MPoly.monomial(3, (0, 1, 1))
    g2 = g.map_vars([1], 3) * MPoly.monomial(3, (1, 0, 1))
    g3 = g.map_vars([2], 3) * MPoly.monomial(3, (1, 1, 0))
    f03 = -pw + (g1 + g2 + g3) * 2
    if not f03.is_symmetric():
        raise InternalInconsistencyError("F_{0,3} failed the symmetry check")
    lhs = f11 + f03.diagonal() * Fraction(1, 6)
    if lhs != s2_t:
        raise InternalInconsistencyError(
            "integration constants conflict with the S_2 consistency relation"
        )
    return f03


# ---------------------------------------------------------------------------
# the free-energy table and the recursion step
# ---------------------------------------------------------------------------


class FreeEnergyTable:
    """(g, n) -> symmetric polynomial in t_1..t_n, filled level by level,
    where the level of (g, n) is 2g - 2 + n."""

    def __init__(self, s: SpectralData):
        self.curve = s
        self.entries: Dict[GNKey, MPoly] = {}

    def put(self, g: int, n: int, value: MPoly):
        _check_invariants(g, n, value)
        self.entries[(g, n)] = value

    def get(self, g: int, n: int) -> MPoly:
        if (g, n) not in self.entries:
            raise DomainError(f"missing table entry ({g},{n})")
        return self.entries[(g, n)]

    def has(self, g: int, n: int) -> bool:
        return (g, n) in self.entries

    def max_level(self) -> int:
        return max(2 * g - 2 + n for g, n in self.entries)


def _check_invariants(g: int, n: int, value: MPoly):
    if value.nvars != n:
        raise InternalInconsistencyError(f"F_({g},{n}) must have {n} variables")
    if value.is_zero():
        raise InternalInconsistencyError(f"F_({g},{n}) is zero")
    if not value.is_symmetric():
        raise InternalInconsistencyError(f"F_({g},{n}) is not symmetric")
    want = 6 * g - 6 + 3 * n
    if value.total_degrees() != {want}:
        raise InternalInconsistencyError(
            f"F_({g},{n}) total degree != {want}"
        )
    for e in value.terms:
        if any(k <= 0 or k % 2 == 0 for k in e):
            raise InternalInconsistencyError(
                f"F_({g},{n}) has a monomial with non-odd exponents: {e}"
            )


def _stable(g: int, n: int) -> bool:
    return 2 * g - 2 + n > 0


def pde_recursion_step(table: FreeEnergyTable, g: int, n: int) -> MPoly:
    """F_{g,n} for 2g-2+n >= 2 from lower table entries.

    Computes d/dz1 F_{g,n} from the local recursion (kernel exchange terms,
    the (g-1, n+1) double derivative, and the stable products), integrates
    from 0 in z1, and verifies symmetry of the result.
    """
    level = 2 * g - 2 + n
    if level < 2:
        raise DomainError("recursion step only applies for 2g-2+n >= 2")
    s = table.curve
    inv2h = s.h_reciprocal_half()  # 1-variable monomial in z
    inv2h_expo, inv2h_coef = next(iter(inv2h.terms.items()))

    d1 = MPoly.zero(n)

    # kernel exchange terms, j = 2..n
    if n >= 2:
        f_prev = table.get(g, n - 1)  # n-1 variables
        for j in range(1, n):
            rest = [idx for idx in range(1, n) if idx != j]
            # G(z) = d/dz F_{g,n-1}(z, rest)/(2h(z)) placed at slot `var`
            def g_at(var: int) -> MPoly:
                targets = [var] + rest
                f = f_prev.map_vars(targets, n)
                return f.partial(var).mul_monomial(
                    _unit(n, var, inv2h_expo[0]), inv2h_coef
                )

            diff = g_at(0) - g_at(j)
            quotient = diff.divide_exact_z2_diff(0, j)
            d1 = d1 + quotient * MPoly.var(n, j) * Fraction(-2)

    # second-derivative term from (g-1, n+1): d^2/du1 du2 at u1 = u2 = z1
    if g >= 1:
        f_lower = table.get(g - 1, n + 1)
        d_uu = f_lower.partial(0).partial(1)
        collapsed = d_uu.map_vars([0, 0] + list(range(1, n)), n)
        d1 = d1 - collapsed.mul_monomial(_unit(n, 0, inv2h_expo[0]), inv2h_coef)

    # stable products over ordered splittings
    rest_indices = list(range(1, n))
    for g1 in range(0, g + 1):
        g2 = g - g1
        for size in range(0, len(rest_indices) + 1):
            for subset in combinations(rest_indices, size):
                complement = [i for i in rest_indices if i not in subset]
                if not _stable(g1, len(subset) + 1):
                    continue
                if not _stable(g2, len(complement) + 1):
                    continue
                fa = table.get(g1, len(subset) + 1)
                fb = table.get(g2, len(complement) + 1)
                pa = fa.map_vars([0] + list(subset), n).partial(0)
                pb = fb.map_vars([0] + list(complement), n).partial(0)
                d1 = d1 - (pa * pb).mul_monomial(
                    _unit(n, 0, inv2h_expo[0]), inv2h_coef
                )

    result = d1.integrate_from_zero(0)
    if not result.is_symmetric():
        raise InternalInconsistencyError(
            f"recursion produced a non-symmetric F_({g},{n})"
        )
    return result


def _unit(n: int, var: int, power: int) -> Tuple[int, ...]:
    e = [0] * n
    e[var] = power
    return tuple(e)


def build_free_energies(
    s: SpectralData, s2_in_x: PuiseuxSeries, level: int
) -> FreeEnergyTable:
    """Fill the table for all (g, n) with 1 <= 2g-2+n <= level."""
    if level < 1:
        raise DomainError("level must be >= 1")
    table = FreeEnergyTable(s)
    table.put(1, 1, initial_F11(s))
    table.put(0, 3, initial_F03(s, s2_in_x))
    for lvl in range(2, level + 1):
        for g in range(0, lvl // 2 + 2):
            n = lvl + 2 - 2 * g
            if n < 1 or (g, n) in ((0, 1), (0, 2)):
                continue
            table.put(g, n, pde_recursion_step(table, g, n))
    return table


# ---------------------------------------------------------------------------
# intersection numbers
# ---------------------------------------------------------------------------


def _double_factorial(n: int) -> int:
    """(n)!! with the convention (-1)!! = 1."""
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def intersection_numbers(
    F: MPoly, g: int, n: int
) -> Dict[Tuple[int, ...], Fraction]:
    """Invert the free-energy normalization: the coefficient of
    prod t_i^(2 d_i + 1) carries <tau_{d_1} ... tau_{d_n}>_{g,n} times
    (-1)^n 2^-(2g-2+n) prod (1/2)^(2d_i+1) (2d_i - 1)!!."""
    _check_invariants(g, n, F)
    dim = 3 * g - 3 + n
    out: Dict[Tuple[int, ...], Fraction] = {}
    for e, c in F.terms.items():
        ds = tuple((k - 1) // 2 for k in e)
        if sum(ds) != dim:
            raise DomainError(
                f"monomial {e} violates the dimension constraint sum d = {dim}"
            )
        value = c * Fraction((-1) ** n) * Fraction(2) ** (2 * g - 2 + n)
        for d in ds:
            value *= Fraction(2 ** (2 * d + 1), _double_factorial(2 * d - 1))
        key = tuple(sorted(ds))
        if key in out and out[key] != value:
            raise InternalInconsistencyError(
                f"asymmetric coefficients for d-tuple {key}"
            )
        out[key] = value
    return out


# ---------------------------------------------------------------------------
# independent Virasoro (DVV) oracle
# ---------------------------------------------------------------------------

_DVV_CACHE: Dict[Tuple[int, Tuple[int, ...]], Fraction] = {}


def _dvv_normalized(g: int, ds: Tuple[int, ...]) -> Fraction:
    """N(g; d) = <tau_{d_1}...tau_{d_n}> * prod (2 d_i + 1)!!, by the Virasoro
    recursion on the first (smallest) index.  Base cases: N(0;0,0,0) = 1 and
    N(1;1) = 1/8."""
    n = len(ds)
    if sum(ds) != 3 * g - 3 + n:
        return Fraction(0)
    ds = tuple(sorted(ds))
    if g == 0 and n == 3:
        return Fraction(1)
    if g == 1 and n == 1:
        return Fraction(1, 8) if ds == (1,) else Fraction(0)
    key = (g, ds)
    if key in _DVV_CACHE:
        return _DVV_CACHE[key]
    i0, rest = ds[0], ds[1:]
    total = Fraction(0)
    # string/dilaton/DVV joint term: pull one other insertion in
    for m_index, m in enumerate(rest):
        k = i0 + m - 1
        if k < 0:
            continue
        reduced = rest[:m_index] + rest[m_index + 1 :]
        total += (2 * m + 1) * _dvv_normalized(g, (k,) + reduced)
    # the (g-1, n+1) term and the genus splittings
    if i0 >= 2:
        pair_sum = Fraction(0)
        for a in range(0, i0 - 1):
            b = i0 - 2 - a
            if g >= 1:
                pair_sum += _dvv_normalized(g - 1, (a, b) + rest)
            for g1 in range(0, g + 1):
                g2 = g - g1
                for size in range(0, len(rest) + 1):
                    for subset_idx in combinations(range(len(rest)), size):
                        sub = tuple(rest[i] for i in subset_idx)
                        comp = tuple(
                            rest[i] for i in range(len(rest)) if i not in subset_idx
                        )
                        na, nb = len(sub) + 1, len(comp) + 1
                        if not (_stable(g1, na) and _stable(g2, nb)):
                            continue
                        pair_sum += _dvv_normalized(g1, (a,) + sub) * _dvv_normalized(
                            g2, (b,) + comp
                        )
        total += pair_sum / 2
    _DVV_CACHE[key] = total
    return total


def dvv_oracle(g: int, ds: Iterable[int]) -> Fraction:
    """<tau_{d_1} ... tau_{d_n}>_{g,n} from the Virasoro recursion alone."""
    ds = tuple(int(d) for d in ds)
    n = len(ds)
    if n < 1 or any(d < 0 for d in ds):
        raise DomainError("need n >= 1 non-negative indices")
    if sum(ds) != 3 * g - 3 + n:
        raise DomainError(
            f"dimension mismatch: sum d = {sum(ds)} != 3g-3+n = {3*g-3+n}"
        )
    norm = 1
    for d in ds:
        norm *= _double_factorial(2 * d + 1)
    return _dvv_normalized(g, ds) / norm


# ---------------------------------------------------------------------------
# principal specialization
# ---------------------------------------------------------------------------


def principal_specialization(
    table: FreeEnergyTable, m: int, chart_t_of_x: PuiseuxSeries
) -> PuiseuxSeries:
    """S_m(x) = sum over 2g-2+n = m-1 of F_{g,n}(t(x), ..., t(x)) / n!."""
    if m < 2:
        raise DomainError("principal specialization applies for m >= 2")
    level = m - 1
    if table.max_level() < level:
        raise DomainError(f"table not populated through level {level}")
    total = PuiseuxSeries.zero()
    power_cache: Dict[int, PuiseuxSeries] = {}

    def chart_power(k: int) -> PuiseuxSeries:
        if k not in power_cache:
            power_cache[k] = chart_t_of_x.pow_int(k)
        return power_cache[k]

    for g in range(0, level // 2 + 2):
        n = level + 2 - 2 * g
        if n < 1 or (g, n) in ((0, 1), (0, 2)):
            continue
        diag = table.get(g, n).diagonal()
        piece = PuiseuxSeries.zero()
        for e, c in diag.terms.items():
            piece = piece + chart_power(e[0]).scaled(c)
        total = total + piece.scaled(Fraction(1, factorial(n)))
    return total
