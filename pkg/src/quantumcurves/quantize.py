"""Quantization of the spectral data: eliminate the flat-section components
to produce the order-r quantum-curve operator, and its semi-classical limit.

The flat-section equation couples psi_{k+1} to lower components through

    0 = sqrt(s_{k+1}) psi_{k+1} + ħ psi_k'
        + sum_{j=2}^{k+1} sqrt(s_k s_{k-1} ... s_{k-j+2}) q_j psi_{k+1-j},

so each psi_k is a differential polynomial combination of ħ^j psi^(j).  The
k = r-1 equation closes the system into a single order-r scalar operator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .diffalg import DiffPoly, ScalarOperator, YPoly
from .errors import DomainError, InternalInconsistencyError
from .exactnum import RadicalScalar, sqrt_product
from .tds import s_values

Row = List[DiffPoly]


@dataclass(frozen=True)
class EliminationTable:
    """rows[k][j] is the coefficient of ħ^j psi^(j) in psi_k."""

    rank: int
    rows: Tuple[Tuple[DiffPoly, ...], ...]


def _shifted_derivative(row: Row) -> Row:
    """Apply ħ d/dx to sum_j c_j ħ^j psi^(j): derive coefficients and shift."""
    out = [DiffPoly.zero() for _ in range(len(row) + 1)]
    hbar = DiffPoly.hbar()
    for j, c in enumerate(row):
        out[j] = out[j] + hbar * c.derive()
        out[j + 1] = out[j + 1] + c
    return out


def _q_weighted_sum(rows: List[Row], s: List[int], k: int) -> Row:
    """sum_{j=2}^{k+1} sqrt(s_k ... s_{k-j+2}) q_j psi_{k+1-j} as a row."""
    acc: Row = []
    for j in range(2, k + 2):
        factors = s[k - j + 1 : k]  # s_{k-j+2} .. s_k (1-based)
        coef = sqrt_product(factors) if factors else RadicalScalar.one()
        term = DiffPoly.q(j) * DiffPoly.from_coeff(coef)
        source = rows[k + 1 - j]
        while len(acc) < len(source):
            acc.append(DiffPoly.zero())
        for idx, c in enumerate(source):
            acc[idx] = acc[idx] + term * c
    return acc


def _add_rows(a: Row, b: Row) -> Row:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else DiffPoly.zero()
        y = b[i] if i < len(b) else DiffPoly.zero()
        out.append(x + y)
    return out


def flat_section_elimination(r: int) -> EliminationTable:
    if r < 2:
        raise DomainError(f"rank must be >= 2, got {r}")
    s = s_values(r)
    rows: List[Row] = [[DiffPoly.one()]]
    for k in range(r - 1):
        rhs = _add_rows(_shifted_derivative(rows[k]), _q_weighted_sum(rows, s, k))
        scale = DiffPoly.from_coeff(-RadicalScalar.sqrt_int(s[k]).inverse())
        rows.append([scale * c for c in rhs])
    _check_table_invariants(r, s, rows)
    padded = tuple(
        tuple(row[j] if j < len(row) else DiffPoly.zero() for j in range(r))
        for row in rows
    )
    return EliminationTable(r, padded)


def _check_table_invariants(r: int, s: List[int], rows: List[Row]):
    if rows[0][0] != DiffPoly.one() or any(not c.is_zero() for c in rows[0][1:]):
        raise InternalInconsistencyError("row 0 must be exactly psi")
    for k in range(r):
        row = rows[k]
        expected = RadicalScalar.from_rational(Fraction((-1) ** k)) * sqrt_product(
            s[:k]
        ).inverse()
        if row[k] != DiffPoly.from_coeff(expected):
            raise InternalInconsistencyError(
                f"diagonal coefficient of psi_{k} is wrong"
            )
        if k >= 1 and not row[k - 1].is_zero():
            raise InternalInconsistencyError(
                f"psi_{k} contains the ({k-1})-th derivative of psi"
            )


def quantum_curve(r: int) -> ScalarOperator:
    """The monic order-r quantum-curve operator sum_j a_j (ħ d/dx)^j."""
    table = flat_section_elimination(r)
    s = s_values(r)
    rows = [list(row) for row in table.rows]
    final = _add_rows(_shifted_derivative(rows[r - 1]), _q_weighted_sum(rows, s, r - 1))
    lead = final[r]
    if not lead.is_constant():
        raise InternalInconsistencyError("leading coefficient is not a constant")
    expected_lead = RadicalScalar.from_rational(Fraction((-1) ** (r - 1))) * sqrt_product(
        s[: r - 1]
    ).inverse()
    if lead != DiffPoly.from_coeff(expected_lead):
        raise InternalInconsistencyError("unexpected leading coefficient")
    scale = DiffPoly.from_coeff(expected_lead.inverse())
    coeffs = [scale * c for c in final]
    for c in coeffs:
        if not c.is_rational():
            raise InternalInconsistencyError("radical residue in the quantum curve")
    if not coeffs[r - 1].is_zero():
        raise InternalInconsistencyError("traceless condition c_{r-1} = 0 violated")
    return ScalarOperator(r, tuple(coeffs))


def extract_omegas(P: ScalarOperator) -> List[DiffPoly]:
    """omega_i = -ħ^-(r-i) * (coefficient of (d/dx)^(r-i)), for i = 2..r."""
    r = P.order
    out = []
    for i in range(2, r + 1):
        c = P.d_dx_coefficient(r - i)
        out.append(-c.divide_hbar(r - i))
    return out


def semiclassical_limit(P: ScalarOperator) -> YPoly:
    """Evaluate coefficients at ħ = 0 and replace ħ d/dx by y."""
    return YPoly([a.at_hbar_zero() for a in P.coeffs])


def is_equivariant(P: ScalarOperator) -> bool:
    """True when P(x, λħ; λ^l q_l) = λ^r P(x, ħ; q) holds as a formal identity
    in λ: every graded component of every coefficient must sit in weight r."""
    r = P.order
    for j, a in enumerate(P.coeffs):
        if a.is_zero():
            continue
        # a_j multiplies (ħ d/dx)^j, which contributes weight j of its own
        for w in a.lambda_components():
            if w + j != r:
                return False
    return True
