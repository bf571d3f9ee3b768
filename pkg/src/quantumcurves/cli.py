"""Batch command-line front end with machine-readable JSON reports.

Job specs come from a TOML or JSON file (or inline flags; flags win).  All
rationals are serialized as "p/q" strings; reports are key-sorted so equal
jobs produce byte-identical output.  Exit codes: 0 success, 1 domain or
usage error, 2 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from .diffalg import ScalarOperator
from .errors import DomainError, InternalInconsistencyError, QuantumCurvesError
from .multipoly import MPoly
from .puiseux import PuiseuxSeries
from .quantize import extract_omegas, quantum_curve, semiclassical_limit
from .ratfunc import RationalFunction, parse_rational_function
from .spectral import (
    discriminant_from_rational,
    genus_report,
    odd_point_charts,
    quantum_curve_class_at_infinity,
)
from .tds import char_poly, higgs_field
from .toprec import (
    SpectralData,
    airy_curve,
    build_free_energies,
    curve_from_xy,
    dvv_oracle,
    intersection_numbers,
    principal_specialization,
)
from .wkb import wkb_expand

COMMANDS = ("quantize", "scl", "geometry", "toprec", "wkb", "crosscheck")


@dataclass
class JobSpec:
    command: str
    rank: Optional[int] = None
    q_assignments: Dict[int, str] = field(default_factory=dict)
    level: Optional[int] = None
    order: Optional[int] = None
    curve: str = "airy"
    q: Optional[str] = None

    def validate(self):
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        if self.command in ("quantize", "scl") and not self.rank:
            raise DomainError(f"command {self.command!r} requires a rank")
        if self.command == "geometry" and not self.q:
            raise DomainError("command 'geometry' requires a potential q")
        if self.command == "toprec" and not self.level:
            raise DomainError("command 'toprec' requires a level")
        if self.command in ("wkb", "crosscheck") and not self.order:
            raise DomainError(f"command {self.command!r} requires an order")


def _load_job(path: str, fmt: Optional[str]) -> dict:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    if fmt is None:
        fmt = "toml" if path.endswith(".toml") else "json"
    if fmt == "toml":
        try:
            import tomllib  # py >= 3.11
        except ModuleNotFoundError:
            import tomli as tomllib
        return tomllib.loads(text)
    return json.loads(text)


def _frac_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


# -- command implementations -------------------------------------------------


def _parse_curve(job: JobSpec) -> SpectralData:
    if job.curve == "airy":
        return airy_curve()
    if "," not in job.curve:
        raise DomainError("explicit curve must be 'x(t), y(t)'")
    xs, ys = (part.strip() for part in job.curve.split(",", 1))
    x = _laurent_from_string(xs)
    y = _laurent_from_string(ys)
    mu = max(0, (-_monomial_exponent(y * x.partial(0)) - 1) // 2)
    return curve_from_xy(x, y, mu)


def _laurent_from_string(text: str) -> MPoly:
    rf = parse_rational_function(text, "t")
    den = rf.den
    if len([c for c in den.coeffs if not c.is_zero()]) != 1:
        raise DomainError(f"{text!r} is not a Laurent polynomial")
    shift = 0
    for k, c in enumerate(den.coeffs):
        if not c.is_zero():
            shift = k
            scale = c
    out: Dict[tuple, Fraction] = {}
    for k, c in enumerate(rf.num.coeffs):
        if c.is_zero():
            continue
        out[(k - shift,)] = c.as_fraction() / scale.as_fraction()
    return MPoly(1, out)


def _monomial_exponent(p: MPoly) -> int:
    if len(p.terms) != 1:
        raise DomainError("expected a monomial")
    (e,), = p.terms.keys()
    return e


def _airy_seed(s: SpectralData):
    """q(x), WKB branch, and the inverse chart t(x) for a monomial curve."""
    if len(s.x_of_t.terms) != 1 or len(s.y_of_t.terms) != 1:
        raise DomainError("the exact pipeline needs monomial x(t), y(t)")
    (xe,), xc = next(iter(s.x_of_t.terms.items()))
    (ye,), yc = next(iter(s.y_of_t.terms.items()))
    if xc <= 0:
        raise DomainError("x(t) must have a positive constant")
    from .toprec import _fraction_power  # exact c**e for rational results

    # q(x) = y(t)^2 with t = (x/xc)^(1/xe); square roots take positive roots,
    # so the WKB branch matching y(t) is the sign of yc
    q_exp = Fraction(2 * ye, xe)
    q_coef = yc * yc * _fraction_power(Fraction(1, 1) / xc, q_exp)
    q = PuiseuxSeries.x_power(q_exp, q_coef)
    branch = -1 if yc < 0 else +1
    chart_exp = Fraction(1, xe)
    chart_coef = _fraction_power(Fraction(1, 1) / xc, chart_exp)
    chart = PuiseuxSeries.x_power(chart_exp, chart_coef)
    return q, branch, chart


def cmd_quantize(job: JobSpec) -> dict:
    P = quantum_curve(job.rank)
    omegas = extract_omegas(P)
    report = {
        "rank": job.rank,
        "operator": P.render(),
        "omegas": [w.render() for w in omegas],
        "semiclassical": semiclassical_limit(P).render(),
    }
    if job.q_assignments:
        assignment = {
            level: parse_rational_function(text)
            for level, text in job.q_assignments.items()
        }
        report["operator_substituted"] = _render_substituted(P, assignment)
    return report


def _render_substituted(
    P: ScalarOperator, assignment: Dict[int, RationalFunction]
) -> str:
    parts: List[str] = []
    for j in range(P.order, -1, -1):
        a = P.coeffs[j]
        dop = "" if j == 0 else ("(ħ d/dx)" if j == 1 else f"(ħ d/dx)^{j}")
        if a.is_zero():
            continue
        by_power = a.substitute(assignment)
        for p in sorted(by_power):
            rf = by_power[p]
            text = str(rf)
            factors = []
            if text not in ("1",) or (p == 0 and not dop):
                factors.append(f"({text})" if ("+" in text or " - " in text) else text)
            if p:
                factors.append("ħ" if p == 1 else f"ħ^{p}")
            if dop:
                factors.append(dop)
            body = "*".join(f for f in factors if f and f != "1") or "1"
            parts.append(body)
    out = parts[0]
    for piece in parts[1:]:
        if piece.startswith("-"):
            out += " - " + piece[1:]
        else:
            out += " + " + piece
    return out


def cmd_scl(job: JobSpec) -> dict:
    P = quantum_curve(job.rank)
    scl = semiclassical_limit(P)
    cp = char_poly(higgs_field(job.rank))
    return {
        "rank": job.rank,
        "semiclassical": scl.render(),
        "char_poly": cp.render(),
        "match": scl == cp,
    }


def cmd_geometry(job: JobSpec) -> dict:
    q = parse_rational_function(job.q)
    divisor = discriminant_from_rational(q)
    report = genus_report(divisor)
    charts = [
        {
            "order": c.order,
            "x_exponent": c.x_exponent,
            "y_exponent": c.y_exponent,
            "galois": c.galois,
        }
        for c in odd_point_charts(divisor)
    ]
    return {
        "a": report.a,
        "p_a": report.p_a,
        "delta": report.delta,
        "p_g": report.p_g,
        "blowups": report.blowups,
        "charts": charts,
        "class_at_infinity": quantum_curve_class_at_infinity(q).render(),
    }


def cmd_toprec(job: JobSpec) -> dict:
    s = _parse_curve(job)
    q, branch, chart = _airy_seed(s)
    expansion = wkb_expand(q, branch, 2)
    table = build_free_energies(s, expansion.term(2), job.level)
    free_energies = {}
    numbers = {}
    for (g, n), poly in sorted(table.entries.items()):
        free_energies[f"({g},{n})"] = poly.render()
        for ds, value in sorted(intersection_numbers(poly, g, n).items()):
            key = f"g{g}_d" + "_".join(str(d) for d in ds)
            numbers[key] = _frac_str(value)
    return {"free_energies": free_energies, "intersection_numbers": numbers}


def cmd_wkb(job: JobSpec) -> dict:
    s = _parse_curve(job)
    q, branch, _ = _airy_seed(s)
    expansion = wkb_expand(q, branch, job.order)
    terms = []
    for m, series in enumerate(expansion.terms):
        entry = {
            "m": m,
            "rendered": str(series),
            "pairs": [
                {
                    "exponent": _frac_str(e),
                    "coef": _frac_str(c.as_fraction()) if c.is_rational() else str(c),
                }
                for e, c in series.exponent_items()
            ],
        }
        if series.has_log():
            entry["log_coef"] = _frac_str(series.log_coefficient.as_fraction())
        terms.append(entry)
    return {"branch": expansion.branch, "terms": terms}


def cmd_crosscheck(job: JobSpec) -> dict:
    s = _parse_curve(job)
    q, branch, chart = _airy_seed(s)
    order = job.order
    expansion = wkb_expand(q, branch, order)
    table = build_free_energies(s, expansion.term(2), max(1, order - 1))
    wkb_equals_toprec = all(
        principal_specialization(table, m, chart) == expansion.term(m)
        for m in range(2, order + 1)
    )
    dvv_match = True
    for (g, n), poly in table.entries.items():
        for ds, value in intersection_numbers(poly, g, n).items():
            if value != dvv_oracle(g, ds):
                dvv_match = False
    return {"wkb_equals_toprec": wkb_equals_toprec, "dvv_match": dvv_match}


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quantumcurves",
        description="exact quantization and recursion pipelines",
    )
    parser.add_argument("command", nargs="?", choices=COMMANDS)
    parser.add_argument("--job", help="job spec file (JSON or TOML), '-' for stdin")
    parser.add_argument("--format", choices=("json", "toml"), dest="fmt")
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--rank", type=int)
    parser.add_argument("--level", type=int)
    parser.add_argument("--order", type=int)
    parser.add_argument("--curve", help="builtin name ('airy') or 'x(t), y(t)'")
    parser.add_argument("--q", help="potential q(x) for geometry reports")
    return parser


def job_from_args(args: argparse.Namespace) -> JobSpec:
    data = {}
    if args.job:
        data = _load_job(args.job, args.fmt)
    command = args.command or data.get("command")
    if not command:
        raise DomainError("no command given (flag or job file)")
    q_assignments = {
        int(level): text for level, text in data.get("q_assignments", {}).items()
    }
    job = JobSpec(
        command=command,
        rank=args.rank if args.rank is not None else data.get("rank"),
        q_assignments=q_assignments,
        level=args.level if args.level is not None else data.get("level"),
        order=args.order if args.order is not None else data.get("order"),
        curve=args.curve or data.get("curve", "airy"),
        q=args.q or data.get("q"),
    )
    job.validate()
    return job


_HANDLERS = {
    "quantize": cmd_quantize,
    "scl": cmd_scl,
    "geometry": cmd_geometry,
    "toprec": cmd_toprec,
    "wkb": cmd_wkb,
    "crosscheck": cmd_crosscheck,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit:
        # argparse prints the usage message itself; malformed input exits 1
        return 1
    try:
        job = job_from_args(args)
        report = _HANDLERS[job.command](job)
    except InternalInconsistencyError as err:
        print(f"internal inconsistency: {err}", file=sys.stderr)
        return 2
    except (DomainError, QuantumCurvesError, OSError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    text = json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
