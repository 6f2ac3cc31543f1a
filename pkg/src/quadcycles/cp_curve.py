"""Quadratic 5-periodic points through the genus-2 model y^2 = f(x) of the period-5 quotient curve.

If a 5-cycle has points in a quadratic field then the model coordinate x
satisfies some x^2 + a x + b over Q. Reducing the equation for x modulo
that quadratic leaves a linear remainder lambda1*x + lambda0 whose two
coefficients must vanish together, so (a, b) lies on the curve P(a, b) = 0
obtained by eliminating c.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .dynatomic import quadratic_periodic_points
from .exact_arith import QuadraticElement, format_rational, rational_sqrt
from .multipoly import (
    MultiPoly,
    UniView,
    content_primitive,
    divide_monic,
    exact_divide,
    parse_poly,
    rational_roots,
    resultant,
    substitute,
)

log = logging.getLogger(__name__)

ABC = ("a", "b", "c")
XABC = ("x",) + ABC


class VerificationError(AssertionError):
    """A computed object disagrees with a published structural fact."""


class DegenerateInput(ValueError):
    """Both lambda specializations vanish identically at (a, b)."""


@dataclass(frozen=True)
class CurveConstants:
    f: MultiPoly
    g: MultiPoly
    h: MultiPoly
    P0: MultiPoly
    P1: MultiPoly

    @classmethod
    def default(cls) -> "CurveConstants":
        p = lambda s: parse_poly(s, ("x",))
        return cls(
            f=p("x^6 + 8*x^5 + 22*x^4 + 22*x^3 + 5*x^2 + 6*x + 1"),
            g=p("8*x^6 + 74*x^5 + 271*x^4 + 452*x^3 + 325*x^2 + 110*x + 64"),
            h=p("8*x^2*(x+3)^2"),
            P0=p("-x^6 - 10*x^5 - 46*x^4 - 104*x^3 - 95*x^2 - 24*x - 9"),
            P1=p("x^3 + 6*x^2 + 3*x - 9"),
        )


@dataclass(frozen=True)
class IdentityReport:
    passed: bool
    difference: MultiPoly


def identity_check(k: CurveConstants | None = None) -> IdentityReport:
    """Check g*h == 2*(P0^2 - P1^2*f), the condition for the two formulas for c to agree on y^2 = f."""
    k = k or CurveConstants.default()
    diff = k.g * k.h - 2 * (k.P0**2 - k.P1**2 * k.f)
    return IdentityReport(diff.is_zero(), diff)


def eliminant(k: CurveConstants | None = None) -> MultiPoly:
    """(c*h - P0)^2 - P1^2*f in Z[x, c]: y eliminated between the model and the formula for c."""
    k = k or CurveConstants.default()
    c = MultiPoly.var("c", ("x", "c"))
    return (c * k.h - k.P0) ** 2 - k.P1**2 * k.f


def reduced_eliminant(k: CurveConstants | None = None) -> MultiPoly:
    """The eliminant divided by h/2, i.e. 2*h*c^2 - 4*P0*c + g.

    The identity g*h = 2(P0^2 - P1^2 f) makes the eliminant equal to
    (h/2)(2 h c^2 - 4 P0 c + g); h(x) != 0 at every admissible x, so the
    cofactor carries the same information.
    """
    k = k or CurveConstants.default()
    return exact_divide(eliminant(k), k.h * Fraction(1, 2)).with_vars(("x", "c"))


@dataclass(frozen=True)
class LambdaPair:
    lambda1: MultiPoly
    lambda0: MultiPoly
    quotient: MultiPoly
    dividend: MultiPoly
    divisor: MultiPoly


@lru_cache(maxsize=4)
def build_lambdas(k: CurveConstants | None = None) -> LambdaPair:
    k = k or CurveConstants.default()
    dividend = reduced_eliminant(k).with_vars(XABC)
    divisor = parse_poly("x^2 + a*x + b", XABC)
    quot, rem = divide_monic(dividend, divisor, "x")
    coeffs = UniView.of(rem, "x").coeffs
    lam0 = coeffs[0].with_vars(ABC) if coeffs else MultiPoly.const(0, ABC)
    lam1 = coeffs[1].with_vars(ABC) if len(coeffs) > 1 else MultiPoly.const(0, ABC)
    return LambdaPair(lam1, lam0, quot, dividend, divisor)


@dataclass(frozen=True)
class CPPolynomial:
    primitive: MultiPoly
    content: int

    def __call__(self, a, b):
        return self.primitive.evaluate({"a": Fraction(a), "b": Fraction(b)})


@lru_cache(maxsize=4)
def build_cp(lambdas: LambdaPair | None = None) -> CPPolynomial:
    """Res_c(lambda1, lambda0), split into positive content and primitive part."""
    lam = lambdas or build_lambdas()
    res = resultant(lam.lambda1, lam.lambda0, "c").with_vars(("a", "b"))
    content, prim = content_primitive(res)
    da, db = prim.degree("a"), prim.degree("b")
    if (da, db) != (8, 9):
        raise VerificationError(f"P(a, b) has degrees ({da}, {db}); expected (8, 9)")
    return CPPolynomial(prim, content)


@dataclass(frozen=True, order=True)
class CPRationalPoint:
    a: Fraction
    b: Fraction

    def as_json(self) -> dict:
        return {"a": format_rational(self.a), "b": format_rational(self.b)}


def _in_c(p: MultiPoly, a, b) -> MultiPoly:
    return p.partial({"a": Fraction(a), "b": Fraction(b)}).with_vars(("c",))


def solve_common_c(a, b, lambdas: LambdaPair | None = None) -> set[Fraction]:
    """Rational c with lambda1(a, b, c) = lambda0(a, b, c) = 0."""
    lam = lambdas or build_lambdas()
    l1, l0 = _in_c(lam.lambda1, a, b), _in_c(lam.lambda0, a, b)
    if l1.is_zero() and l0.is_zero():
        raise DegenerateInput(f"both lambdas vanish identically at (a, b) = ({a}, {b})")
    first, other = (l1, l0) if not l1.is_zero() else (l0, l1)
    if first.is_constant():
        return set()
    return {
        c for c in rational_roots(first) if other.evaluate({"c": c}) == 0
    }


def x_roots(a, b) -> tuple[list, bool]:
    """Roots of x^2 + a x + b and whether they are rational."""
    a, b = Fraction(a), Fraction(b)
    d = a * a - 4 * b
    r = rational_sqrt(d)
    if r is not None:
        return sorted({(-a + r) / 2, (-a - r) / 2}), True
    x = QuadraticElement.of(-a / 2, Fraction(1, 2 * d.denominator), d.numerator * d.denominator)
    return [x, x.conjugate()], False


def admissible(a, b, k: CurveConstants | None = None) -> tuple[bool, str]:
    """Whether x^2 + a x + b can carry a quadratic (non-rational) x with h(x) != 0."""
    k = k or CurveConstants.default()
    xs, rational = x_roots(a, b)
    if rational:
        if any(x in (0, -3) for x in xs):
            return False, "x rational; h(x) = 0 at a root"
        return False, "x rational (handled by the rational-x analysis)"
    if any(k.h.evaluate({"x": x}) == 0 for x in xs):
        return False, "h(x) = 0"
    return True, "x quadratic, h(x) != 0"


@dataclass
class BranchReport:
    name: str
    free_var: str
    resultant: MultiPoly | None
    roots: list[Fraction]
    candidates: list[tuple[Fraction, Fraction, Fraction]] = field(default_factory=list)
    survivors: list[tuple[Fraction, Fraction, Fraction]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [f"branch {self.name}:"]
        if self.resultant is not None:
            out.append(f"  Res_c in {self.free_var}: {self.resultant}")
        out.append(
            f"  rational roots in {self.free_var}: "
            + ("{" + ", ".join(format_rational(r) for r in self.roots) + "}")
        )
        for n in self.notes:
            out.append(f"  {n}")
        out.append(f"  candidate (a, b, c): {len(self.candidates)}; surviving: {len(self.survivors)}")
        return out


def _branch(name: str, var: str, replacement: MultiPoly, lam: LambdaPair, k: CurveConstants) -> BranchReport:
    s1 = substitute(lam.lambda1, var, replacement)
    s0 = substitute(lam.lambda0, var, replacement)
    free = "b" if var == "a" else "a"
    d1, d0 = s1.degree("c"), s0.degree("c")
    if d1 >= 1 and d0 >= 1:
        R = resultant(s1, s0, "c")
    else:
        # one equation is free of c: its roots in the free variable are the only options
        R = s1 if d1 < 1 else s0
    report = BranchReport(name, free, R, [])
    if R.is_zero():
        report.notes.append("resultant vanishes identically; branch not resolved")
        return report
    report.roots = sorted(rational_roots(R.with_vars((free,))) if R.used_vars() else set())
    for r in report.roots:
        if var == "a":
            a, b = replacement.constant_value(), r
        else:
            a = r
            b = replacement.evaluate({"a": r}) if replacement.used_vars() else replacement.constant_value()
        a, b = Fraction(a), Fraction(b)
        l1 = _in_c(lam.lambda1, a, b)
        if l1.is_constant():
            report.notes.append(
                f"lambda1({format_rational(a)}, {format_rational(b)}, c) = {l1} identically"
            )
        try:
            cs = solve_common_c(a, b, lam)
        except DegenerateInput as exc:
            report.notes.append(str(exc))
            continue
        for c in sorted(cs):
            report.candidates.append((a, b, c))
            ok, why = admissible(a, b, k)
            report.notes.append(
                f"(a, b, c) = ({format_rational(a)}, {format_rational(b)}, {format_rational(c)}): {why}"
            )
            if ok:
                report.survivors.append((a, b, c))
    return report


@dataclass
class CaseReport:
    branches: list[BranchReport]
    cp_degrees: tuple[int, int]
    notes: list[str]

    @property
    def any_survivors(self) -> bool:
        return any(b.survivors for b in self.branches)

    def text(self) -> str:
        lines = []
        for i, b in enumerate(self.branches):
            case = 1 if i < 2 else 2
            lines.append(f"Case {case}, " + "\n".join(b.lines()))
        lines.append(
            f"Case 3, P(a, b) = Res_c(lambda1, lambda0): degree {self.cp_degrees[0]} in a, "
            f"{self.cp_degrees[1]} in b; rational points via `cp search`"
        )
        lines.extend(self.notes)
        lines.append("solutions surviving Cases 1-2: " + ("yes" if self.any_survivors else "none"))
        return "\n".join(lines)


def case_analysis(k: CurveConstants | None = None) -> CaseReport:
    """Cases where the c^2 coefficient of lambda1 (Case 1) or lambda0 (Case 2) vanishes."""
    k = k or CurveConstants.default()
    lam = build_lambdas(k)
    a = MultiPoly.var("a")
    branches = [
        _branch("a = 3", "a", MultiPoly.const(3), lam, k),
        _branch("b = a(a-3)/2", "b", a * (a - 3) * Fraction(1, 2), lam, k),
        _branch("b = 0", "b", MultiPoly.const(0), lam, k),
        _branch("b = (a-3)^2", "b", (a - 3) ** 2, lam, k),
    ]
    cp = build_cp(lam)
    notes = [
        "note: the second equation of Cases 1-2 is read as lambda0 = 0",
        "note: only affine points are searched; points at infinity are not covered",
    ]
    return CaseReport(branches, (cp.primitive.degree("a"), cp.primitive.degree("b")), notes)


def _points_for_a(args) -> list[CPRationalPoint]:
    prim, a = args
    u = prim.partial({"a": a}).with_vars(("b",))
    if u.is_zero():
        log.warning("P(%s, b) vanishes identically", a)
        return []
    if u.is_constant():
        return []
    return [CPRationalPoint(a, b) for b in rational_roots(u)]


def a_values(height_bound: int) -> list[Fraction]:
    out = [
        Fraction(p, q)
        for q in range(1, height_bound + 1)
        for p in range(-height_bound, height_bound + 1)
        if gcd(p, q) == 1
    ]
    return sorted(out)


def search_points(height_bound: int, workers: int = 1, cp: CPPolynomial | None = None) -> list[CPRationalPoint]:
    """All affine rational points of P(a, b) = 0 whose a has height <= bound (b unrestricted)."""
    if height_bound < 1:
        raise ValueError("height bound must be positive")
    cp = cp or build_cp()
    jobs = [(cp.primitive, a) for a in a_values(height_bound)]
    if workers > 1:
        from multiprocessing import Pool

        with Pool(workers) as pool:
            found = pool.map(_points_for_a, jobs)
    else:
        found = [_points_for_a(j) for j in jobs]
    return sorted({p for group in found for p in group})


@dataclass
class EndToEndReport:
    point: CPRationalPoint
    c_values: list[Fraction]
    checks: list[str]
    five_cycles: list = field(default_factory=list)

    @property
    def genuine(self) -> bool:
        return bool(self.five_cycles)


def end_to_end_5cycle_check(point: CPRationalPoint, k: CurveConstants | None = None) -> EndToEndReport:
    """Follow a point of the curve back to candidate c values and test for quadratic 5-cycles."""
    k = k or CurveConstants.default()
    a, b = point.a, point.b
    report = EndToEndReport(point, [], [])
    try:
        cs = sorted(solve_common_c(a, b))
    except DegenerateInput as exc:
        report.checks.append(f"degenerate: {exc}")
        return report
    report.c_values = cs
    if not cs:
        report.checks.append("no rational c with lambda1 = lambda0 = 0")
    for c in cs:
        ok, why = admissible(a, b, k)
        report.checks.append(f"c = {format_rational(c)}: {why}")
        if not ok:
            continue
        for x in x_roots(a, b)[0]:
            p1 = k.P1.evaluate({"x": x})
            if p1 == 0:
                report.checks.append(f"  x = {x}: P1(x) = 0, y not recoverable")
                continue
            y = (c * k.h.evaluate({"x": x}) - k.P0.evaluate({"x": x})) / p1
            on_curve = y * y == k.f.evaluate({"x": x})
            report.checks.append(f"  x = {x}: y = {y}, y^2 = f(x): {on_curve}")
        cycles = quadratic_periodic_points(c, 5)
        report.checks.append(f"  quadratic 5-cycles at c = {format_rational(c)}: {len(cycles)}")
        report.five_cycles.extend(cycles)
    return report
