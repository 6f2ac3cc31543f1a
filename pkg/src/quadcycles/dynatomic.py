"""Dynatomic polynomials of z^2 + c and their rational and quadratic periodic points."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Sequence, Union

import numpy as np
from sympy import divisors, factorint
from sympy.functions.combinatorial.numbers import mobius

from .exact_arith import Discriminant, QuadraticElement, Scalar, format_rational, squarefree_decompose
from .multipoly import (
    MultiPoly,
    UniView,
    exact_divide,
    integer_roots,
    substitute,
)

log = logging.getLogger(__name__)

Point = Union[Fraction, QuadraticElement]

VARS = ("z", "c")
_Z = MultiPoly.var("z", VARS)
_C = MultiPoly.var("c", VARS)


class PreconditionError(ValueError):
    """Input violates the documented precondition of an operation."""


def nu(n: int) -> int:
    """Degree of the n-th dynatomic polynomial in z: sum of mu(n/d) 2^d over d | n."""
    return int(sum(int(mobius(n // d)) * 2**d for d in divisors(n)))


@lru_cache(maxsize=None)
def iterate_poly(m: int) -> MultiPoly:
    """phi_c^m(z) in Z[z, c], built by repeated substitution into z^2 + c."""
    if m == 0:
        return _Z
    phi = _Z**2 + _C
    return substitute(phi, "z", iterate_poly(m - 1))


@dataclass(frozen=True)
class DynatomicPoly:
    period: int
    poly: MultiPoly

    @property
    def degree(self) -> int:
        return self.poly.degree("z")


_CACHE: dict[int, DynatomicPoly] = {}


def dynatomic_poly(n: int) -> DynatomicPoly:
    """Phi_n(z, c): product over m | n of (phi^m(z) - z)^mu(n/m), by exact division."""
    if n < 1:
        raise ValueError("period must be positive")
    if n in _CACHE:
        return _CACHE[n]
    num = MultiPoly.const(1, VARS)
    den = MultiPoly.const(1, VARS)
    for m in divisors(n):
        mu = int(mobius(n // m))
        if mu == 1:
            num = num * (iterate_poly(m) - _Z)
        elif mu == -1:
            den = den * (iterate_poly(m) - _Z)
    # an InexactDivisionError here would mean a bug, never a legitimate outcome
    poly = exact_divide(num, den).with_vars(VARS)
    assert poly.degree("z") == nu(n)
    _CACHE[n] = DynatomicPoly(n, poly)
    return _CACHE[n]


def seed_cache(dp: DynatomicPoly) -> None:
    """Install a precomputed Phi_n after checking its degree and that it divides phi^n(z) - z."""
    poly = dp.poly.with_vars(VARS)
    if poly.degree("z") != nu(dp.period) or not poly.is_integral():
        raise ValueError(f"not a dynatomic polynomial of period {dp.period}")
    exact_divide(iterate_poly(dp.period) - _Z, poly)
    _CACHE[dp.period] = DynatomicPoly(dp.period, poly)
    _coeff_table.cache_clear()
    _specialized.cache_clear()


@lru_cache(maxsize=None)
def _coeff_table(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    # for each power of z, the (power of c, coefficient) pairs of Phi_n
    view = UniView.of(dynatomic_poly(n).poly, "z")
    return tuple(tuple((e[0], c) for e, c in cp.terms.items()) for cp in view.coeffs)


def specialize_coeffs(n: int, c: Scalar) -> list[Fraction]:
    """Ascending coefficients of Phi_n(z, c) for a rational c."""
    return list(_specialized(n, Fraction(c)))


@lru_cache(maxsize=64)
def _specialized(n: int, c: Fraction) -> tuple[Fraction, ...]:
    # integer arithmetic over the common denominator q^J
    p, q = c.numerator, c.denominator
    out = []
    for row in _coeff_table(n):
        top = max((j for j, _ in row), default=0)
        num = sum(k * p**j * q ** (top - j) for j, k in row)
        out.append(Fraction(num, q**top))
    return tuple(out)


def specialize(n: int, c: Scalar) -> MultiPoly:
    """Phi_n(z, c0) as a univariate polynomial in z."""
    return MultiPoly.from_univariate(specialize_coeffs(n, c), "z")


def _scale(c: Fraction) -> int:
    # least e > 0 with e^2 * c integral
    e = 1
    for p, k in factorint(c.denominator).items():
        e *= p ** ((k + 1) // 2)
    return e


def scaled_monic(n: int, c: Scalar) -> tuple[int, list[int]]:
    """Return ``(e, W)`` where ``W(w) = e^nu * Phi_n(w/e, c)`` is monic with integer coefficients.

    Every term z^i c^j of Phi_n has i + 2j <= nu(n), so with e^2 c integral
    the scaled polynomial is integral; its roots w = e*z are algebraic integers.
    """
    c = Fraction(c)
    e = _scale(c)
    cz = int(c * e * e)
    deg = nu(n)
    W = []
    for i, row in enumerate(_coeff_table(n)):
        W.append(sum(k * cz**j * e ** (deg - i - 2 * j) for j, k in row))
    return e, W


def iterate(c: Scalar, z, n: int):
    """Apply z -> z^2 + c ``n`` times."""
    c = Fraction(c)
    for _ in range(n):
        z = z * z + c
    return z


def exact_period(c: Scalar, z, bound: int) -> int | None:
    """Smallest n <= bound with phi_c^n(z) == z, or None."""
    if bound < 1:
        raise ValueError("bound must be positive")
    w = z
    for n in range(1, bound + 1):
        w = w * w + Fraction(c)
        if w == z:
            return n
    return None


def escape_radius(c: Scalar) -> Fraction:
    """Rational R with every periodic point satisfying |z| <= R."""
    # |z| > 1/2 + sqrt(1/4 + |c|) escapes; bound the square root from above
    t = Fraction(1, 4) + abs(Fraction(c))
    s = Fraction(isqrt(t.numerator * t.denominator) + 1, t.denominator)
    return Fraction(1, 2) + s


@dataclass(frozen=True)
class OrbitCycle:
    """An exact N-cycle of z^2 + c; ``disc`` is None when every point is rational."""

    c: Fraction
    points: tuple
    disc: Discriminant | None
    multiplicity: int = field(default=1, compare=False)

    @property
    def period(self) -> int:
        return len(self.points)

    @property
    def trace(self):
        total = self.points[0]
        for p in self.points[1:]:
            total = total + p
        return total

    @classmethod
    def from_point(cls, c: Scalar, z: Point, multiplicity: int = 1) -> "OrbitCycle":
        c = Fraction(c)
        n = exact_period(c, z, 1 << 12)
        if n is None:
            raise PreconditionError(f"{z} is not periodic for c = {c}")
        pts = [z]
        for _ in range(n - 1):
            pts.append(pts[-1] * pts[-1] + c)
        disc = z.disc if isinstance(z, QuadraticElement) and not z.is_rational else None
        return cls(c, tuple(pts), disc, multiplicity)

    def check(self) -> None:
        """Raise PreconditionError unless this is a genuine exact cycle."""
        pts = self.points
        if not pts:
            raise PreconditionError("empty cycle")
        n = len(pts)
        for j in range(n):
            if pts[j] * pts[j] + self.c != pts[(j + 1) % n]:
                raise PreconditionError(f"point {j} does not map to point {(j + 1) % n}")
        if len(set(pts)) != n:
            raise PreconditionError("cycle points are not distinct")

    def canonical(self) -> "OrbitCycle":
        """Same cycle rotated to start at its least point (by a fixed sort key)."""
        k = min(range(len(self.points)), key=lambda i: _point_key(self.points[i]))
        pts = self.points[k:] + self.points[:k]
        return OrbitCycle(self.c, pts, self.disc, self.multiplicity)


def _point_key(p: Point):
    if isinstance(p, QuadraticElement):
        return (p.rational_part, p.surd_part)
    return (Fraction(p), Fraction(0))


def _numeric_roots(coeffs: Sequence[Fraction]) -> np.ndarray:
    return np.roots([float(a) for a in reversed(coeffs)])


def rational_periodic_points(c: Scalar, n: int) -> set[Fraction]:
    """Rational roots of Phi_n(z, c) of exact period n.

    Rational roots of Phi_n(., c) are w/e with w an integer root of the
    monic scaled polynomial, bounded by the escape radius; every candidate
    is confirmed by exact evaluation and exact orbit iteration.
    """
    c = Fraction(c)
    e, W = scaled_monic(n, c)
    bound = int(escape_radius(c) * e) + 1
    found = set()
    for w in integer_roots(W, bound):
        z = Fraction(w, e)
        if exact_period(c, z, n) == n:
            found.add(z)
    return found


def _divmod_monic_int(W: list[int], factor: list[int]) -> tuple[list[int], list[int]]:
    # long division of ascending integer coefficient lists by a monic factor
    W = list(W)
    d = len(factor) - 1
    q = [0] * max(len(W) - d, 0)
    for i in range(len(W) - 1, d - 1, -1):
        lead = W[i]
        if lead:
            q[i - d] = lead
            for j in range(d + 1):
                W[i - d + j] -= lead * factor[j]
    return q, W[:d]


def _root_multiplicity(W: list[int], factor: list[int]) -> int:
    k = 0
    while True:
        q, r = _divmod_monic_int(W, factor)
        if any(r):
            return k
        k += 1
        W = q


def _quadratic_factor_candidates(n: int, c: Fraction) -> set[tuple[int, int]]:
    """Integer (trace, norm) pairs of w = e*z for conjugate root pairs, found numerically."""
    e = _scale(c)
    roots = _numeric_roots(specialize_coeffs(n, c)) * e
    s = roots[:, None] + roots[None, :]
    p = roots[:, None] * roots[None, :]
    iu = np.triu_indices(len(roots), k=1)
    s, p = s[iu], p[iu]
    tol_s = 1e-3 * np.maximum(1.0, np.abs(s))
    tol_p = 1e-3 * np.maximum(1.0, np.abs(p))
    S = np.round(s.real)
    P = np.round(p.real)
    ok = (
        (np.abs(s.imag) < tol_s)
        & (np.abs(p.imag) < tol_p)
        & (np.abs(s.real - S) < tol_s)
        & (np.abs(p.real - P) < tol_p)
    )
    return {(int(a), int(b)) for a, b in zip(S[ok], P[ok])}


def quadratic_periodic_points(c: Scalar, n: int) -> list[OrbitCycle]:
    """Exact n-cycles of z^2 + c whose points are quadratic irrationals.

    Candidate quadratic factors t^2 - s t + m of Phi_n(., c) come from
    pairing numerical roots; since e*z is an algebraic integer, e*s and
    e^2*m are integers, which fixes the rounding. A candidate is kept only
    after exact division of Phi_n(., c) by the factor and exact iteration of
    both roots; failures are logged and dropped.
    """
    c = Fraction(c)
    e, W = scaled_monic(n, c)
    cycles: dict[frozenset, OrbitCycle] = {}
    for S, M in sorted(_quadratic_factor_candidates(n, c)):
        s, m = Fraction(S, e), Fraction(M, e * e)
        disc = s * s - 4 * m
        if disc == 0:
            continue
        dn = disc.numerator * disc.denominator
        sq, f = squarefree_decompose(dn)
        if sq == 1:
            continue  # splits over Q
        # w^2 - S w + M divides W exactly iff t^2 - s t + m divides Phi_n(., c)
        mult = _root_multiplicity(W, [M, -S, 1])
        if not mult:
            log.debug("rejected candidate factor t^2 - (%s)t + %s at c=%s", s, m, c)
            continue
        # sqrt(disc) = sqrt(dn)/den = f*sqrt(sq)/den
        half_surd = Fraction(f, 2 * disc.denominator)
        for sign in (1, -1):
            z = QuadraticElement(s / 2, sign * half_surd, Discriminant(sq))
            if exact_period(c, z, n) != n:
                continue
            cyc = OrbitCycle.from_point(c, z, mult).canonical()
            cycles.setdefault(frozenset(cyc.points), cyc)
    return sorted(cycles.values(), key=lambda cy: [_point_key(p) for p in cy.points])


def rational_cycles(c: Scalar, n: int) -> list[OrbitCycle]:
    c = Fraction(c)
    pts = rational_periodic_points(c, n)
    e, W = scaled_monic(n, c)
    cycles: dict[frozenset, OrbitCycle] = {}
    for z in sorted(pts):
        key = None
        for k in cycles:
            if z in k:
                key = k
        if key is None:
            mult = _root_multiplicity(W, [-int(z * e), 1])
            cyc = OrbitCycle.from_point(c, z, mult).canonical()
            cycles[frozenset(cyc.points)] = cyc
    return sorted(cycles.values(), key=lambda cy: cy.points)


def format_point(p: Point) -> str:
    if isinstance(p, QuadraticElement) and not p.is_rational:
        return str(p)
    return format_rational(p.rational_part if isinstance(p, QuadraticElement) else p)
