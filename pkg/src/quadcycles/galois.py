"""Galois classification of exact cycles in quadratic fields.

For a quadratic field the only nontrivial automorphism is conjugation, and
g = gcd(N, 2). A cycle is in Case I when conj(z_0) = z_{m N/g} for some m in
Z/gZ, and in Case II when the cycle and its conjugate are disjoint.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable

from .dynatomic import (
    OrbitCycle,
    dynatomic_poly,
    format_point,
    quadratic_periodic_points,
    rational_cycles,
)
from .exact_arith import QuadraticElement, format_rational

log = logging.getLogger(__name__)


class TheoremViolation(AssertionError):
    """The conjugate of z_0 sits in the orbit at an index not divisible by N/g."""


@dataclass(frozen=True)
class CycleClassification:
    case: str  # "CaseI" or "CaseII"
    m: int | None
    g: int

    def as_json(self):
        return {"case": self.case, "m": self.m, "g": self.g}


def _conj(p):
    return p.conjugate() if isinstance(p, QuadraticElement) else p


def classify(cycle: OrbitCycle) -> CycleClassification:
    cycle.check()
    pts = cycle.points
    n = len(pts)
    g = gcd(n, 2)
    if all(not isinstance(p, QuadraticElement) or p.is_rational for p in pts):
        return CycleClassification("CaseI", 0, g)
    target = _conj(pts[0])
    k = next((i for i, p in enumerate(pts) if p == target), None)
    conj_set = {_conj(p) for p in pts}
    meets = bool(conj_set & set(pts))
    # index search and set intersection must agree
    if (k is not None) != meets:
        raise TheoremViolation(
            f"conjugate orbit meets the cycle but conj(z0) is not in it (c={cycle.c})"
        )
    if k is None:
        return CycleClassification("CaseII", None, g)
    step = n // g
    if k % step:
        raise TheoremViolation(f"conj(z0) = z_{k} with N/g = {step} not dividing {k}")
    return CycleClassification("CaseI", k // step, g)


@dataclass(frozen=True)
class TraceReport:
    rational: bool
    trace: object


def cycle_trace_rationality(cycle: OrbitCycle) -> TraceReport:
    """Whether the sum of the cycle's points is rational.

    Even-N Case I cycles with m = 1 pair z_j with conj(z_j) = z_{j+N/2},
    so their trace must be rational; that is asserted here.
    """
    tr = cycle.trace
    rational = not isinstance(tr, QuadraticElement) or tr.is_rational
    cls = classify(cycle)
    if cls.case == "CaseI" and cls.m == 1 and len(cycle.points) % 2 == 0:
        assert rational, f"Case I (m=1) cycle with irrational trace at c={cycle.c}"
    return TraceReport(rational, tr)


def heights(bound: int) -> Iterable[Fraction]:
    """All c = p/q in lowest terms with max(|p|, q) <= bound, ordered by (height, c)."""
    out = []
    for q in range(1, bound + 1):
        for p in range(-bound, bound + 1):
            if gcd(p, q) == 1:
                out.append(Fraction(p, q))
    out.sort(key=lambda c: (max(abs(c.numerator), c.denominator), c))
    return out


def cycle_record(cycle: OrbitCycle, classification: CycleClassification | None = None) -> dict:
    cls = classification or classify(cycle)
    tr = cycle.trace
    return {
        "c": format_rational(cycle.c),
        "N": cycle.period,
        "disc": cycle.disc.value if cycle.disc is not None else None,
        "points": [format_point(p) for p in cycle.points],
        "trace": format_point(tr),
        "classification": cls.as_json(),
        "multiplicity": cycle.multiplicity,
    }


def cycles_at(c: Fraction, n: int, quadratic_only: bool = False) -> list[OrbitCycle]:
    out = [] if quadratic_only else rational_cycles(c, n)
    return out + quadratic_periodic_points(c, n)


@dataclass
class ScanReport:
    period: int
    height_bound: int
    records: list[dict] = field(default_factory=list)
    c_count: int = 0

    def quadratic(self) -> list[dict]:
        return [r for r in self.records if r["disc"] is not None]

    def case_ii(self) -> list[dict]:
        return [r for r in self.records if r["classification"]["case"] == "CaseII"]

    def summary(self) -> dict:
        q = self.quadratic()
        return {
            "summary": True,
            "N": self.period,
            "height": self.height_bound,
            "c_values": self.c_count,
            "rational_cycles": len(self.records) - len(q),
            "quadratic_cycles": len(q),
            "CaseI": sum(r["classification"]["case"] == "CaseI" for r in self.records),
            "CaseII": len(self.case_ii()),
        }


def _scan_one(args) -> list[dict]:
    c, n, quadratic_only = args
    return [cycle_record(cy) for cy in cycles_at(c, n, quadratic_only)]


def conjecture_scan(
    n: int, height_bound: int, workers: int = 1, quadratic_only: bool = False
) -> ScanReport:
    """Classify every exact n-cycle (rational and quadratic) for c up to the height bound.

    Case II records for n = 1 are disjoint conjugate fixed points, which the
    report lists without treating them as counterexamples.
    """
    cs = heights(height_bound)
    dynatomic_poly(n)  # build once so forked workers inherit it
    jobs = [(c, n, quadratic_only) for c in cs]
    if workers > 1:
        from multiprocessing import Pool

        with Pool(workers) as pool:
            results = pool.map(_scan_one, jobs, chunksize=16)
    else:
        results = [_scan_one(j) for j in jobs]
    report = ScanReport(n, height_bound, c_count=len(cs))
    # results arrive in job order, which is already (height, c) order
    for recs in results:
        report.records.extend(recs)
    for r in report.case_ii():
        log.info("Case II cycle at c=%s (N=%d)", r["c"], n)
    return report
