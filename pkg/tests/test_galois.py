import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from quadcycles.dynatomic import OrbitCycle, PreconditionError, iterate, quadratic_periodic_points, rational_cycles
from quadcycles.exact_arith import Discriminant, QuadraticElement as Q, conjugate
from quadcycles.galois import (
    CycleClassification,
    classify,
    conjecture_scan,
    cycle_trace_rationality,
    heights,
)

C6 = F(-71, 48)


def six_cycle():
    (cycle,) = quadratic_periodic_points(C6, 6)
    return cycle


def test_six_cycle_is_case_one_m1():
    cyc = six_cycle()
    assert classify(cyc) == CycleClassification("CaseI", 1, 2)
    assert cyc.points[3] == cyc.points[0].conjugate()
    rep = cycle_trace_rationality(cyc)
    assert rep.rational and rep.trace == Q(F(-7, 2), 0, 33)


def test_rational_cycle_is_case_one_m0():
    (cyc,) = rational_cycles(F(-29, 16), 3)
    assert classify(cyc) == CycleClassification("CaseI", 0, 1)
    # the same cycle written inside Q(sqrt(5))
    lifted = OrbitCycle(cyc.c, tuple(Q(p, 0, 5) for p in cyc.points), Discriminant(5))
    assert classify(lifted) == CycleClassification("CaseI", 0, 1)


def test_corrupted_orbit_is_rejected():
    pts = list(six_cycle().points)
    pts[1] = pts[1].conjugate()
    with pytest.raises(PreconditionError):
        classify(OrbitCycle(C6, tuple(pts), Discriminant(33)))


def test_trace_examples():
    (cyc,) = rational_cycles(-1, 2)
    assert cycle_trace_rationality(cyc).trace == -1
    (cyc,) = quadratic_periodic_points(F(-5, 4), 2)
    assert cyc.disc.value == 2
    assert classify(cyc) == CycleClassification("CaseI", 1, 2)
    assert cycle_trace_rationality(cyc).trace == Q(-1, 0, 2)


def test_fixed_points_are_case_two():
    cycles = quadratic_periodic_points(1, 1)
    assert len(cycles) == 2
    assert {cy.points[0] for cy in cycles} == {Q(F(1, 2), F(1, 2), -3), Q(F(1, 2), F(-1, 2), -3)}
    for cy in cycles:
        assert classify(cy).case == "CaseII"
        assert not cycle_trace_rationality(cy).rational


def test_heights_order():
    hs = heights(3)
    assert hs[:3] == [F(-1), F(0), F(1)]
    assert len(hs) == len(set(hs))
    assert all(max(abs(c.numerator), c.denominator) <= 3 for c in hs)
    keys = [(max(abs(c.numerator), c.denominator), c) for c in hs]
    assert keys == sorted(keys)


def test_scan_is_worker_independent():
    a = conjecture_scan(4, 8, workers=1)
    b = conjecture_scan(4, 8, workers=3)
    assert a.records == b.records and a.summary() == b.summary()


def _check_dichotomy(cycle):
    cls = classify(cycle)
    pts = cycle.points
    n = len(pts)
    conj = [conjugate(p) if isinstance(p, Q) else p for p in pts]
    case_one = cls.case == "CaseI" and conj[0] == pts[(cls.m * n // cls.g) % n]
    case_two = cls.case == "CaseII" and not set(conj) & set(pts)
    assert case_one != case_two
    if n % 2 and cls.case == "CaseI":
        assert cls.m == 0 and all(not isinstance(p, Q) or p.is_rational for p in pts)


@pytest.mark.parametrize("n, height", [(1, 12), (2, 12), (3, 16), (4, 12), (5, 8), (6, 8)])
def test_dichotomy_over_scans(n, height):
    report = conjecture_scan(n, height)
    for rec in report.records:
        assert rec["classification"]["case"] in ("CaseI", "CaseII")
    for c in heights(height):
        for cy in rational_cycles(c, n) + quadratic_periodic_points(c, n):
            _check_dichotomy(cy)


DISCS = [-87, -7, -3, -1, 2, 3, 5, 33]


@st.composite
def triples(draw):
    c = draw(st.fractions(min_value=-4, max_value=4, max_denominator=30))
    d = draw(st.sampled_from(DISCS))
    z = Q(draw(st.fractions(min_value=-4, max_value=4, max_denominator=30)),
          draw(st.fractions(min_value=-4, max_value=4, max_denominator=30)), d)
    return c, z, draw(st.integers(0, 4))


@given(triples())
@settings(max_examples=1000)
def test_conjugation_commutes_with_iteration(t):
    c, z, n = t
    assert conjugate(iterate(c, z, n)) == iterate(c, conjugate(z), n)
