import random
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from quadcycles.dynatomic import (
    DynatomicPoly,
    OrbitCycle,
    PreconditionError,
    dynatomic_poly,
    exact_period,
    iterate,
    iterate_poly,
    nu,
    quadratic_periodic_points,
    rational_cycles,
    rational_periodic_points,
    scaled_monic,
    seed_cache,
    specialize,
    specialize_coeffs,
)
from quadcycles.exact_arith import QuadraticElement as Q, squarefree_decompose
from quadcycles.multipoly import MultiPoly, parse_poly

Z0 = Q(-1, F(1, 12), 33)


def test_iterate_examples():
    assert iterate(-1, 0, 2) == 0
    assert iterate(0, 1, 7) == 1
    assert iterate(F(-71, 48), Z0, 6) == Z0
    assert iterate(F(-71, 48), Z0, 3) == Z0.conjugate()


def test_exact_period_examples():
    assert exact_period(-1, 0, 5) == 2
    assert exact_period(0, 0, 1) == 1
    assert exact_period(F(-71, 48), Z0, 6) == 6
    assert exact_period(F(-71, 48), Z0, 5) is None
    assert exact_period(1, 0, 20) is None


def test_dynatomic_examples():
    assert str(dynatomic_poly(1).poly) == "z^2 - z + c"
    assert str(dynatomic_poly(2).poly) == "z^2 + z + c + 1"
    assert dynatomic_poly(5).degree == 30


def test_degrees_up_to_8():
    assert [nu(n) for n in range(1, 9)] == [2, 2, 6, 12, 30, 54, 126, 240]
    for n in range(1, 9):
        dp = dynatomic_poly(n)
        assert dp.degree == nu(n)
        assert dp.poly.is_integral()


def test_mobius_product_identity():
    z = MultiPoly.var("z", ("z", "c"))
    for n in range(1, 7):
        prod = MultiPoly.const(1, ("z", "c"))
        for d in sympy.divisors(n):
            prod = prod * dynatomic_poly(d).poly
        assert prod == iterate_poly(n) - z


def test_weighted_degree():
    # every term z^i c^j of Phi_n has i + 2j <= nu(n); scaled_monic relies on it
    for n in range(1, 7):
        assert all(i + 2 * j <= nu(n) for i, j in dynatomic_poly(n).poly.terms)


def test_specialize_examples():
    assert specialize(1, F(1, 4)) == parse_poly("(z - 1/2)^2", ("z",))
    assert specialize(2, -1) == parse_poly("z^2 + z", ("z",))
    p = specialize(3, F(-29, 16))
    assert p.degree("z") == 6 and p.evaluate({"z": F(-1, 4)}) == 0


@given(st.fractions(min_value=-5, max_value=5, max_denominator=20), st.integers(1, 6))
@settings(max_examples=25)
def test_specialized_product_identity(c, n):
    prod = MultiPoly.const(1, ("z",))
    for d in sympy.divisors(n):
        prod = prod * specialize(d, c)
    expected = iterate_poly(n).partial({"c": c}).with_vars(("z",)) - MultiPoly.var("z", ("z",))
    assert prod == expected


@given(st.fractions(min_value=-10, max_value=10, max_denominator=30), st.integers(1, 6))
@settings(max_examples=40)
def test_scaled_monic_is_monic_integral(c, n):
    e, W = scaled_monic(n, c)
    assert W[-1] == 1 and all(isinstance(w, int) for w in W)
    coeffs = specialize_coeffs(n, c)
    d = len(coeffs) - 1
    assert all(W[i] == coeffs[i] * e ** (d - i) for i in range(d + 1))


def test_rational_periodic_points_examples():
    assert rational_periodic_points(-1, 2) == {0, -1}
    assert rational_periodic_points(F(-29, 16), 3) == {F(-1, 4), F(-7, 4), F(5, 4)}
    assert rational_periodic_points(1, 5) == set()
    # c = -3/4: the 2-cycle collapses onto the fixed point -1/2
    assert rational_periodic_points(F(-3, 4), 2) == set()


def test_quadratic_periodic_points_examples():
    (cycle,) = quadratic_periodic_points(F(-71, 48), 6)
    assert cycle.disc.value == 33
    assert set(cycle.points) == {Z0, Q(F(-1, 4), F(-1, 6), 33), Q(F(-1, 2), F(1, 12), 33)} | {
        Z0.conjugate(), Q(F(-1, 4), F(1, 6), 33), Q(F(-1, 2), F(-1, 12), 33)}
    assert quadratic_periodic_points(-1, 2) == []
    assert quadratic_periodic_points(0, 5) == []


def test_repeated_root_multiplicity():
    (cycle,) = rational_cycles(F(1, 4), 1)
    assert cycle.points == (F(1, 2),) and cycle.multiplicity == 2
    # at c = -3/4, Phi_2 = (z + 1/2)^2 but -1/2 is fixed, so no exact 2-cycle
    assert [cy.points for cy in rational_cycles(F(-3, 4), 1)] == [(F(-1, 2),), (F(3, 2),)]
    assert all(cy.multiplicity == 1 for cy in rational_cycles(F(-3, 4), 1))
    assert rational_cycles(F(-3, 4), 2) == []


def test_orbit_cycle_check():
    OrbitCycle(F(-1), (F(0), F(-1)), None).check()
    with pytest.raises(PreconditionError):
        OrbitCycle(F(-1), (F(0), F(1)), None).check()
    with pytest.raises(PreconditionError):
        OrbitCycle(F(0), (F(0), F(0)), None).check()


def test_seed_cache_rejects_wrong_polynomial():
    bad = DynatomicPoly(2, parse_poly("z^2 + z + c + 2", ("z", "c")))
    with pytest.raises(Exception):
        seed_cache(bad)
    seed_cache(DynatomicPoly(2, dynatomic_poly(2).poly))


def _sympy_quadratic_cycles(c, n):
    # independent oracle: factor Phi_n(z, c) over Q and keep irreducible quadratics
    z = sympy.Symbol("z")
    coeffs = specialize_coeffs(n, c)
    poly = sympy.Poly([sympy.Rational(x.numerator, x.denominator) for x in reversed(coeffs)], z, domain="QQ")
    pts = set()
    for fac, _ in poly.factor_list()[1]:
        if fac.degree() != 2:
            continue
        _, s, m = [F(int(x.p), int(x.q)) for x in fac.monic().all_coeffs()]
        disc = s * s - 4 * m
        sq, f = squarefree_decompose(disc.numerator * disc.denominator)
        for sign in (1, -1):
            pt = Q(-s / 2, sign * F(f, 2 * disc.denominator), sq)
            if exact_period(c, pt, n) == n:
                pts.add(pt)
    return pts


ORACLE_CASES = [(F(-71, 48), 6), (F(-31, 48), 4), (F(-5, 4), 2), (1, 1), (F(-2), 1), (F(3, 16), 2), (F(-7, 9), 3)]


@pytest.mark.parametrize("c, n", ORACLE_CASES)
def test_quadratic_points_match_factorization_oracle(c, n):
    got = {p for cy in quadratic_periodic_points(c, n) for p in cy.points}
    assert got == _sympy_quadratic_cycles(F(c), n)


def test_quadratic_points_match_factorization_oracle_random():
    rng = random.Random(7)
    for _ in range(40):
        c = F(rng.randint(-40, 20), rng.randint(1, 12))
        n = rng.randint(1, 4)
        got = {p for cy in quadratic_periodic_points(c, n) for p in cy.points}
        assert got == _sympy_quadratic_cycles(c, n), (c, n)


@given(st.fractions(min_value=-3, max_value=1, max_denominator=16), st.integers(1, 5))
@settings(max_examples=40)
def test_returned_points_have_exact_period(c, n):
    for z in rational_periodic_points(c, n):
        assert exact_period(c, z, n) == n
    for cy in quadratic_periodic_points(c, n):
        cy.check()
        for z in cy.points:
            assert exact_period(c, z, n) == n
            assert not z.is_rational
