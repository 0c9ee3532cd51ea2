import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mldegree.arrangement import Arrangement, Hyperplane
from mldegree.critical import (
    MasterFunction,
    critical_count_r1,
    critical_count_r2,
    curve_critical_count,
    draw_exponents,
)
from mldegree.errors import DegeneratePolytopeError, ZeroPolynomialError
from mldegree.exactmath import sylvester_resultant
from mldegree.newton import LaurentPolynomial

from . import oracles

GENERIC3 = Arrangement.from_rows(2, [(1, 0, 0), (0, 1, 0), (1, 1, -1)])
BOOLEAN = Arrangement.from_rows(2, [(1, 0, 0), (0, 1, 0)])
FOUR = Arrangement.from_rows(2, [(1, 0, 0), (0, 1, 0), (1, 1, -1), (1, -2, 3)])


def test_draw_exponents_nonzero_and_seeded():
    a = draw_exponents(50, random.Random(1))
    assert all(a) and all(abs(u) <= 10**6 for u in a)
    assert a == draw_exponents(50, random.Random(1))


def test_master_function_checks():
    h = Hyperplane((1, 0), 0)
    with pytest.raises(ValueError):
        MasterFunction((h,), (1, 2))
    with pytest.raises(ValueError):
        MasterFunction((h, h), (1, 2))
    with pytest.raises(ValueError):
        MasterFunction((h,), (0,))


def test_critical_equations_of_generic_lines():
    mf = MasterFunction(GENERIC3.hyperplanes, (2, 3, 5))
    p1, p2 = mf.critical_equations()
    # u1 y (x+y-1) + u3 x y and u2 x (x+y-1) + u3 x y
    assert p1(Fraction(1), Fraction(1)) == 2 * 1 * 1 + 5 * 1 * 1
    assert p2(Fraction(2), Fraction(1)) == 3 * 2 * 2 + 5 * 2 * 1


# r = 1


@pytest.mark.parametrize(
    "points, u, count",
    [((0, 1), (1, 1), 1), ((0, 1), (1, -1), 0), ((0, 1, 2), (1, 1, 1), 2)],
)
def test_r1_examples(points, u, count):
    rep = critical_count_r1(points, u)
    assert rep.count == count and rep.certified


def test_r1_errors():
    with pytest.raises(ValueError):
        critical_count_r1([0, 0], [1, 1])
    with pytest.raises(ValueError):
        critical_count_r1([0], [1])
    with pytest.raises(ZeroPolynomialError, match="exponents annihilate"):
        critical_count_r1([0, 1, 2], [0, 0, 0])


@given(st.sets(st.fractions(min_value=-20, max_value=20, max_denominator=5), min_size=2, max_size=8),
       st.randoms(use_true_random=False))
@settings(max_examples=40)
def test_r1_generic_count(points, rng):
    pts = sorted(points)
    rep = critical_count_r1(pts, draw_exponents(len(pts), rng))
    assert rep.count == len(pts) - 1
    assert rep.squarefree


@given(st.sets(st.integers(-10, 10), min_size=2, max_size=6), st.integers(1, 10**6), st.integers(-5, 5))
def test_r1_rescaling_invariant(points, seed, c):
    if c == 0:
        return
    pts = sorted(points)
    u = draw_exponents(len(pts), random.Random(seed))
    scaled = tuple(c * v for v in u)
    assert critical_count_r1(pts, scaled).count == critical_count_r1(pts, u).count


# r = 2


@pytest.mark.parametrize("a, expected", [(GENERIC3, 1), (BOOLEAN, 0), (FOUR, 3)])
def test_r2_examples(a, expected):
    for seed in range(3):
        rep = critical_count_r2(a, seed=seed)
        assert rep.certified and rep.count == expected == rep.expected
        assert rep.squarefree


def test_r2_requires_plane_and_essential():
    with pytest.raises(ValueError):
        critical_count_r2(Arrangement.from_rows(1, [(1, 0), (1, 1)]))
    with pytest.raises(ValueError):
        critical_count_r2(Arrangement.from_rows(2, [(1, 0, 0), (1, 0, 1)]))


def test_r2_concurrent_lines_have_no_critical_points():
    a = Arrangement.from_rows(2, [(1, 0, 0), (0, 1, 0), (1, -1, 0)])
    rep = critical_count_r2(a, seed=4)
    assert rep.certified and rep.count == 0 == rep.expected


@pytest.mark.parametrize("c", [-3, 2, 7])
def test_r2_rescaling_invariant(c):
    u = draw_exponents(4, random.Random(11))
    base = critical_count_r2(FOUR, u, seed=1).count
    assert critical_count_r2(FOUR, tuple(c * v for v in u), seed=1).count == base


def test_r2_is_deterministic():
    a, b = critical_count_r2(FOUR, seed=9), critical_count_r2(FOUR, seed=9)
    assert (a.exponents, a.counts, a.shears_used) == (b.exponents, b.counts, b.shears_used)


# curves


def _g(terms):
    return LaurentPolynomial(2, terms)


@pytest.mark.parametrize(
    "g, expected",
    [
        (_g({(1, 0): 1, (0, 1): 1, (0, 0): 1}), 1),
        (_g({(1, 0): 1, (0, 1): 1, (1, 1): 1}), 1),
        (_g({(2, 0): 3, (1, 1): -2, (0, 2): 5, (1, 0): 7, (0, 1): -1, (0, 0): 11}), 4),
    ],
)
def test_curve_examples(g, expected):
    rep = curve_critical_count(g, seed=2)
    assert rep.certified and rep.count == expected == rep.expected


def test_curve_with_negative_exponents():
    g = _g({(-1, 0): 2, (0, -1): 3, (1, 1): 5})
    rep = curve_critical_count(g, seed=0)
    assert rep.certified and rep.count == rep.expected == 3


def test_curve_monomial_rejected():
    with pytest.raises(DegeneratePolytopeError, match="degenerate"):
        curve_critical_count(_g({(2, 1): 1}))


def test_critical_equation_resultant_matches_oracle():
    mf = MasterFunction(FOUR.hyperplanes, (3, -5, 7, 2))
    p1, p2 = mf.critical_equations()
    assert sylvester_resultant(p1, p2, 1).coeffs == oracles.resultant(p1, p2, 1)
