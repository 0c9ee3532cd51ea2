from fractions import Fraction
from itertools import combinations
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mldegree.errors import DegeneratePolytopeError, EmptyPolytopeError
from mldegree.exactmath import logconcave_no_internal_zeros
from mldegree.polytope import (
    _facets_brute,
    _facets_qhull,
    _is_closed,
    affine_dimension,
    convex_hull,
    coordinate_section,
    dilate,
    ehrhart_normalized_volume,
    euclidean_volume,
    homog_project,
    homogeneous_polytope,
    lattice_point_count,
    m_sequence,
    minkowski_sum,
    mixed_volume_inclusion_exclusion,
    mixed_volume_pair_sequence,
    normalized_volume,
    standard_simplex,
)

from . import oracles

D2 = standard_simplex(2)
SEGMENT = convex_hull([(0, 0), (-2, 1)])


def point_sets(dim, lo=0, hi=4, min_size=1, max_size=7):
    return st.lists(st.tuples(*[st.integers(lo, hi)] * dim), min_size=min_size, max_size=max_size)


def full_dim(dim, **kw):
    return point_sets(dim, min_size=dim + 1, **kw).filter(lambda p: affine_dimension(sorted(set(p))) == dim)


# hulls


def test_hull_drops_midpoint():
    assert convex_hull([(0, 0), (2, 0), (0, 2), (1, 1)]).vertices == ((0, 0), (0, 2), (2, 0))


def test_hull_interval():
    assert convex_hull([(0,), (3,), (1,), (2,)]).vertices == ((0,), (3,))


def test_hull_segment_in_space():
    assert convex_hull([(2, 1, 0), (0, 2, 1)]).vertices == ((0, 2, 1), (2, 1, 0))


def test_hull_rejects_mixed_lengths():
    with pytest.raises(ValueError):
        convex_hull([(0, 0), (1,)])


@given(point_sets(2, max_size=12))
def test_plane_hull_matches_monotone_chain(points):
    assert set(convex_hull(points).vertices) == set(oracles.plane_hull(points))


@given(st.integers(2, 4).flatmap(lambda d: full_dim(d, max_size=12)))
def test_qhull_facets_match_brute_force(points):
    pts = tuple(sorted(set(points)))
    brute = _facets_brute(pts)
    assert _facets_qhull(pts) == brute
    assert _is_closed(pts, brute)


@given(st.integers(2, 4).flatmap(lambda d: full_dim(d, max_size=12)))
def test_missing_facet_breaks_closure(points):
    pts = tuple(sorted(set(points)))
    facets = _facets_brute(pts)
    first = next(iter(facets))
    assert not _is_closed(pts, {k: v for k, v in facets.items() if k != first})


# Minkowski sums and volumes


def test_minkowski_examples():
    assert minkowski_sum(D2, D2) == dilate(D2, 2)
    origin = convex_hull([(0, 0)])
    assert minkowski_sum(D2, origin) == D2
    assert euclidean_volume(minkowski_sum(D2, SEGMENT)) == Fraction(5, 2)


def test_minkowski_rejects_empty():
    with pytest.raises(EmptyPolytopeError, match="empty summand"):
        minkowski_sum(D2, convex_hull([], 2))


@pytest.mark.parametrize(
    "poly, vol",
    [
        (D2, Fraction(1, 2)),
        (convex_hull([(0, 0), (1, 1)]), Fraction(0)),
        (convex_hull([(i, j, k) for i in (0, 1) for j in (0, 1) for k in (0, 1)]), Fraction(1)),
    ],
)
def test_euclidean_volume_examples(poly, vol):
    assert euclidean_volume(poly) == vol


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_simplex_normalized_volume(n):
    assert normalized_volume(standard_simplex(n)) == 1
    assert normalized_volume(dilate(standard_simplex(n), 3)) == 3**n


def test_unit_square():
    assert normalized_volume(convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])) == 2


@given(point_sets(2, max_size=10))
def test_area_matches_shoelace(points):
    assert euclidean_volume(convex_hull(points)) == oracles.plane_area(points)


@given(point_sets(3, hi=3, max_size=8), st.tuples(*[st.integers(-5, 5)] * 3))
def test_volume_translation_invariant(points, shift):
    p = convex_hull(points)
    assert euclidean_volume(p.translate(shift)) == euclidean_volume(p)


# mixed volumes


@pytest.mark.parametrize(
    "q, expected",
    [(dilate(D2, 2), [1, 2, 4]), (SEGMENT, [1, 2, 0]), (convex_hull([(1, 1)]), [1, 0, 0])],
)
def test_pair_sequence_examples(q, expected):
    assert mixed_volume_pair_sequence(D2, q, 2) == expected


def test_pair_sequence_needs_full_dimensional_base():
    with pytest.raises(DegeneratePolytopeError, match="base polytope degenerate"):
        mixed_volume_pair_sequence(SEGMENT, D2, 2)


@pytest.mark.parametrize("q, expected", [(D2, 1), (dilate(D2, 2), 2), (SEGMENT, 2)])
def test_inclusion_exclusion_examples(q, expected):
    assert mixed_volume_inclusion_exclusion([D2, q]) == expected


def test_mixed_volume_rejects_empty():
    with pytest.raises(EmptyPolytopeError):
        mixed_volume_inclusion_exclusion([D2, convex_hull([], 2)])
    with pytest.raises(EmptyPolytopeError):
        mixed_volume_pair_sequence(D2, convex_hull([], 2), 2)


@given(point_sets(2, max_size=8), point_sets(2, max_size=8))
def test_plane_mixed_area_matches_oracle(p, q):
    assert mixed_volume_inclusion_exclusion([convex_hull(p), convex_hull(q)]) == oracles.plane_mixed_area(p, q)


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), point_sets(n, hi=3, max_size=6))))
def test_last_entry_is_normalized_volume(data):
    n, pts = data
    q = convex_hull(pts)
    seq = mixed_volume_pair_sequence(standard_simplex(n), q, n)
    assert seq[0] == 1
    assert seq[n] == factorial(n) * euclidean_volume(q)


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), point_sets(n, hi=3, max_size=6))))
def test_pair_sequence_scaling(data):
    n, pts = data
    q = convex_hull(pts)
    base = mixed_volume_pair_sequence(standard_simplex(n), q, n)
    doubled = mixed_volume_pair_sequence(standard_simplex(n), dilate(q, 2), n)
    assert doubled == [2**i * v for i, v in enumerate(base)]


@given(st.integers(2, 3).flatmap(lambda n: st.tuples(full_dim(n, hi=3, max_size=6), point_sets(n, hi=3, max_size=6))),
       st.tuples(*[st.integers(-4, 4)] * 3), st.tuples(*[st.integers(-4, 4)] * 3))
def test_pair_sequence_translation_invariant(data, s, t):
    p, q = (convex_hull(x) for x in data)
    n = p.ambient_dim
    before = mixed_volume_pair_sequence(p, q, n)
    assert mixed_volume_pair_sequence(p.translate(s[:n]), q.translate(t[:n]), n) == before


@given(st.integers(2, 3).flatmap(lambda n: st.tuples(full_dim(n, hi=3, max_size=6), point_sets(n, hi=3, max_size=6))))
def test_pair_sequence_is_logconcave(data):
    p, q = (convex_hull(x) for x in data)
    props = logconcave_no_internal_zeros(mixed_volume_pair_sequence(p, q, p.ambient_dim))
    assert props.logconcave and props.nonnegative


@given(st.integers(2, 3).flatmap(lambda n: st.tuples(full_dim(n, hi=2, max_size=5), point_sets(n, hi=2, max_size=5))))
def test_interpolation_matches_inclusion_exclusion(data):
    p, q = (convex_hull(x) for x in data)
    n = p.ambient_dim
    seq = mixed_volume_pair_sequence(p, q, n)
    for i in range(n + 1):
        assert seq[i] == mixed_volume_inclusion_exclusion([p] * (n - i) + [q] * i)


# lattice points


@pytest.mark.parametrize(
    "poly, counts, vol",
    [
        (D2, [1, 3, 6], 1),
        (convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)]), [1, 4, 9], 2),
        (dilate(D2, 2), [1, 6, 15], 4),
    ],
)
def test_ehrhart_examples(poly, counts, vol):
    assert [lattice_point_count(poly, t) for t in range(3)] == counts
    assert ehrhart_normalized_volume(poly) == vol == normalized_volume(poly)


def test_ehrhart_rejects_flat_polytope():
    with pytest.raises(DegeneratePolytopeError):
        ehrhart_normalized_volume(SEGMENT)


# homogeneous polytopes

CONIC = homogeneous_polytope([(2, 0, 0), (0, 2, 0), (0, 0, 2)])
XYZ = homogeneous_polytope([(1, 1, 1)])
TANGENT = homogeneous_polytope([(2, 1, 0), (0, 2, 1)])


def test_homog_project_examples():
    assert homog_project(homogeneous_polytope([(1, 0, 0), (0, 1, 0), (0, 0, 1)])) == D2
    assert homog_project(CONIC) == dilate(D2, 2)
    assert homog_project(XYZ).vertices == ((1, 1),)


def test_homog_project_rejects_empty():
    with pytest.raises(EmptyPolytopeError):
        homog_project(coordinate_section(XYZ, [0, 1]))


def test_coordinate_section_examples():
    assert coordinate_section(CONIC, [0, 1]).vertices == ((0, 2), (2, 0))
    assert coordinate_section(XYZ, [0, 1]).is_empty
    assert coordinate_section(TANGENT, [0, 2]).is_empty
    assert not coordinate_section(TANGENT, [0, 1]).is_empty
    assert not coordinate_section(TANGENT, [1, 2]).is_empty


@pytest.mark.parametrize(
    "poly, expected",
    [(CONIC, [1, 2, 4]), (XYZ, [1, 0, 0]), (homogeneous_polytope([(2, 0), (0, 2)]), [1, 2])],
)
def test_m_sequence_examples(poly, expected):
    assert m_sequence(poly) == expected


def test_m_sequence_of_empty_is_zero():
    assert m_sequence(coordinate_section(XYZ, [1, 2])) == [0, 0]


def homogeneous_sets(n, level):
    def fill(parts):
        return tuple(parts) + (level - sum(parts),)

    pt = st.lists(st.integers(0, level), min_size=n, max_size=n).filter(lambda p: sum(p) <= level).map(fill)
    return st.lists(pt, min_size=1, max_size=6)


@given(homogeneous_sets(3, 3))
def test_coordinate_section_full_is_identity(points):
    p = homogeneous_polytope(points)
    assert coordinate_section(p, range(4)) == p


@given(homogeneous_sets(3, 3), st.sets(st.integers(0, 3), min_size=1, max_size=4), st.sets(st.integers(0, 3)))
def test_coordinate_section_monotone(points, small, extra):
    p = homogeneous_polytope(points)
    big = sorted(small | extra)
    inner = coordinate_section(p, small)
    outer = coordinate_section(p, big)
    pos = {j: i for i, j in enumerate(big)}
    lifted = []
    for v in inner.vertices:
        w = [0] * len(big)
        for j, x in zip(sorted(small), v):
            w[pos[j]] = x
        lifted.append(tuple(w))
    assert set(lifted) <= set(outer.vertices)


@given(homogeneous_sets(2, 3))
def test_m_sequence_starts_with_one(points):
    seq = m_sequence(homogeneous_polytope(points))
    assert seq[0] == 1 and len(seq) == 3
    assert logconcave_no_internal_zeros(seq).nonnegative


def test_coordinate_section_faces_are_hulls():
    p = homogeneous_polytope([(3, 0, 0), (0, 3, 0), (1, 1, 1), (0, 0, 3)])
    for size in (1, 2):
        for J in combinations(range(3), size):
            s = coordinate_section(p, J)
            assert all(sum(v) == 3 for v in s.vertices)
