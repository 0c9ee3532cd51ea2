"""Lattice polytopes: hulls, Minkowski sums, exact and mixed volumes.

Mixed volumes use the normalization in which the standard simplex has
mixed volume 1, so MV(P, ..., P) = n! vol(P).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb, factorial, gcd
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .errors import DegeneratePolytopeError, EmptyPolytopeError
from .exactmath import bareiss_det, interpolate, rref_rows

Point = tuple[int, ...]

# above this many d-subsets, facets come from qhull (exactly verified)
_BRUTE_LIMIT = 2000


@dataclass(frozen=True)
class LatticePolytope:
    ambient_dim: int
    vertices: tuple[Point, ...]

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def dim(self) -> int:
        """Affine dimension; -1 when empty."""
        return affine_dimension(self.vertices)

    def translate(self, v: Sequence[int]) -> "LatticePolytope":
        return LatticePolytope(
            self.ambient_dim, tuple(sorted(tuple(a + b for a, b in zip(p, v)) for p in self.vertices))
        )

    def dilate(self, t: int) -> "LatticePolytope":
        return dilate(self, t)


def _to_point(p) -> Point:
    out = []
    for x in p:
        if isinstance(x, float) or (isinstance(x, Fraction) and x.denominator != 1):
            raise ValueError(f"non-integral coordinate {x!r}")
        out.append(int(x))
    return tuple(out)


def affine_dimension(points: Sequence[Point]) -> int:
    pts = list(points)
    if not pts:
        return -1
    base = pts[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    if not diffs:
        return 0
    _, pivots = rref_rows(diffs, len(base))
    return len(pivots)


def _normal_of(diffs: list[list[int]], d: int) -> list[int]:
    """Generalized cross product of d-1 vectors in Z^d."""
    if d == 2:
        (a, b), = diffs
        return [-b, a]
    if d == 3:
        (a1, a2, a3), (b1, b2, b3) = diffs
        return [a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1]
    return [
        (-1) ** c * bareiss_det([row[:c] + row[c + 1 :] for row in diffs]) for c in range(d)
    ]


def _supporting(points: tuple[Point, ...], combo: Sequence[int]):
    """Outward primitive (normal, offset, on-set) of the hyperplane through the
    points in ``combo`` if it supports the configuration, else None."""
    d = len(points[0])
    base = points[combo[0]]
    diffs = [[a - b for a, b in zip(points[i], base)] for i in combo[1:]]
    normal = _normal_of(diffs, d)
    g = 0
    for v in normal:
        g = gcd(g, v)
    if g == 0:
        return None
    normal = [v // g for v in normal]
    offset = sum(a * b for a, b in zip(normal, base))
    vals = [sum(a * b for a, b in zip(normal, p)) for p in points]
    if max(vals) == offset:
        pass
    elif min(vals) == offset:
        normal = [-v for v in normal]
        offset = -offset
        vals = [-v for v in vals]
    else:
        return None
    return tuple(normal), offset, frozenset(i for i, v in enumerate(vals) if v == offset)


def _facets_brute(points: tuple[Point, ...]):
    d = len(points[0])
    found: dict[Point, tuple[int, frozenset]] = {}
    for combo in combinations(range(len(points)), d):
        hit = _supporting(points, combo)
        if hit is not None and hit[0] not in found:
            found[hit[0]] = hit[1:]
    return found


def _facets_qhull(points: tuple[Point, ...]):
    """Candidate facets from qhull, each re-derived and checked exactly.

    For every floating-point facet equation, the points lying near it are
    collected, d affinely independent ones are chosen exactly, and the
    hyperplane through them is verified to support the configuration.
    Returns None if qhull fails or any candidate cannot be confirmed.
    """
    arr = np.array(points, dtype=float)
    try:
        hull = ConvexHull(arr)
    except QhullError:
        return None
    d = len(points[0])
    scale = 1e-7 * max(1.0, float(np.abs(arr).max()))
    found: dict[Point, tuple[int, frozenset]] = {}
    for eq in np.unique(np.round(hull.equations, 9), axis=0):
        near = np.nonzero(np.abs(arr @ eq[:-1] + eq[-1]) < scale)[0].tolist()
        if len(near) < d:
            return None
        base = points[near[0]]
        diffs = [[x - y for x, y in zip(points[i], base)] for i in near[1:]]
        _, pivots = rref_rows(diffs, d)
        combo = [near[0]]
        for i in near[1:]:
            if len(combo) == d:
                break
            trial = [[x - y for x, y in zip(points[j], base)] for j in combo[1:] + [i]]
            if len(rref_rows(trial, d)[1]) == len(trial):
                combo.append(i)
        if len(combo) < d or len(pivots) != d - 1:
            return None
        hit = _supporting(points, combo)
        if hit is None:
            return None
        if hit[0] not in found:
            found[hit[0]] = hit[1:]
    return found


def _ridges(points: tuple[Point, ...], normal: Point, on: frozenset) -> list[frozenset]:
    """Faces of codimension one inside the facet with the given normal and point set."""
    d = len(normal)
    j = max(range(d), key=lambda c: abs(normal[c]))
    idx = sorted(on)
    proj = [points[i][:j] + points[i][j + 1 :] for i in idx]
    if d == 2:
        return [frozenset({idx[proj.index(min(proj))]}), frozenset({idx[proj.index(max(proj))]})]
    return [frozenset(idx[k] for k in sub) for _, _, sub in _facets(tuple(proj))]


def _is_closed(points: tuple[Point, ...], found: dict) -> bool:
    """Every ridge of every facet lies in exactly one other facet.

    A proper subset of the facets of a polytope always leaves some ridge
    with a single incident facet, so this certifies the list is complete.
    """
    facets = list(found.items())
    for k, (normal, (_, on)) in enumerate(facets):
        for ridge in _ridges(points, normal, on):
            partners = sum(1 for m, (_, (_, other)) in enumerate(facets) if m != k and ridge <= other)
            if partners != 1:
                return False
    return True


@lru_cache(maxsize=4096)
def _facets(points: tuple[Point, ...]) -> tuple[tuple[Point, int, frozenset], ...]:
    """Facets of a full-dimensional point configuration in Z^d, d >= 2.

    Each facet is (primitive outward normal a, offset b, indices of the points
    on it), with a.x <= b on the hull.  Small inputs are enumerated over all
    d-subsets; larger ones start from qhull, verify every facet exactly and check
    that the facets close up, falling back to enumeration otherwise.
    """
    d = len(points[0])
    found = None
    if comb(len(points), d) > _BRUTE_LIMIT:
        found = _facets_qhull(points)
        if found is not None and not _is_closed(points, found):
            found = None
    if found is None:
        found = _facets_brute(points)
    return tuple((n, b, on) for n, (b, on) in found.items())


def _full_dim_vertices(points: tuple[Point, ...]) -> list[Point]:
    d = len(points[0])
    if d == 1:
        return sorted({min(points), max(points)})
    facets = _facets(points)
    out = []
    for i, p in enumerate(points):
        normals = [list(n) for n, _, on in facets if i in on]
        if len(normals) >= d and len(rref_rows(normals, d)[1]) == d:
            out.append(p)
    return out


def _hull_vertices(points: list[Point]) -> list[Point]:
    if len(points) <= 1:
        return list(points)
    d = len(points[0])
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    _, pivots = rref_rows(diffs, d)
    k = len(pivots)
    if k == 0:
        return [points[0]]
    if k == d:
        return _full_dim_vertices(tuple(points))
    # injective coordinate projection of the affine hull onto R^k
    lookup = {tuple(p[c] for c in pivots): p for p in points}
    return [lookup[v] for v in _hull_vertices(sorted(lookup))]


def convex_hull(points: Iterable[Sequence[int]], ambient_dim: int | None = None) -> LatticePolytope:
    """Irredundant vertex set of the hull, sorted lexicographically."""
    pts = sorted({_to_point(p) for p in points})
    lengths = {len(p) for p in pts}
    if len(lengths) > 1:
        raise ValueError("points have mixed lengths")
    if not pts:
        if ambient_dim is None:
            raise ValueError("ambient_dim is required for an empty point set")
        return LatticePolytope(ambient_dim, ())
    d = lengths.pop()
    if ambient_dim is not None and ambient_dim != d:
        raise ValueError(f"points have length {d}, expected {ambient_dim}")
    return LatticePolytope(d, tuple(sorted(_hull_vertices(pts))))


def standard_simplex(n: int) -> LatticePolytope:
    pts = [tuple(0 for _ in range(n))]
    pts += [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    return LatticePolytope(n, tuple(sorted(pts)))


def dilate(p: LatticePolytope, t: int) -> LatticePolytope:
    if t == 0:
        return LatticePolytope(p.ambient_dim, (tuple(0 for _ in range(p.ambient_dim)),) if p.vertices else ())
    verts = sorted(tuple(t * x for x in v) for v in p.vertices)
    return LatticePolytope(p.ambient_dim, tuple(verts))


def minkowski_sum(p: LatticePolytope, q: LatticePolytope) -> LatticePolytope:
    if p.ambient_dim != q.ambient_dim:
        raise ValueError("ambient dimensions differ")
    if p.is_empty or q.is_empty:
        raise EmptyPolytopeError("empty summand")
    sums = {tuple(a + b for a, b in zip(u, v)) for u in p.vertices for v in q.vertices}
    return convex_hull(sums, p.ambient_dim)


@lru_cache(maxsize=4096)
def _volume(points: tuple[Point, ...]) -> Fraction:
    """Euclidean volume of a full-dimensional configuration.

    Cone decomposition from the first point over the facets; each facet is
    measured through its projection along a coordinate with nonzero normal
    entry, which keeps everything rational.
    """
    d = len(points[0])
    if d == 1:
        return Fraction(max(points)[0] - min(points)[0])
    v0 = points[0]
    total = Fraction(0)
    for normal, offset, on in _facets(points):
        height = offset - sum(a * b for a, b in zip(normal, v0))
        if height == 0:
            continue
        j = max(range(d), key=lambda c: abs(normal[c]))
        face = tuple(sorted({points[i][:j] + points[i][j + 1 :] for i in on}))
        total += Fraction(height, abs(normal[j])) * _volume(face)
    return total / d


def euclidean_volume(p: LatticePolytope) -> Fraction:
    """d-dimensional volume; zero for empty or lower-dimensional polytopes."""
    if p.ambient_dim == 0:
        return Fraction(1) if p.vertices else Fraction(0)
    if p.is_empty or affine_dimension(p.vertices) < p.ambient_dim:
        return Fraction(0)
    return _volume(p.vertices)


def _as_int(v: Fraction) -> int:
    if v.denominator != 1:
        raise ArithmeticError(f"expected an integer, got {v}")
    return int(v)


def normalized_volume(p: LatticePolytope) -> int:
    return _as_int(factorial(p.ambient_dim) * euclidean_volume(p))


def mixed_volume_pair_sequence(p: LatticePolytope, q: LatticePolytope, n: int) -> list[int]:
    """[MV_n(p^(n-i), q^i) for i = 0..n] by interpolating vol(p + t q), t = 0..n."""
    if p.ambient_dim != n or q.ambient_dim != n:
        raise ValueError(f"polytopes must live in R^{n}")
    if q.is_empty or p.is_empty:
        raise EmptyPolytopeError("empty argument to a mixed volume")
    if affine_dimension(p.vertices) < n:
        raise DegeneratePolytopeError("base polytope degenerate")
    values = [euclidean_volume(minkowski_sum(p, dilate(q, t))) for t in range(n + 1)]
    poly = interpolate(range(n + 1), values)
    coeffs = list(poly.coeffs) + [Fraction(0)] * (n + 1 - len(poly.coeffs))
    out = [_as_int(factorial(i) * factorial(n - i) * coeffs[i]) for i in range(n + 1)]
    if any(v < 0 for v in out):
        raise ArithmeticError(f"negative mixed volume {out}")
    return out


def mixed_volume_inclusion_exclusion(ps: Sequence[LatticePolytope]) -> int:
    """MV_n(P_1..P_n) = sum over nonempty S of (-1)^(n-|S|) vol(sum of P_i, i in S)."""
    n = len(ps)
    if n == 0:
        raise ValueError("need at least one polytope")
    if any(p.ambient_dim != n for p in ps):
        raise ValueError(f"all polytopes must live in R^{n}")
    if any(p.is_empty for p in ps):
        raise EmptyPolytopeError("empty argument to a mixed volume")
    total = Fraction(0)
    for size in range(1, n + 1):
        for subset in combinations(range(n), size):
            acc = ps[subset[0]]
            for i in subset[1:]:
                acc = minkowski_sum(acc, ps[i])
            total += (-1) ** (n - size) * euclidean_volume(acc)
    return _as_int(total)


def _simplex_tests(vertices: Sequence[Point], d: int):
    """Integer barycentric data for every full-dimensional simplex on the vertices."""
    tests = []
    for combo in combinations(vertices, d + 1):
        w0 = combo[0]
        cols = [[a - b for a, b in zip(w, w0)] for w in combo[1:]]
        # A has these vectors as columns; det(A) = det(A^T)
        det = bareiss_det(cols)
        if det == 0:
            continue
        # cofactors of A, where A has the edge vectors as columns and cols = A^T;
        # barycentric coordinates times det(A) are rel @ cof
        cof = np.zeros((d, d), dtype=object)
        for i in range(d):
            for j in range(d):
                minor = [row[:i] + row[i + 1 :] for k, row in enumerate(cols) if k != j]
                cof[i, j] = (-1) ** (i + j) * bareiss_det(minor) if d > 1 else 1
        sign = 1 if det > 0 else -1
        tests.append((np.array(w0, dtype=np.int64), (sign * cof).astype(np.int64), abs(det)))
    return tests


def lattice_point_count(p: LatticePolytope, t: int = 1) -> int:
    """Number of lattice points in t*p, by enumeration over the bounding box.

    Membership is decided by barycentric coordinates in simplices spanned by
    vertices, independent of any facet description.
    """
    d = p.ambient_dim
    if p.is_empty:
        return 0
    if t == 0:
        return 1
    verts = np.array(p.vertices, dtype=np.int64)
    lo, hi = t * verts.min(axis=0), t * verts.max(axis=0)
    axes = [np.arange(a, b + 1) for a, b in zip(lo, hi)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, d)
    inside = np.zeros(len(grid), dtype=bool)
    for w0, cof, det in _simplex_tests(p.vertices, d):
        rel = grid[~inside] - t * w0
        lam = rel @ cof
        ok = (lam >= 0).all(axis=1) & (lam.sum(axis=1) <= t * det)
        idx = np.flatnonzero(~inside)
        inside[idx[ok]] = True
    return int(inside.sum())


def ehrhart_normalized_volume(p: LatticePolytope) -> int:
    """d! times the leading Ehrhart coefficient, from lattice point counts of t*p."""
    d = p.ambient_dim
    if d > 3:
        raise ValueError("Ehrhart oracle is limited to dimension <= 3")
    if p.is_empty or affine_dimension(p.vertices) < d:
        raise DegeneratePolytopeError("dimension deficient")
    counts = [lattice_point_count(p, t) for t in range(d + 1)]
    poly = interpolate(range(d + 1), counts)
    return _as_int(factorial(d) * poly.coeffs[d])


# ---------------------------------------------------------------------------
# homogeneous polytopes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomogeneousPolytope:
    """Lattice polytope in {u >= 0, sum(u) = level} inside R^ambient_dim."""

    ambient_dim: int
    level: int
    vertices: tuple[Point, ...]

    def __post_init__(self):
        for v in self.vertices:
            if len(v) != self.ambient_dim or min(v, default=0) < 0 or sum(v) != self.level:
                raise ValueError(f"vertex {v} is not a nonnegative point at level {self.level}")

    @property
    def is_empty(self) -> bool:
        return not self.vertices


def homogeneous_polytope(points: Iterable[Sequence[int]], ambient_dim: int | None = None,
                         level: int | None = None) -> HomogeneousPolytope:
    pts = [_to_point(p) for p in points]
    if not pts:
        if ambient_dim is None or level is None:
            raise ValueError("ambient_dim and level are required for an empty polytope")
        return HomogeneousPolytope(ambient_dim, level, ())
    levels = {sum(p) for p in pts}
    if len(levels) != 1:
        raise ValueError("points do not share a coordinate sum")
    hull = convex_hull(pts, ambient_dim)
    return HomogeneousPolytope(hull.ambient_dim, levels.pop(), hull.vertices)


def homog_project(p: HomogeneousPolytope) -> LatticePolytope:
    """Drop coordinate 0; a lattice isomorphism of the level hyperplane onto R^n."""
    if p.is_empty:
        raise EmptyPolytopeError("cannot project an empty polytope")
    return LatticePolytope(p.ambient_dim - 1, tuple(sorted(v[1:] for v in p.vertices)))


def coordinate_section(p: HomogeneousPolytope, coords: Iterable[int]) -> HomogeneousPolytope:
    """Intersection with the coordinate plane spanned by ``coords``, re-indexed.

    Because coordinates are nonnegative this intersection is a face, namely the
    hull of the vertices supported on ``coords``.
    """
    J = sorted(set(coords))
    if not J:
        raise ValueError("coordinate set must be nonempty")
    keep = set(J)
    verts = [
        tuple(v[j] for j in J)
        for v in p.vertices
        if all(x == 0 for i, x in enumerate(v) if i not in keep)
    ]
    return HomogeneousPolytope(len(J), p.level, tuple(sorted(verts)))


def m_sequence(p: HomogeneousPolytope) -> list[int]:
    """[m_0..m_k]: mixed volumes of the polytope against the standard simplex."""
    k = p.ambient_dim - 1
    if p.is_empty:
        return [0] * (k + 1)
    if k == 0:
        return [1]
    return mixed_volume_pair_sequence(standard_simplex(k), homog_project(p), k)
