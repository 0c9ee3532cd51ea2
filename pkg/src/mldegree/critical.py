"""Counting critical points of master functions by exact elimination.

Supported cases: arrangements on the line, line arrangements in the plane,
and curves {g = 0} in the two-dimensional torus.  Points are never computed,
only counted: the two critical equations are sheared, one variable is
eliminated with a resultant, boundary solutions are divided out, and the
distinct roots of what remains are counted.  A count is certified only if it
is stable across several shears and both elimination orders.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import DegeneratePolytopeError, NonGenericError, ZeroPolynomialError
from .exactmath import (
    BiPoly,
    UniPoly,
    as_rational,
    distinct_root_count,
    poly_gcd,
    sylvester_resultant,
)
from .arrangement import Arrangement, Hyperplane, classify, ml_degree_arrangement
from .newton import LaurentPolynomial, newton_polytope
from .polytope import affine_dimension, normalized_volume

EXPONENT_RANGE = 10**6
SHEAR_RANGE = 100
RETRY_BUDGET = 5


@dataclass(frozen=True)
class MasterFunction:
    """phi_u = prod f_i^{u_i} for affine forms f_i."""

    forms: tuple[Hyperplane, ...]
    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.forms) != len(self.exponents):
            raise ValueError("one exponent per form is required")
        if len(set(self.forms)) != len(self.forms):
            raise ValueError("forms must be pairwise distinct")
        if not any(self.exponents):
            raise ValueError("exponents are all zero")

    def critical_equations(self) -> tuple[BiPoly, BiPoly]:
        """P_k = sum_i u_i (d_k f_i) prod_{j != i} f_j, for k = x, y (two variables only)."""
        fs = [BiPoly.linear(h.normal[0], h.normal[1], h.offset) for h in self.forms]
        eqs = []
        for k in range(2):
            total = BiPoly()
            for i, (h, u) in enumerate(zip(self.forms, self.exponents)):
                if h.normal[k] == 0 or u == 0:
                    continue
                term = BiPoly.constant(u * h.normal[k])
                for j, f in enumerate(fs):
                    if j != i:
                        term = term * f
                total = total + term
            eqs.append(total)
        return eqs[0], eqs[1]

    def boundary(self) -> list[BiPoly]:
        return [BiPoly.linear(h.normal[0], h.normal[1], h.offset) for h in self.forms]


@dataclass
class CountReport:
    count: int | None
    certified: bool
    shears_used: int
    expected: int | None = None
    degenerate_draws: int = 0
    squarefree: bool = True
    counts: list[int] = field(default_factory=list)
    exponents: tuple[int, ...] = ()

    @property
    def agrees(self) -> bool:
        return self.certified and (self.expected is None or self.count == self.expected)


def draw_exponents(n: int, rng: random.Random, bound: int = EXPONENT_RANGE) -> tuple[int, ...]:
    out = []
    while len(out) < n:
        u = rng.randint(-bound, bound)
        if u:
            out.append(u)
    return tuple(out)


def critical_count_r1(points: Sequence, u: Sequence[int]) -> CountReport:
    """Critical points of prod (x - a_i)^{u_i} on the punctured line.

    They are the roots of p(x) = sum_i u_i prod_{j != i} (x - a_j) that avoid
    every a_i.
    """
    pts = [as_rational(a) for a in points]
    u = tuple(int(v) for v in u)
    if len(pts) < 2:
        raise ValueError("need at least two points")
    if len(set(pts)) != len(pts):
        raise ValueError("points must be distinct")
    if len(u) != len(pts):
        raise ValueError("one exponent per point is required")
    p = UniPoly()
    for i, ui in enumerate(u):
        p = p + UniPoly.from_roots(pts[:i] + pts[i + 1 :]) * ui
    if p.is_zero():
        raise ZeroPolynomialError("exponents annihilate: the critical equation is identically zero")
    boundary = UniPoly.from_roots(pts)
    g = poly_gcd(p, boundary)
    while g.degree > 0:
        p = p // g
        g = poly_gcd(p, boundary)
    count = distinct_root_count(p)
    return CountReport(
        count=count,
        certified=True,
        shears_used=0,
        expected=len(pts) - 1,
        squarefree=count == p.degree,
        counts=[count],
        exponents=u,
    )


class _Degenerate(Exception):
    pass


def _strip(r: UniPoly, s: UniPoly) -> UniPoly:
    g = poly_gcd(r, s)
    while g.degree > 0:
        r = r // g
        g = poly_gcd(r, s)
    return r


def _boundary_roots(factor: BiPoly, a: BiPoly, b: BiPoly, eliminate: int) -> UniPoly:
    """Projections of the common zeros of a, b on {factor = 0}.

    Each is a root of both Res(factor, a) and Res(factor, b).  A resultant
    that vanishes identically means factor divides that equation, and the
    other one alone locates the boundary zeros.
    """
    rs = [sylvester_resultant(factor, p, eliminate) for p in (a, b)]
    rs = [r for r in rs if not r.is_zero()]
    if not rs:
        raise _Degenerate("boundary component shared by both equations")
    return poly_gcd(*rs) if len(rs) == 2 else rs[0]


def _count_after_shear(g1: BiPoly, g2: BiPoly, boundary: Sequence[BiPoly], lam: int,
                       eliminate: int):
    """One elimination: shear so the eliminated variable is in general position,
    take the resultant, remove boundary roots and count distinct roots."""
    if eliminate == 1:
        shear = (1, lam, 0, 1)  # x -> x + lam*y
    else:
        shear = (1, 0, lam, 1)  # y -> y + lam*x
    a, b = (p.compose_linear(*shear) for p in (g1, g2))
    factors = [f.compose_linear(*shear) for f in boundary]
    if a.is_zero() or b.is_zero():
        raise NonGenericError("critical equation vanishes identically: non-generic data")
    if a.total_degree == 0 or b.total_degree == 0:
        return 0, True
    for p in (a, b, *factors):
        # leading coefficient in the eliminated variable must be a constant
        if p.degree(eliminate) != p.total_degree:
            raise _Degenerate("leading coefficient is not constant after the shear")
    res = sylvester_resultant(a, b, eliminate)
    if res.is_zero():
        raise _Degenerate("resultant vanishes identically")
    for f in factors:
        res = _strip(res, _boundary_roots(f, a, b, eliminate))
    count = distinct_root_count(res)
    return count, count == res.degree


def _certified_count(g1: BiPoly, g2: BiPoly, boundary: Sequence[BiPoly], rng: random.Random,
                     shears: int) -> CountReport:
    counts: list[int] = []
    squarefree = True
    degenerate = 0
    used = 0
    for _ in range(shears):
        for eliminate in (1, 0):
            for _attempt in range(RETRY_BUDGET + 1):
                lam = rng.randint(1, SHEAR_RANGE)
                used += 1
                try:
                    c, sf = _count_after_shear(g1, g2, boundary, lam, eliminate)
                except _Degenerate:
                    degenerate += 1
                    continue
                counts.append(c)
                squarefree = squarefree and sf
                break
            else:
                raise NonGenericError("common component: non-generic data")
    certified = len(set(counts)) == 1
    return CountReport(
        count=counts[0] if certified else None,
        certified=certified,
        shears_used=used,
        degenerate_draws=degenerate,
        squarefree=squarefree,
        counts=counts,
    )


def critical_count_r2(a: Arrangement, u: Sequence[int] | None = None, seed: int = 0,
                      shears: int = 3) -> CountReport:
    """Critical points of a master function on the complement of a line arrangement."""
    if a.dim != 2:
        raise ValueError("critical_count_r2 needs an arrangement in the plane")
    if not classify(a).essential:
        raise ValueError("arrangement must be essential")
    rng = random.Random(seed)
    if u is None:
        u = draw_exponents(len(a), rng)
    mf = MasterFunction(a.hyperplanes, tuple(int(v) for v in u))
    p1, p2 = mf.critical_equations()
    report = _certified_count(p1, p2, mf.boundary(), rng, shears)
    report.expected = ml_degree_arrangement(a)
    report.exponents = mf.exponents
    return report


def _as_bipoly(g: LaurentPolynomial) -> BiPoly:
    """g times the monomial clearing negative exponents and common factors of x, y."""
    lo = [min(e[i] for e in g.terms) for i in range(2)]
    return BiPoly({(e[0] - lo[0], e[1] - lo[1]): c for e, c in g.terms.items()})


def curve_critical_count(g: LaurentPolynomial, u: Sequence[int] | None = None, seed: int = 0,
                         shears: int = 3) -> CountReport:
    """Critical points of x^u1 y^u2 on {g = 0} in the torus.

    On the curve, dlog of the monomial is proportional to dg exactly when
    u1 * y * g_y - u2 * x * g_x vanishes.
    """
    if g.nvars != 2:
        raise ValueError("curve_critical_count needs a Laurent polynomial in two variables")
    if g.is_zero():
        raise ValueError("zero polynomial")
    delta = newton_polytope(g)
    if affine_dimension(delta.vertices) == 0:
        raise DegeneratePolytopeError("Newton polytope degenerate: g is a monomial")
    rng = random.Random(seed)
    if u is None:
        u = draw_exponents(2, rng)
    u1, u2 = (int(v) for v in u)
    if not (u1 or u2):
        raise ValueError("exponents are all zero")
    gb = _as_bipoly(g)
    x, y = BiPoly.var(0), BiPoly.var(1)
    eq = y * gb.derivative(1) * u1 - x * gb.derivative(0) * u2
    report = _certified_count(gb, eq, [x, y], rng, shears)
    report.expected = normalized_volume(delta)
    report.exponents = (u1, u2)
    return report
