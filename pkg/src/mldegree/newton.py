"""CSM vectors and ML degrees of nondegenerate torus hypersurfaces, and the
projective pipeline (coordinate-section mixed volumes, mixed Newton numbers,
Milnor numbers, gradient-map degree).

Nondegeneracy of the input polynomial is assumed, never certified: only the
support of the polynomial enters the formulas.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Mapping, Sequence

from .errors import EmptyPolytopeError
from .exactmath import SequenceProperties, as_rational, logconcave_no_internal_zeros
from .polytope import (
    HomogeneousPolytope,
    LatticePolytope,
    convex_hull,
    coordinate_section,
    homogeneous_polytope,
    m_sequence,
    mixed_volume_pair_sequence,
    standard_simplex,
)


def _clean_terms(terms: Mapping, nvars: int) -> dict[tuple[int, ...], Fraction]:
    out: dict[tuple[int, ...], Fraction] = {}
    for exp, c in terms.items():
        exp = tuple(int(e) for e in exp)
        if len(exp) != nvars:
            raise ValueError(f"exponent {exp} does not have {nvars} entries")
        c = as_rational(c)
        if c:
            out[exp] = out.get(exp, Fraction(0)) + c
            if not out[exp]:
                del out[exp]
    return out


@dataclass(frozen=True, eq=False)
class LaurentPolynomial:
    nvars: int
    terms: Mapping[tuple[int, ...], Fraction]

    def __post_init__(self):
        if self.nvars < 1:
            raise ValueError("a Laurent polynomial needs at least one variable")
        object.__setattr__(self, "terms", _clean_terms(self.terms, self.nvars))

    def __eq__(self, other):
        return isinstance(other, LaurentPolynomial) and (self.nvars, self.terms) == (other.nvars, other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[tuple[int, ...]]:
        return sorted(self.terms)


@dataclass(frozen=True, eq=False)
class HomogeneousPolynomial(LaurentPolynomial):
    """Nonconstant polynomial whose exponents are nonnegative and share a degree."""

    def __post_init__(self):
        super().__post_init__()
        if not self.terms:
            raise ValueError("homogeneous polynomial must be nonzero")
        degrees = {sum(e) for e in self.terms}
        if len(degrees) != 1:
            raise ValueError("polynomial is not homogeneous")
        if any(min(e) < 0 for e in self.terms):
            raise ValueError("homogeneous polynomial has a negative exponent")
        if degrees.pop() < 1:
            raise ValueError("homogeneous polynomial must be nonconstant")

    @property
    def degree(self) -> int:
        return sum(next(iter(self.terms)))


@dataclass(frozen=True)
class CsmVector:
    """Unsigned CSM coefficients v_0..v_r; the class is sum (-1)^i v_i [P^(r-i)]."""

    values: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.values) - 1

    @property
    def ml_degree(self) -> int:
        return self.values[-1]

    @property
    def euler(self) -> int:
        """Topological Euler characteristic (-1)^r v_r."""
        return (-1) ** self.r * self.values[-1]

    def signed(self) -> list[int]:
        return [(-1) ** i * v for i, v in enumerate(self.values)]

    def properties(self) -> SequenceProperties:
        return logconcave_no_internal_zeros(self.values)


@dataclass(frozen=True)
class VTable:
    """V[k][l] for 0 <= l <= k <= n; row k has k + 1 entries."""

    n: int
    entries: tuple[tuple[int, ...], ...]

    def __getitem__(self, k: int) -> tuple[int, ...]:
        return self.entries[k]

    def get(self, k: int, l: int) -> int:
        if k < 0 or l < 0 or l > k:
            return 0
        return self.entries[k][l]


@dataclass(frozen=True)
class MilnorVector:
    values: tuple[int, ...]

    @property
    def gradient_degree(self) -> int:
        return self.values[-1]


def newton_polytope(g: LaurentPolynomial) -> LatticePolytope:
    if g.is_zero():
        raise ValueError("the zero polynomial has no Newton polytope")
    return convex_hull(g.terms.keys(), g.nvars)


def csm_hypersurface_vector(delta_g: LatticePolytope, n: int) -> CsmVector:
    """v_i = MV_n(simplex^(r-i), delta_g^(i+1)), i = 0..r with r = n - 1."""
    if delta_g.is_empty:
        raise EmptyPolytopeError("empty Newton polytope")
    seq = mixed_volume_pair_sequence(standard_simplex(n), delta_g, n)
    return CsmVector(tuple(seq[1:]))


def ml_degree_hypersurface(delta_g: LatticePolytope, n: int) -> int:
    return csm_hypersurface_vector(delta_g, n).ml_degree


def statistical_ml_degree(delta_g: LatticePolytope, n: int) -> int:
    """ML degree of the hypersurface model cut out of the probability simplex
    by the extra hyperplane p_0 + ... + p_n; the sum of all n CSM coefficients."""
    return sum(csm_hypersurface_vector(delta_g, n).values)


def v_table(delta_star: HomogeneousPolytope) -> VTable:
    n = delta_star.ambient_dim - 1
    rows = []
    for k in range(n + 1):
        row = [0] * (k + 1)
        for J in combinations(range(n + 1), k + 1):
            for l, m in enumerate(m_sequence(coordinate_section(delta_star, J))):
                row[l] += m
        rows.append(tuple(row))
    return VTable(n, tuple(rows))


def newton_numbers(delta_star: HomogeneousPolytope | VTable) -> list[int]:
    """nu_i = V[n][i] - V[n-1][i-1] + ... + (-1)^i V[n-i][0]."""
    table = delta_star if isinstance(delta_star, VTable) else v_table(delta_star)
    n = table.n
    return [sum((-1) ** j * table.get(n - j, i - j) for j in range(i + 1)) for i in range(n + 1)]


def milnor_vector(nu: Sequence[int], n: int) -> MilnorVector:
    """Solve sum_{i<=j} (-1)^i mu^i C(n-i, j-i) = (-1)^j nu_j for mu, triangularly.

    This equates the two expressions for the CSM class of the complement of
    the hypersurface in P^n, written in powers of the hyperplane class.
    """
    nu = [int(v) for v in nu]
    if len(nu) != n + 1:
        raise ValueError(f"expected {n + 1} Newton numbers, got {len(nu)}")
    if nu[0] != 1:
        warnings.warn(f"nu_0 = {nu[0]}; expected 1 for a nonempty polytope", stacklevel=2)
    mu: list[int] = []
    for j in range(n + 1):
        acc = sum((-1) ** i * mu[i] * comb(n - i, j - i) for i in range(j))
        mu.append((-1) ** j * ((-1) ** j * nu[j] - acc))
    return MilnorVector(tuple(mu))


@dataclass(frozen=True)
class GradientReport:
    vtable: VTable
    nu: tuple[int, ...]
    mu: MilnorVector
    gradient_degree: int
    homaloidal: bool


def homogeneous_newton_polytope(h: HomogeneousPolynomial) -> HomogeneousPolytope:
    return homogeneous_polytope(h.terms.keys(), h.nvars)


def gradient_degree(h: HomogeneousPolynomial) -> GradientReport:
    if not isinstance(h, HomogeneousPolynomial):
        h = HomogeneousPolynomial(h.nvars, h.terms)
    n = h.nvars - 1
    table = v_table(homogeneous_newton_polytope(h))
    nu = newton_numbers(table)
    mu = milnor_vector(nu, n)
    assert mu.gradient_degree == sum(nu)
    return GradientReport(table, tuple(nu), mu, mu.gradient_degree, mu.gradient_degree == 1)


def projective_csm(h: HomogeneousPolynomial) -> list[int]:
    """Signed coefficients (-1)^i nu_i of [P^(n-i)] in the CSM class of {h != 0}."""
    return [(-1) ** i * v for i, v in enumerate(gradient_degree(h).nu)]
