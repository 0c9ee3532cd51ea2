"""Affine hyperplane arrangements over Q: intersection posets, characteristic
polynomials, deletion-restriction, CSM vectors and ML degrees of complements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .errors import ArrangementError, NotVeryAffineError
from .exactmath import UniPoly, as_rational, bareiss_det, rref_rows
from .newton import CsmVector


@dataclass(frozen=True)
class Hyperplane:
    """{normal . x + offset = 0}, scaled so the first nonzero normal entry is 1."""

    normal: tuple[Fraction, ...]
    offset: Fraction

    def __post_init__(self):
        a = tuple(as_rational(x) for x in self.normal)
        b = as_rational(self.offset)
        lead = next((x for x in a if x != 0), None)
        if lead is None:
            raise ArrangementError("zero normal")
        object.__setattr__(self, "normal", tuple(x / lead for x in a))
        object.__setattr__(self, "offset", b / lead)

    @property
    def dim(self) -> int:
        return len(self.normal)

    @property
    def row(self) -> tuple[Fraction, ...]:
        return self.normal + (self.offset,)

    def __call__(self, point: Sequence) -> Fraction:
        return sum((a * as_rational(x) for a, x in zip(self.normal, point)), self.offset)

    def integer_row(self) -> list[int]:
        den = lcm(*(x.denominator for x in self.row))
        return [int(x * den) for x in self.row]


@dataclass(frozen=True)
class Arrangement:
    dim: int
    hyperplanes: tuple[Hyperplane, ...]

    def __post_init__(self):
        hs = tuple(self.hyperplanes)
        object.__setattr__(self, "hyperplanes", hs)
        if self.dim < 0:
            raise ArrangementError("negative dimension")
        for h in hs:
            if h.dim != self.dim:
                raise ArrangementError(f"hyperplane of dimension {h.dim} in an arrangement of dimension {self.dim}")
        if len(set(hs)) != len(hs):
            pairs = [f"{hs.index(h)} and {i}" for i, h in enumerate(hs) if hs.index(h) != i]
            raise ArrangementError(f"duplicate hyperplane: indices {', '.join(pairs)}")

    @classmethod
    def from_rows(cls, dim: int, rows: Iterable[Sequence]) -> "Arrangement":
        """Build from rows (a_1, ..., a_r, b) meaning a.x + b = 0."""
        return cls(dim, tuple(Hyperplane(tuple(r[:dim]), r[dim]) for r in rows))

    def __len__(self) -> int:
        return len(self.hyperplanes)


@dataclass(frozen=True)
class Flat:
    signature: tuple[tuple[Fraction, ...], ...]
    dim: int
    hyperplanes: frozenset[int]
    mobius: int


@dataclass(frozen=True)
class IntersectionPoset:
    dim: int
    flats: tuple[Flat, ...]

    def char_poly(self) -> UniPoly:
        coeffs = [0] * (self.dim + 1)
        for f in self.flats:
            coeffs[f.dim] += f.mobius
        return UniPoly(tuple(coeffs))


def _in_span(row: Sequence[Fraction], basis: list[list[Fraction]], pivots: list[int]) -> bool:
    v = list(row)
    for b, c in zip(basis, pivots):
        if v[c]:
            f = v[c]
            v = [x - f * y for x, y in zip(v, b)]
    return not any(v)


def intersection_poset(a: Arrangement) -> IntersectionPoset:
    r = a.dim
    rows = [list(h.row) for h in a.hyperplanes]
    bottom = Flat((), r, frozenset(), 1)
    flats: dict[tuple, tuple[int, frozenset]] = {(): (r, frozenset())}
    frontier = [((), [], [])]
    while frontier:
        nxt = []
        for _sig, basis, pivots in frontier:
            for i, row in enumerate(rows):
                if basis and _in_span(row, basis, pivots):
                    continue
                nb, npiv = rref_rows(basis + [row], r + 1)
                if npiv and npiv[-1] == r:
                    continue  # inconsistent: empty intersection
                sig = tuple(tuple(x) for x in nb)
                if sig in flats:
                    continue
                hyps = frozenset(j for j, rj in enumerate(rows) if _in_span(rj, nb, npiv))
                flats[sig] = (r - len(npiv), hyps)
                nxt.append((sig, nb, npiv))
        frontier = nxt
    ordered = sorted(flats.items(), key=lambda kv: (-kv[1][0], sorted(kv[1][1])))
    mobius: dict[tuple, int] = {}
    out = []
    for sig, (dim, hyps) in ordered:
        if not sig:
            mu = 1
        else:
            mu = -sum(mobius[s2] for s2, (_d2, h2) in ordered if s2 in mobius and h2 < hyps)
        mobius[sig] = mu
        out.append(Flat(sig, dim, hyps, mu))
    for f in out[1:]:
        below = sum(g.mobius for g in out if g.hyperplanes <= f.hyperplanes)
        assert below == 0, "Mobius recursion violated"
    assert out[0] == bottom
    return IntersectionPoset(r, tuple(out))


def char_poly(a: Arrangement) -> UniPoly:
    """chi_A(q) = sum over flats X of mu(X) q^dim(X)."""
    return intersection_poset(a).char_poly()


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _integral_rows(a: Arrangement) -> list[list[int]]:
    return [h.integer_row() for h in a.hyperplanes]


def finite_field_complement_count(a: Arrangement, p: int, budget: int = 10**6) -> int:
    """|{x in F_p^r : every defining form is nonzero mod p}|, by enumeration."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    r = a.dim
    if p**r > budget:
        raise ValueError(f"p^r = {p}^{r} exceeds the enumeration budget {budget}")
    rows = np.array(_integral_rows(a), dtype=np.int64).reshape(len(a), r + 1) % p
    if r == 0:
        return int(all(row[-1] % p for row in rows))
    grids = np.meshgrid(*[np.arange(p, dtype=np.int64)] * r, indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    alive = np.ones(len(pts), dtype=bool)
    for row in rows:
        vals = (pts @ row[:r] + row[r]) % p
        alive &= vals != 0
    return int(alive.sum())


def is_good_prime(a: Arrangement, p: int) -> bool:
    """True when p divides no nonzero minor of the integral coefficient matrix,
    so the intersection poset over F_p matches the one over Q."""
    if not _is_prime(p):
        return False
    rows = _integral_rows(a)
    ncols = a.dim + 1
    for size in range(1, min(len(rows), ncols) + 1):
        for rsel in combinations(range(len(rows)), size):
            for csel in combinations(range(ncols), size):
                m = bareiss_det([[rows[i][j] for j in csel] for i in rsel])
                if m and m % p == 0:
                    return False
    return True


def good_primes(a: Arrangement, count: int, start: int = 5) -> list[int]:
    out = []
    p = start
    while len(out) < count:
        if is_good_prime(a, p):
            out.append(p)
        p += 1
    return out


@dataclass(frozen=True)
class Classification:
    essential: bool
    central: bool
    boolean: bool


def classify(a: Arrangement) -> Classification:
    poset = intersection_poset(a)
    essential = any(f.dim == 0 for f in poset.flats)
    everything = frozenset(range(len(a)))
    central = any(f.hyperplanes == everything for f in poset.flats)
    return Classification(essential, central, essential and len(a) == a.dim)


def _eliminate(h: Hyperplane, target_offset: Fraction = Fraction(0)):
    """Coordinates on {h = target}: substitute out the pivot coordinate of h.

    Returns a function mapping a hyperplane K to its (normal, offset) on the
    chart, i.e. K restricted to {normal_h . x + offset_h = target}.
    """
    j = next(i for i, x in enumerate(h.normal) if x != 0)
    # x_j = (target - offset_h - sum_{i != j} a_i x_i) / a_j, and a_j = 1 after scaling
    def restrict(k: Hyperplane) -> tuple[tuple[Fraction, ...], Fraction]:
        c = k.normal[j]
        normal = tuple(k.normal[i] - c * h.normal[i] for i in range(h.dim) if i != j)
        offset = k.offset + c * (target_offset - h.offset)
        return normal, offset

    return restrict


def _index_of(a: Arrangement, h: Hyperplane | int) -> int:
    if isinstance(h, int):
        if not 0 <= h < len(a):
            raise ArrangementError(f"hyperplane index {h} out of range")
        return h
    try:
        return a.hyperplanes.index(h)
    except ValueError:
        raise ArrangementError("hyperplane is not a member of the arrangement") from None


@dataclass(frozen=True)
class Triple:
    deletion: Arrangement
    restriction: Arrangement


def triple(a1: Arrangement, h: Hyperplane | int) -> Triple:
    """Deletion A1 minus h, and restriction of A1 to h in coordinates on h."""
    i = _index_of(a1, h)
    hyp = a1.hyperplanes[i]
    others = a1.hyperplanes[:i] + a1.hyperplanes[i + 1 :]
    restrict = _eliminate(hyp)
    seen: list[Hyperplane] = []
    for k in others:
        normal, offset = restrict(k)
        if not any(normal):
            continue  # parallel to h: empty intersection
        hk = Hyperplane(normal, offset)
        if hk not in seen:
            seen.append(hk)
    return Triple(Arrangement(a1.dim, others), Arrangement(a1.dim - 1, tuple(seen)))


def decone(a: Arrangement, h: Hyperplane | int) -> Arrangement:
    """Affine chart {f_h = 1} of a central arrangement.

    Translating the common point to the origin replaces every form by its
    linear part, so the chart only needs the normals.
    """
    i = _index_of(a, h)
    if not classify(a).central:
        raise ArrangementError("decone needs a central arrangement")
    hyp = a.hyperplanes[i]
    restrict = _eliminate(Hyperplane(hyp.normal, 0), target_offset=Fraction(1))
    out = []
    for j, k in enumerate(a.hyperplanes):
        if j != i:
            normal, offset = restrict(Hyperplane(k.normal, 0))
            out.append(Hyperplane(normal, offset))
    result = Arrangement(a.dim - 1, tuple(out))
    q, rem = divmod(char_poly(a), UniPoly((-1, 1)))
    if not rem.is_zero() or q != char_poly(result):
        raise ArithmeticError("decone does not divide the characteristic polynomial")
    return result


def _require_essential(a: Arrangement) -> None:
    if not classify(a).essential:
        raise NotVeryAffineError("not very affine: the arrangement is not essential")


def csm_vector_arrangement(a: Arrangement) -> CsmVector:
    """v_i = (-1)^i [q^(r-i)] chi_A(q + 1)."""
    _require_essential(a)
    shifted = char_poly(a).shift(1)
    r = a.dim
    coeffs = list(shifted.coeffs) + [Fraction(0)] * (r + 1 - len(shifted.coeffs))
    values = []
    for i in range(r + 1):
        v = (-1) ** i * coeffs[r - i]
        assert v.denominator == 1 and v >= 0, f"negative CSM coefficient {v}"
        values.append(int(v))
    return CsmVector(tuple(values))


def ml_degree_arrangement(a: Arrangement) -> int:
    _require_essential(a)
    return int((-1) ** a.dim * char_poly(a)(1))


@dataclass(frozen=True)
class RegionCounts:
    regions: int
    bounded: int
    essential: bool


def region_counts(a: Arrangement) -> RegionCounts:
    """Regions (-1)^r chi(-1) and bounded regions (-1)^r chi(1) of a real arrangement.

    The bounded count is only meaningful for essential arrangements; the
    ``essential`` flag says whether it applies.
    """
    chi = char_poly(a)
    r = a.dim
    return RegionCounts(int((-1) ** r * chi(-1)), int((-1) ** r * chi(1)), classify(a).essential)


def critical_class_bidegrees(a: Arrangement) -> list[tuple[int, tuple[int, int]]]:
    """Coefficients of [P^(r-i) x P^(n-1-r+i)] in the class of the variety of critical points."""
    c = classify(a)
    if not c.essential:
        raise NotVeryAffineError("not very affine: the arrangement is not essential")
    if c.boolean:
        raise ArrangementError("variety of critical points empty: the complement is a torus")
    v = csm_vector_arrangement(a).values
    r, n = a.dim, len(a)
    return [(v[i], (r - i, n - 1 - r + i)) for i in range(r + 1)]
