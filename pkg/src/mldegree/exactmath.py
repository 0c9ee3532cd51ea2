"""Exact arithmetic over the rationals.

Rationals are :class:`fractions.Fraction`.  Univariate polynomials are stored
low degree first; bivariate polynomials as sparse exponent maps.  Heavy
integer work (determinants, gcds, resultants) runs on ``gmpy2.mpz``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, NamedTuple, Sequence

import gmpy2
from gmpy2 import mpq, mpz

from .errors import EliminationError, ZeroPolynomialError

Rational = Fraction


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if type(value).__name__ == "mpq":
        return Fraction(int(value.numerator), int(value.denominator))
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted in exact arithmetic")
    return Fraction(int(value))


# ---------------------------------------------------------------------------
# dense matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows * cols")
        object.__setattr__(self, "entries", tuple(as_rational(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(e for r in rows for e in r))

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]


def rref_rows(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of a row list; zero rows are dropped.

    Returns the nonzero rows and their pivot columns.
    """
    m = [[as_rational(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def matrix_rank(m: RatMatrix) -> tuple[int, RatMatrix]:
    """Rank and reduced row echelon form (zero rows kept at the bottom)."""
    nonzero, pivots = rref_rows(m.to_rows(), m.cols)
    rank = len(pivots)
    padded = nonzero + [[Fraction(0)] * m.cols for _ in range(m.rows - rank)]
    return rank, RatMatrix.from_rows(padded, m.cols) if m.rows else RatMatrix(0, m.cols, ())


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    a = [[mpz(x) for x in row] for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = mpz(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            f = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = gmpy2.divexact(rowi[j] * pivot - f * rowk[j], prev)
        prev = pivot
    return int(sign * a[n - 1][n - 1])


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficient lists, low degree first)
# ---------------------------------------------------------------------------


def _strip(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _content(c: Sequence[int]) -> int:
    return reduce(gcd, (int(x) for x in c), 0)


def _primitive(c: Sequence) -> list:
    g = _content(c)
    if g == 0:
        return []
    if c[-1] < 0:
        g = -g
    return [gmpy2.divexact(mpz(x), g) for x in c]


def _prem(a: list, b: list) -> list:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b."""
    r = list(a)
    db = len(b) - 1
    e = len(r) - 1 - db + 1
    if e <= 0:
        return r
    lb = b[-1]
    while r and len(r) - 1 >= db:
        shift = len(r) - 1 - db
        c = r[-1]
        r = [lb * x for x in r]
        for i, bi in enumerate(b):
            r[i + shift] -= c * bi
        _strip(r)
        e -= 1
    if e > 0 and r:
        f = lb**e
        r = [f * x for x in r]
    return r


def _int_gcd(a: list, b: list) -> list:
    """Primitive gcd of two integer polynomials (subresultant PRS)."""
    a = _primitive(a)
    b = _primitive(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    g = h = mpz(1)
    while True:
        delta = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            return _primitive(b)
        if len(r) == 1:
            return [mpz(1)]
        div = g * h**delta
        a, b = b, [gmpy2.divexact(x, div) for x in r]
        g = a[-1]
        if delta:
            h = gmpy2.divexact(g**delta, h ** (delta - 1))


def _int_exact_quotient(a: list, b: list) -> list:
    """Primitive part of a / b, where b divides a over the rationals."""
    q = [mpz(0)] * (len(a) - len(b) + 1)
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    # scale a so every step divides exactly: lb^(k) * a = q * b
    k = len(a) - len(b) + 1
    r = [x * lb**k for x in r]
    for shift in range(len(a) - len(b), -1, -1):
        c = gmpy2.divexact(r[shift + db], lb)
        q[shift] = c
        for i, bi in enumerate(b):
            r[i + shift] -= c * bi
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    return _primitive(q)


# ---------------------------------------------------------------------------
# univariate polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UniPoly:
    """Polynomial with rational coefficients, ``coeffs[i]`` multiplies x^i."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        c = [as_rational(x) for x in self.coeffs]
        object.__setattr__(self, "coeffs", tuple(_strip(c)))

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UniPoly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-as_rational(r), 1))
        return p

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x):
        acc = Fraction(0)
        x = as_rational(x)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _coerce(self, other) -> "UniPoly":
        return other if isinstance(other, UniPoly) else UniPoly((other,))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = UniPoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        q = [Fraction(0)] * max(len(r) - db, 0)
        inv = 1 / other.lc
        for shift in range(len(r) - 1 - db, -1, -1):
            c = r[shift + db] * inv
            q[shift] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    r[i + shift] -= c * b
        return UniPoly(tuple(q)), UniPoly(tuple(r[:db]) if db > 0 else ())

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        inv = 1 / self.lc
        return UniPoly(tuple(c * inv for c in self.coeffs))

    def shift(self, c) -> "UniPoly":
        """The polynomial p(x + c)."""
        out = UniPoly()
        step = UniPoly((c, 1))
        for coef in reversed(self.coeffs):
            out = out * step + coef
        return out

    def integer_coefficients(self) -> list[int]:
        """Coefficients as ints; raises if any is not integral."""
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError(f"non-integral coefficient {c}")
            out.append(int(c))
        return out

    def _primitive_ints(self) -> list:
        den = lcm(*(c.denominator for c in self.coeffs)) if self.coeffs else 1
        return _primitive([mpz(c.numerator * (den // c.denominator)) for c in self.coeffs])

    @classmethod
    def _from_ints(cls, c: Sequence) -> "UniPoly":
        return cls(tuple(Fraction(int(x)) for x in c))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            mag = abs(c)
            coef = str(mag) if (mag != 1 or not mono) else ""
            term = coef + ("*" if coef and mono else "") + mono
            parts.append(("- " if c < 0 else "+ ") + term)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd, computed on primitive integer images by the subresultant PRS."""
    if p.is_zero() and q.is_zero():
        return UniPoly()
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    return UniPoly._from_ints(_int_gcd(p._primitive_ints(), q._primitive_ints())).monic()


def exact_quotient(p: UniPoly, q: UniPoly) -> UniPoly:
    """p / q for q dividing p; the result is scaled to be monic."""
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_zero():
        return UniPoly()
    return UniPoly._from_ints(_int_exact_quotient(p._primitive_ints(), q._primitive_ints())).monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    """Monic product of the distinct irreducible factors of p."""
    if p.is_zero():
        raise ZeroPolynomialError("identically zero")
    if p.degree == 0:
        return UniPoly((1,))
    a = p._primitive_ints()
    da = _primitive([i * c for i, c in enumerate(a) if i])
    g = _int_gcd(a, da)
    return UniPoly._from_ints(_int_exact_quotient(a, g) if len(g) > 1 else a).monic()


def distinct_root_count(p: UniPoly) -> int:
    """Number of distinct complex roots, deg(p / gcd(p, p'))."""
    return squarefree_part(p).degree


def interpolate(xs: Sequence, ys: Sequence) -> UniPoly:
    """Unique polynomial of degree < len(xs) through the given points."""
    xs = [mpq(as_rational(x).numerator, as_rational(x).denominator) for x in xs]
    coef = [mpq(as_rational(y).numerator, as_rational(y).denominator) for y in ys]
    n = len(xs)
    if len(set(xs)) != n or len(coef) != n:
        raise ValueError("interpolation nodes must be distinct and match the values")
    # divided differences
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # Newton form -> monomial basis
    out = [mpq(0)] * n
    for i in range(n - 1, -1, -1):
        # out = out * (x - xs[i]) + coef[i]
        nxt = [mpq(0)] * n
        for k in range(n - 1):
            nxt[k + 1] += out[k]
            nxt[k] -= out[k] * xs[i]
        nxt[0] += coef[i]
        out = nxt
    return UniPoly(tuple(Fraction(int(c.numerator), int(c.denominator)) for c in out))


# ---------------------------------------------------------------------------
# bivariate polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class BiPoly:
    """Sparse polynomial in two variables; keys are exponent pairs (i, j) for x^i y^j."""

    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), c in self.terms.items():
            if i < 0 or j < 0:
                raise ValueError("negative exponent in BiPoly")
            c = as_rational(c)
            if c:
                clean[(int(i), int(j))] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def var(cls, index: int) -> "BiPoly":
        return cls({(1, 0): 1} if index == 0 else {(0, 1): 1})

    @classmethod
    def constant(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def linear(cls, a, b, c) -> "BiPoly":
        """a*x + b*y + c."""
        return cls({(1, 0): a, (0, 1): b, (0, 0): c})

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other) -> "BiPoly":
        return other if isinstance(other, BiPoly) else BiPoly.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                key = (i + k, j + l)
                out[key] = out.get(key, 0) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = BiPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def degree(self, var: int) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        return max((k[var] for k in self.terms), default=-1)

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def derivative(self, var: int) -> "BiPoly":
        out = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[var]
            if e:
                out[(i - 1, j) if var == 0 else (i, j - 1)] = c * e
        return BiPoly(out)

    def swap(self) -> "BiPoly":
        return BiPoly({(j, i): c for (i, j), c in self.terms.items()})

    def compose_linear(self, a, b, c, d) -> "BiPoly":
        """Substitute x -> a*x + b*y and y -> c*x + d*y."""
        lx = BiPoly({(1, 0): a, (0, 1): b})
        ly = BiPoly({(1, 0): c, (0, 1): d})
        px = [BiPoly.constant(1)]
        py = [BiPoly.constant(1)]
        for _ in range(max(self.degree(0), 0)):
            px.append(px[-1] * lx)
        for _ in range(max(self.degree(1), 0)):
            py.append(py[-1] * ly)
        out = BiPoly()
        for (i, j), coef in self.terms.items():
            out = out + (px[i] * py[j]) * coef
        return out

    def coefficients_in(self, var: int) -> list[UniPoly]:
        """Coefficients of powers of ``var`` as polynomials in the other variable."""
        deg = self.degree(var)
        buckets: list[dict] = [dict() for _ in range(deg + 1)]
        for key, c in self.terms.items():
            buckets[key[var]][key[1 - var]] = c
        out = []
        for b in buckets:
            n = max(b, default=-1) + 1
            out.append(UniPoly(tuple(b.get(k, 0) for k in range(n))))
        return out

    def __call__(self, x, y) -> Fraction:
        x, y = as_rational(x), as_rational(y)
        return sum((c * x**i * y**j for (i, j), c in self.terms.items()), Fraction(0))

    def __repr__(self):
        return f"BiPoly({dict(sorted(self.terms.items()))!r})"


def _sylvester(p_coeffs: Sequence[int], q_coeffs: Sequence[int]) -> list[list[int]]:
    """Sylvester matrix from coefficient lists (low degree first)."""
    m = len(p_coeffs) - 1
    k = len(q_coeffs) - 1
    n = m + k
    rows = []
    ph = list(reversed(p_coeffs))
    qh = list(reversed(q_coeffs))
    for r in range(k):
        rows.append([0] * r + ph + [0] * (n - r - m - 1))
    for r in range(m):
        rows.append([0] * r + qh + [0] * (n - r - k - 1))
    return rows


def _horner(c: Sequence, x) -> int:
    acc = mpz(0)
    for v in reversed(c):
        acc = acc * x + v
    return acc


def sylvester_resultant(p: BiPoly, q: BiPoly, eliminate: int = 1) -> UniPoly:
    """Resultant of p and q with respect to variable ``eliminate`` (0 = x, 1 = y).

    The Sylvester determinant is a polynomial in the remaining variable of
    degree at most deg_other(p)*deg_elim(q) + deg_other(q)*deg_elim(p).  It is
    recovered by evaluating the integer Sylvester matrix at that many plus
    one integer nodes (Bareiss determinant each time) and interpolating.
    """
    m = p.degree(eliminate)
    k = q.degree(eliminate)
    if m <= 0 or k <= 0:
        raise EliminationError("nothing to eliminate")
    other = 1 - eliminate
    lp = lcm(*(c.denominator for c in p.terms.values()))
    lq = lcm(*(c.denominator for c in q.terms.values()))
    pc = [[mpz(int(c * lp)) for c in u.coeffs] for u in p.coefficients_in(eliminate)]
    qc = [[mpz(int(c * lq)) for c in u.coeffs] for u in q.coefficients_in(eliminate)]
    bound = p.degree(other) * k + q.degree(other) * m
    nodes = [0]
    while len(nodes) < bound + 1:
        step = (len(nodes) + 1) // 2
        nodes.append(step if len(nodes) % 2 else -step)
    values = []
    for x0 in nodes:
        pv = [_horner(c, x0) for c in pc]
        qv = [_horner(c, x0) for c in qc]
        values.append(bareiss_det(_sylvester(pv, qv)))
    res = interpolate(nodes, values)
    scale = Fraction(lp) ** k * Fraction(lq) ** m
    return UniPoly(tuple(c / scale for c in res.coeffs))


# ---------------------------------------------------------------------------
# integer sequences
# ---------------------------------------------------------------------------


class SequenceProperties(NamedTuple):
    logconcave: bool
    no_internal_zeros: bool
    nonnegative: bool

    @property
    def all(self) -> bool:
        return self.logconcave and self.no_internal_zeros and self.nonnegative


def logconcave_no_internal_zeros(s: Sequence[int]) -> SequenceProperties:
    s = list(s)
    if not s:
        raise ValueError("empty sequence")
    logconcave = all(s[i - 1] * s[i + 1] <= s[i] * s[i] for i in range(1, len(s) - 1))
    support = [i for i, v in enumerate(s) if v != 0]
    no_internal_zeros = not support or support[-1] - support[0] + 1 == len(support)
    nonnegative = all(v >= 0 for v in s)
    return SequenceProperties(logconcave, no_internal_zeros, nonnegative)
