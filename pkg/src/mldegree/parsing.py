"""Text grammar for Laurent polynomials and the JSON schema for arrangements,
with canonical echoes that parse back to the same object."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .arrangement import Arrangement, Hyperplane
from .errors import ArrangementError, ParseError
from .newton import LaurentPolynomial

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>\d+(?:/\d+)?)"
    r"|(?P<var>[A-Za-z]\w*)"
    r"|(?P<pow>\*\*|\^)"
    r"|(?P<op>[+\-*])"
    r"|(?P<bad>\S)"
    r")"
)
_XYZ = "xyz"
_INDEXED = re.compile(r"([A-Za-z]+?)(\d+)$")


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only whitespace remains
            break
        kind = m.lastgroup
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group(kind)!r}", m.start(kind))
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return out


class _Reader:
    def __init__(self, tokens, length):
        self.tokens = tokens
        self.i = 0
        self.length = length

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, self.length)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, kind, what):
        tok = self.take()
        if tok[0] != kind:
            raise ParseError(f"expected {what}", tok[2])
        return tok


def _integer(r: _Reader) -> int:
    sign = 1
    while r.peek()[0] == "op" and r.peek()[1] in "+-":
        if r.take()[1] == "-":
            sign = -sign
    kind, val, pos = r.take()
    if kind != "num" or "/" in val:
        raise ParseError("expected an integer exponent", pos)
    return sign * int(val)


def _term(r: _Reader):
    """Optional coefficient followed by '*'-separated variable powers."""
    coeff = Fraction(1)
    powers: list[tuple[str, int, int]] = []
    kind, val, pos = r.peek()
    if kind == "num":
        r.take()
        coeff = Fraction(val)
        if coeff.denominator == 0:
            raise ParseError("zero denominator", pos)
        if r.peek()[0] != "op" or r.peek()[1] != "*":
            return coeff, powers
        r.take()
    while True:
        kind, val, pos = r.take()
        if kind != "var":
            raise ParseError("expected a variable", pos)
        exp = 1
        if r.peek()[0] == "pow":
            r.take()
            exp = _integer(r)
        powers.append((val, exp, pos))
        if r.peek()[0] == "op" and r.peek()[1] == "*":
            r.take()
            continue
        return coeff, powers


def _variable_order(names: dict[str, int], nvars: int | None) -> dict[str, int]:
    """Map variable names to positions.

    Either letters from x, y, z (count = position of the last letter used + 1)
    or one prefix with integer indices (zero-based if index 0 occurs).
    """
    if not names:
        return {}
    if all(n in _XYZ for n in names):
        count = max(_XYZ.index(n) for n in names) + 1
        order = {c: i for i, c in enumerate(_XYZ)}
    else:
        prefixes = set()
        idx = {}
        for n, pos in names.items():
            m = _INDEXED.match(n)
            if not m:
                raise ParseError(f"unknown variable {n!r}", pos)
            prefixes.add(m.group(1))
            idx[n] = int(m.group(2))
        if len(prefixes) != 1:
            raise ParseError("inconsistent variable count: mixed variable names",
                             min(names.values()))
        base = 0 if 0 in idx.values() else 1
        order = {n: i - base for n, i in idx.items()}
        count = max(order.values()) + 1
    if nvars is not None:
        if count > nvars:
            raise ParseError(f"inconsistent variable count: {count} variables used, "
                             f"{nvars} declared", 0)
        count = nvars
    return {n: order[n] for n in names} | {"__count__": count}


def parse_laurent(text: str, nvars: int | None = None) -> LaurentPolynomial:
    """Parse e.g. ``"3/2*x^-1*y - z"`` or ``"x1*x2^2 + 1"``.

    Without ``nvars`` the number of variables is inferred from the names.
    Errors are raised as ParseError carrying the character position.
    """
    if not text or not text.strip():
        raise ParseError("empty input", 0)
    r = _Reader(_tokens(text), len(text))
    raw: list[tuple[Fraction, list]] = []
    sign = 1
    if r.peek()[0] == "op" and r.peek()[1] in "+-":
        sign = -1 if r.take()[1] == "-" else 1
    while True:
        coeff, powers = _term(r)
        raw.append((sign * coeff, powers))
        kind, val, pos = r.take()
        if kind is None:
            break
        if kind != "op" or val not in "+-":
            raise ParseError(f"unexpected token {val!r}", pos)
        sign = -1 if val == "-" else 1
    names: dict[str, int] = {}
    for _, powers in raw:
        for name, _, pos in powers:
            names.setdefault(name, pos)
    order = _variable_order(names, nvars)
    count = order.pop("__count__", nvars or 1)
    terms: dict[tuple[int, ...], Fraction] = {}
    for coeff, powers in raw:
        exp = [0] * count
        for name, e, _ in powers:
            exp[order[name]] += e
        key = tuple(exp)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return LaurentPolynomial(count, terms)


def variable_names(nvars: int) -> list[str]:
    return list(_XYZ[:nvars]) if nvars <= 3 else [f"x{i + 1}" for i in range(nvars)]


def format_laurent(g: LaurentPolynomial) -> str:
    """Canonical text: terms in decreasing exponent order, explicit variable count.

    Parsing the result with ``nvars=g.nvars`` gives back g.
    """
    if g.is_zero():
        return "0"
    names = variable_names(g.nvars)
    parts = []
    for exp in sorted(g.terms, reverse=True):
        c = g.terms[exp]
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exp) if e)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        parts.append(("- " if c < 0 else "+ ") + body)
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def _rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"{where}: expected a rational string, got {value!r}", 0)
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError):
        raise ParseError(f"{where}: not a rational number: {value!r}", 0) from None


def parse_arrangement(doc: Any) -> Arrangement:
    """Build an Arrangement from ``{"dim": r, "hyperplanes": [{"a": [...], "b": "..."}]}``.

    ``doc`` may be the decoded document or its JSON text.
    """
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
    if not isinstance(doc, dict) or "dim" not in doc or "hyperplanes" not in doc:
        raise ParseError('expected an object with keys "dim" and "hyperplanes"', 0)
    try:
        dim = int(doc["dim"])
    except (TypeError, ValueError):
        raise ParseError("dim must be an integer", 0) from None
    if dim < 1:
        raise ParseError("dim must be positive", 0)
    hyps = []
    for i, entry in enumerate(doc["hyperplanes"]):
        if not isinstance(entry, dict) or "a" not in entry:
            raise ParseError(f"hyperplane {i}: expected an object with key \"a\"", 0)
        a = [_rational(v, f"hyperplane {i}") for v in entry["a"]]
        if len(a) != dim:
            raise ArrangementError(f"dim mismatch: hyperplane {i} has {len(a)} coefficients, dim is {dim}")
        b = _rational(entry.get("b", "0"), f"hyperplane {i}")
        try:
            hyps.append(Hyperplane(tuple(a), b))
        except ArrangementError as exc:
            raise ArrangementError(f"hyperplane {i}: {exc}") from None
    return Arrangement(dim, tuple(hyps))


def arrangement_document(a: Arrangement) -> dict:
    """Canonical JSON-ready form; parse_arrangement inverts it."""
    return {
        "dim": a.dim,
        "hyperplanes": [{"a": [str(c) for c in h.normal], "b": str(h.offset)} for h in a.hyperplanes],
    }
