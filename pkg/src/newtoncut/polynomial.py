"""Sparse polynomials with rational coefficients and zero constant term."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .linalg import fmt_q


class PolynomialError(ValueError):
    """Raised on malformed polynomial input."""


@dataclass(frozen=True)
class Polynomial:
    n: int
    terms: Mapping[tuple[int, ...], Fraction] = field(hash=False)

    def __post_init__(self):
        if self.n < 1:
            raise PolynomialError("ambient dimension must be positive")
        clean = {}
        for a, c in self.terms.items():
            a = tuple(int(x) for x in a)
            if len(a) != self.n or any(x < 0 for x in a):
                raise PolynomialError(f"bad exponent vector {a}")
            c = Fraction(c)
            if c != 0:
                clean[a] = c
        if not clean:
            raise PolynomialError("polynomial is zero")
        if tuple(0 for _ in range(self.n)) in clean:
            raise PolynomialError("nonzero constant term")
        object.__setattr__(self, "terms", dict(sorted(clean.items(), reverse=True)))

    @property
    def support(self) -> list[tuple[int, ...]]:
        return list(self.terms)

    def restrict(self, exponents: Iterable[tuple[int, ...]]) -> "Polynomial":
        keep = set(exponents)
        return Polynomial(self.n, {a: c for a, c in self.terms.items() if a in keep})

    def to_text(self, names: list[str] | None = None) -> str:
        return format_terms(self.terms, names or [f"x{i + 1}" for i in range(self.n)])

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [{"exp": list(a), "coeff": fmt_q(c)} for a, c in self.terms.items()],
        }

    def __str__(self) -> str:
        return self.to_text()


def format_terms(terms: Mapping[tuple[int, ...], Fraction], names: list[str]) -> str:
    """Render a term map; exponents are matched positionally with ``names``."""
    if not terms:
        return "0"
    parts = []
    for a, c in terms.items():
        factors = []
        for name, e in zip(names, a):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mono = "*".join(factors)
        mag = abs(c)
        if not mono:
            body = fmt_q(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{fmt_q(mag)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*/^]))")


def _tokens(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialError(f"syntax error at position {pos}: {text[pos:pos + 10]!r}")
        if m.group("num") is not None:
            out.append(("num", int(m.group("num"))))
        elif m.group("var") is not None:
            out.append(("var", int(m.group("idx"))))
        else:
            out.append(("op", m.group("op")))
        pos = m.end()
    return out


def parse_polynomial(text: str, n: int) -> Polynomial:
    """Parse ``text`` over variables x1..xn.

    Terms are separated by + or -, each an optional coefficient ``p`` or
    ``p/q`` followed by ``*``-separated powers ``xk`` or ``xk^e``.
    """
    if n < 1:
        raise PolynomialError("n must be positive")
    toks = _tokens(text)
    if not toks:
        raise PolynomialError("empty polynomial")
    i = 0
    terms: dict[tuple[int, ...], Fraction] = {}

    def peek():
        return toks[i] if i < len(toks) else None

    def expect(kind, value=None):
        nonlocal i
        tok = peek()
        if tok is None or tok[0] != kind or (value is not None and tok[1] != value):
            got = "end of input" if tok is None else repr(tok[1])
            raise PolynomialError(f"syntax error: expected {value or kind}, got {got}")
        i += 1
        return tok[1]

    first = True
    while i < len(toks):
        sign = 1
        tok = peek()
        if tok[0] == "op" and tok[1] in "+-":
            sign = -1 if tok[1] == "-" else 1
            i += 1
        elif not first:
            raise PolynomialError(f"syntax error: expected + or -, got {tok[1]!r}")
        first = False
        coeff = Fraction(sign)
        exp = [0] * n
        saw_factor = False
        tok = peek()
        if tok is not None and tok[0] == "num":
            num = expect("num")
            den = 1
            if peek() == ("op", "/"):
                i += 1
                den = expect("num")
                if den == 0:
                    raise PolynomialError("division by zero in coefficient")
            coeff *= Fraction(num, den)
            saw_factor = True
            if peek() == ("op", "*"):
                i += 1
                tok = peek()
                if tok is None or tok[0] != "var":
                    raise PolynomialError("syntax error: expected variable after '*'")
            else:
                tok = peek()
                if tok is not None and tok[0] not in ("op",):
                    raise PolynomialError("syntax error: missing '*' after coefficient")
        while peek() is not None and peek()[0] == "var":
            k = expect("var")
            if not 1 <= k <= n:
                raise PolynomialError(f"variable x{k} out of range for n={n}")
            e = 1
            if peek() == ("op", "^"):
                i += 1
                e = expect("num")
                if e < 1:
                    raise PolynomialError("exponents must be at least 1")
            exp[k - 1] += e
            saw_factor = True
            if peek() != ("op", "*"):
                break
            i += 1
            if peek() is None or peek()[0] != "var":
                raise PolynomialError("syntax error: expected variable after '*'")
        if not saw_factor:
            raise PolynomialError("syntax error: empty term")
        nxt = peek()
        if nxt is not None and not (nxt[0] == "op" and nxt[1] in "+-"):
            raise PolynomialError(f"syntax error near {nxt[1]!r}")
        key = tuple(exp)
        terms[key] = terms.get(key, Fraction(0)) + coeff

    zero = tuple([0] * n)
    if terms.get(zero, 0) != 0:
        raise PolynomialError("nonzero constant term")
    terms.pop(zero, None)
    terms = {a: c for a, c in terms.items() if c != 0}
    if not terms:
        raise PolynomialError("all terms cancel")
    return Polynomial(n, terms)


def face_polynomial(f: Polynomial, face) -> Polynomial:
    """Sum of the terms of ``f`` whose exponents lie on ``face``.

    ``face`` is a :class:`~newtoncut.polyhedron.Face` of the Newton polyhedron
    of ``f``.
    """
    poly = face.polyhedron
    if poly.source_support is None or set(poly.source_support) != set(f.support):
        raise ValueError("face does not belong to the Newton polyhedron of f")
    return f.restrict(a for a in f.support if face.contains(a))
