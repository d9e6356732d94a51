"""Dense univariate polynomials over Q, coefficients in ascending order."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

UPoly = list


def trim(p: Sequence) -> list[Fraction]:
    out = [Fraction(x) for x in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(p: Sequence) -> int:
    return len(trim(p)) - 1


def add(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def mul(p, q):
    p, q = trim(p), trim(q)
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def scale(p, c):
    return trim([x * c for x in p])


def derivative(p):
    return trim([i * c for i, c in enumerate(p)][1:])


def divmod_(p, q):
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    rem = list(p)
    while len(rem) >= len(q) and rem:
        c = rem[-1] / q[-1]
        k = len(rem) - len(q)
        quo[k] = c
        for i, b in enumerate(q):
            rem[i + k] -= c * b
        rem = trim(rem)
    return trim(quo), rem


def monic(p):
    p = trim(p)
    return scale(p, 1 / p[-1]) if p else []


def pgcd(p, q):
    p, q = trim(p), trim(q)
    while q:
        p, q = q, divmod_(p, q)[1]
    return monic(p)


def evaluate(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def integer_primitive(p) -> list[int]:
    """Scale to integer coefficients with content 1 and positive leading term."""
    p = trim(p)
    if not p:
        return []
    den = 1
    for c in p:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _divisors(m: int) -> list[int]:
    m = abs(m)
    out = []
    i = 1
    while i * i <= m:
        if m % i == 0:
            out.append(i)
            out.append(m // i)
        i += 1
    return sorted(set(out))


def rational_roots(p) -> list[Fraction]:
    """Distinct rational roots, by the rational root theorem."""
    ints = integer_primitive(p)
    if len(ints) <= 1:
        return []
    roots = []
    if ints[0] == 0:
        roots.append(Fraction(0))
        k = next(i for i, c in enumerate(ints) if c)
        ints = ints[k:]
    if len(ints) > 1:
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                for s in (1, -1):
                    r = Fraction(s * num, den)
                    if r not in roots and evaluate(ints, r) == 0:
                        roots.append(r)
    return sorted(roots)


def linear_factorization(p):
    """Split into ``(content, [(root, multiplicity)], rest)`` over Q."""
    p = trim(p)
    factors = []
    rest = p
    for r in rational_roots(p):
        m = 0
        while True:
            q, rem = divmod_(rest, [-r, 1])
            if rem:
                break
            rest = q
            m += 1
        factors.append((r, m))
    return factors, rest
