"""Slow reference implementations used only to check the library.

Nothing here imports the library's geometry code; everything is done by
brute force over small inputs.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product
from math import gcd



def _det(m):
    if not m:
        return 1
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(len(m)))


def cross(vectors, n):
    """Generalized cross product of n-1 vectors in dimension n."""
    return [(-1) ** j * _det([list(v[:j]) + list(v[j + 1:]) for v in vectors]) for j in range(n)]


def _prim(u):
    g = 0
    for x in u:
        g = gcd(g, int(x))
    return tuple(int(x) // g for x in u)


def _rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    rk = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(rk, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for i in range(len(m)):
            if i != rk and m[i][c] != 0:
                k = m[i][c] / m[rk][c]
                m[i] = [x - k * y for x, y in zip(m[i], m[rk])]
        rk += 1
    return rk


def hull_facets(support, n):
    """Facets (u, N) of conv(support) + orthant, by trying every hyperplane
    through a support point spanned by n-1 generator directions."""
    pts = [tuple(Fraction(x) for x in a) for a in support]
    units = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    found = set()
    for a0 in pts:
        dirs = [tuple(x - y for x, y in zip(a, a0)) for a in pts if a != a0] + units
        for combo in combinations(dirs, n - 1):
            lcm_ = 1
            for v in combo:
                for x in v:
                    lcm_ = lcm_ * x.denominator // gcd(lcm_, x.denominator)
            u = cross([[int(x * lcm_) for x in v] for v in combo], n) if n > 1 else [1]
            if not any(u):
                continue
            if all(x <= 0 for x in u):
                u = [-x for x in u]
            if any(x < 0 for x in u):
                continue
            u = _prim(u)
            N = sum(x * y for x, y in zip(u, a0))
            if any(sum(x * y for x, y in zip(u, a)) < N for a in pts):
                continue
            tight = [tuple(x - y for x, y in zip(a, a0)) for a in pts if sum(p * q for p, q in zip(u, a)) == N]
            tight += [units[i] for i in range(n) if u[i] == 0]
            if _rank(tight) == n - 1:
                found.add((u, Fraction(N)))
    return found


def hull_vertices(support, n):
    facets = hull_facets(support, n)
    out = set()
    for a in {tuple(Fraction(x) for x in p) for p in support}:
        normals = [u for u, N in facets if sum(x * y for x, y in zip(u, a)) == N]
        if normals and _rank(normals) == n:
            out.add(a)
    return out


def phi_support(support, u):
    return min(sum(Fraction(x) * Fraction(y) for x, y in zip(a, u)) for a in support)


def random_support(rng: random.Random, n: int, max_points: int = 8, top: int = 4):
    k = rng.randint(1, max_points)
    pts = set()
    while len(pts) < k:
        a = tuple(rng.randint(0, top) for _ in range(n))
        if any(a):
            pts.add(a)
    return sorted(pts)


def random_polynomial_text(rng, support):
    parts = []
    for a in support:
        c = rng.choice([1, 1, 2, 3, -1, -2, 5])
        mono = "*".join(f"x{i + 1}^{e}" for i, e in enumerate(a) if e)
        parts.append(f"{c}*{mono}")
    return " + ".join(parts)


def torus_singular_point(terms, n, p):
    """Brute force over (F_p^*)^n for a common zero of g and all partials."""
    for x in product(range(1, p), repeat=n):
        vals = [0] * (n + 1)
        for a, c in terms.items():
            m = c.numerator * pow(c.denominator, -1, p) % p
            for j in range(n):
                m = m * pow(x[j], a[j], p) % p
            vals[0] += m
            for j in range(n):
                vals[j + 1] += a[j] * m
        if all(v % p == 0 for v in vals):
            return x
    return None


def droppable_instances(rng: random.Random, count: int, n: int = 3, top: int = 3):
    """Yield (support, P, B) with B an accepted consistent drop set."""
    from itertools import combinations

    from newtoncut import choose_consistent, detect_b1, newton_polyhedron

    made = 0
    while made < count:
        support = random_support(rng, n, max_points=8, top=top)
        P = newton_polyhedron(support, n)
        b1 = [t for t, c in detect_b1(P).items() if c]
        subsets = [s for k in range(1, len(b1) + 1) for s in combinations(b1, k)]
        rng.shuffle(subsets)
        for s in subsets:
            B = choose_consistent(P, s)
            if B:
                yield support, P, B
                made += 1
                break
