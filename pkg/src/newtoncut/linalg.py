"""Small exact linear algebra over Q and Z.

Everything here works on plain tuples of ints or Fractions.  Sizes are tiny
(dimension <= 6, a few dozen vectors) so clarity wins over speed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def fmt_q(x) -> str:
    """Render a rational as ``p`` or ``p/q``."""
    x = as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fr = [as_fraction(x) for x in v]
    den = 1
    for x in fr:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


def _echelon(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    rows = [list(r) for r in rows]
    out = []
    if not rows:
        return out
    ncols = len(rows[0])
    col = 0
    while rows and col < ncols:
        piv = next((r for r in rows if r[col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows.remove(piv)
        inv = 1 / piv[col]
        piv = [x * inv for x in piv]
        new_rows = []
        for r in rows:
            if r[col] != 0:
                c = r[col]
                r = [a - c * b for a, b in zip(r, piv)]
            new_rows.append(r)
        rows = new_rows
        out.append(piv)
        col += 1
    return out


def _int_row(v: Sequence) -> list[int]:
    if all(isinstance(x, int) for x in v):
        return list(v)
    fr = [as_fraction(x) for x in v]
    den = 1
    for x in fr:
        den = lcm(den, x.denominator)
    return [int(x * den) for x in fr]


def rank(vectors: Iterable[Sequence]) -> int:
    # scaling rows does not change the rank, so eliminate over Z
    rows = [_int_row(v) for v in vectors]
    rows = [r for r in rows if any(r)]
    rk = 0
    while rows:
        piv = min(rows, key=lambda r: next(i for i, x in enumerate(r) if x))
        c = next(i for i, x in enumerate(piv) if x)
        rows.remove(piv)
        rk += 1
        nxt = []
        for r in rows:
            if r[c]:
                a, b = piv[c], r[c]
                r = [a * x - b * y for x, y in zip(r, piv)]
                g = 0
                for x in r:
                    g = gcd(g, x)
                if g == 0:
                    continue
                r = [x // g for x in r]
            nxt.append(r)
        rows = nxt
    return rk


def pivot_columns(vectors: Sequence[Sequence]) -> list[int]:
    """Column indices of a reduced row echelon form of the given rows."""
    rows = [[as_fraction(x) for x in v] for v in vectors]
    piv = []
    for r in _echelon(rows):
        piv.append(next(i for i, x in enumerate(r) if x != 0))
    return piv


def independent_subset(vectors: Sequence[Sequence]) -> list[int]:
    """Greedy indices of a maximal linearly independent subset."""
    chosen: list[int] = []
    basis: list[Sequence] = []
    for i, v in enumerate(vectors):
        if rank(basis + [v]) > len(basis):
            basis.append(v)
            chosen.append(i)
    return chosen


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Solve a square nonsingular system ``matrix @ x = rhs``; None if singular."""
    n = len(matrix)
    aug = [[as_fraction(x) for x in row] + [as_fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                c = aug[r][col]
                aug[r] = [a - c * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def inverse(matrix: Sequence[Sequence]) -> list[list[Fraction]] | None:
    n = len(matrix)
    cols = []
    for j in range(n):
        e = [1 if i == j else 0 for i in range(n)]
        c = solve(matrix, e)
        if c is None:
            return None
        cols.append(c)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def det(matrix: Sequence[Sequence]) -> Fraction:
    m = [[as_fraction(x) for x in row] for row in matrix]
    n = len(m)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        result *= m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                c = m[r][col] / m[col][col]
                m[r] = [a - c * b for a, b in zip(m[r], m[col])]
    return sign * result


# --- integer normal forms -------------------------------------------------


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(matrix: Sequence[Sequence[int]]):
    """Return ``(S, U, V)`` with ``U @ A @ V == S`` diagonal, U and V unimodular.

    The diagonal entries are nonnegative and each divides the next.
    """
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = _identity(m)
    v = _identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row dst += k * row src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):  # col dst += k * col src
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                # divisibility of the remaining block
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % a[t][t]),
                    None,
                )
                if bad is not None:
                    add_row(bad[0], t, 1)
                    done = False
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def invariant_factors(matrix: Sequence[Sequence[int]]) -> list[int]:
    s, _, _ = smith_normal_form(matrix)
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0))]


def lattice_coordinates(differences: Sequence[Sequence[int]], n: int):
    """Unimodular change of coordinates adapted to a sublattice.

    Returns ``(d, V)`` where d is the rank of the rows and V is an n x n
    unimodular matrix such that ``w @ V`` vanishes beyond position d for every
    w in the rational span of the rows.
    """
    rows = [list(map(int, r)) for r in differences if any(r)]
    if not rows:
        return 0, _identity(n)
    s, _, v = smith_normal_form(rows)
    d = sum(1 for i in range(min(len(s), n)) if s[i][i])
    return d, v
