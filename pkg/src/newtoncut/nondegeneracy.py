"""Face-by-face non-degeneracy of a polynomial with respect to its Newton polyhedron.

A face polynomial is non-degenerate when its zero set in the torus is
smooth.  Vertices are trivially fine and edges are decided exactly (a
repeated nonzero root of the edge polynomial).  Higher faces are searched
exhaustively over small prime fields after a monomial change of coordinates
that collapses the face to its own dimension.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

from . import upoly
from .linalg import lattice_coordinates
from .polyhedron import Face, NewtonPolyhedron, newton_polyhedron
from .polynomial import Polynomial, face_polynomial

EXACT = "exact-low-dim"
SAMPLING = "finite-field-sampling"


class OracleError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class OracleConfig:
    primes: tuple[int, ...] = (101, 103, 107)
    budget: int = 10**7
    seed: int | None = None

    def __post_init__(self):
        if not self.primes:
            raise OracleError("at least one prime is required")
        for p in self.primes:
            if p < 3:
                raise OracleError(f"prime {p} is too small (need p >= 3)")
            if not _is_prime(p):
                raise OracleError(f"{p} is not prime")
        if self.budget < 1:
            raise OracleError("budget must be positive")

    def ordered_primes(self) -> list[int]:
        primes = list(self.primes)
        if self.seed is not None:
            random.Random(self.seed).shuffle(primes)
        return primes


@dataclass(frozen=True)
class NondegeneracyVerdict:
    face: tuple[int, ...]
    dim: int
    method: str
    primes: tuple[int, ...]
    verdict: str
    witness: dict | None = field(default=None)

    @property
    def ok(self) -> bool:
        return self.verdict != "degenerate"

    def to_json(self) -> dict:
        return {
            "face": list(self.face),
            "dim": self.dim,
            "method": self.method,
            "primes": list(self.primes),
            "verdict": self.verdict,
            "witness": self.witness,
        }


def _mod(c: Fraction, p: int) -> int:
    if c.denominator % p == 0:
        raise OracleError(f"prime {p} divides a coefficient denominator")
    return c.numerator * pow(c.denominator, -1, p) % p


def _check_witness(g: Polynomial, point: Sequence[int], p: int) -> bool:
    """f and every x_j * df/dx_j vanish at ``point`` over F_p."""
    vals = [0] * (g.n + 1)
    for a, c in g.terms.items():
        m = _mod(c, p)
        for j, e in enumerate(a):
            m = m * pow(point[j], e, p) % p
        vals[0] = (vals[0] + m) % p
        for j, e in enumerate(a):
            vals[j + 1] = (vals[j + 1] + e * m) % p
    return all(v == 0 for v in vals)


def search_singular_torus_point(g: Polynomial, primes: Sequence[int], budget: int):
    """Exhaustive search for a singular point of V(g) in the torus over F_p.

    Returns ``(witness or None, primes actually used)``.
    """
    support = list(g.terms)
    a0 = support[0]
    diffs = [tuple(x - y for x, y in zip(a, a0)) for a in support]
    d, V = lattice_coordinates(diffs, g.n)
    coords = [tuple(sum(w[j] * V[j][k] for j in range(g.n)) for k in range(d)) for w in diffs]
    if d:
        lo = [min(c[k] for c in coords) for k in range(d)]
        coords = [tuple(c[k] - lo[k] for k in range(d)) for c in coords]
    coeffs = [g.terms[a] for a in support]
    used = []
    for p in primes:
        if any(c.denominator % p == 0 for c in coeffs):
            raise OracleError(f"prime {p} divides a coefficient denominator")
        if any(c.numerator % p == 0 for c in coeffs):
            continue  # reduction would drop a term of the face
        if p ** d > budget:
            raise OracleError(f"torus enumeration of size {p}^{d} exceeds the budget {budget}")
        used.append(p)
        hit = _search_prime(coords, [_mod(c, p) for c in coeffs], d, p)
        if hit is not None:
            z = list(hit) + [1] * (g.n - d)
            x = []
            for j in range(g.n):
                val = 1
                for k in range(g.n):
                    val = val * pow(z[k], V[j][k], p) % p
                x.append(val)
            if not _check_witness(g, x, p):
                raise AssertionError("witness failed verification in original coordinates")
            return {"prime": p, "point": x}, used
    return None, used


def _search_prime(coords, coeffs, d, p):
    if d == 0:
        return () if sum(coeffs) % p == 0 else None
    maxe = max(max(c) for c in coords)
    base = np.arange(1, p, dtype=np.int64)
    table = np.ones((maxe + 1, p - 1), dtype=np.int64)
    for e in range(1, maxe + 1):
        table[e] = table[e - 1] * base % p
    cf = np.array(coeffs, dtype=np.int64)
    ex = np.array(coords, dtype=np.int64)  # terms x d
    rest = d - 1
    if rest:
        grids = np.indices((p - 1,) * rest).reshape(rest, -1)
    else:
        grids = np.zeros((0, 1), dtype=np.int64)
    for i0 in range(p - 1):
        mono = np.empty((len(coeffs), grids.shape[1]), dtype=np.int64)
        for t in range(len(coeffs)):
            m = np.full(grids.shape[1], table[ex[t, 0], i0], dtype=np.int64)
            for k in range(rest):
                m = m * table[ex[t, k + 1]][grids[k]] % p
            mono[t] = m * cf[t] % p
        ok = mono.sum(axis=0) % p == 0
        for k in range(d):
            ok &= (mono * ex[:, k : k + 1]).sum(axis=0) % p == 0
        hits = np.nonzero(ok)[0]
        if hits.size:
            j = hits[0]
            return (i0 + 1,) + tuple(int(grids[k][j]) + 1 for k in range(rest))
    return None


def _edge_polynomial(g: Polynomial, face: Face):
    v0, v1 = face.vertices
    diff = [int(b - a) for a, b in zip(v0, v1)]
    step = 0
    for x in diff:
        step = gcd(step, x)
    prim = [x // step for x in diff]
    h = [Fraction(0)] * (step + 1)
    for a, c in g.terms.items():
        k = next(int((x - y) / q) for x, y, q in zip(a, v0, prim) if q)
        h[k] += c
    return h


def face_verdict(f: Polynomial, face: Face, config: OracleConfig | None = None,
                 force_sampling: bool = False) -> NondegeneracyVerdict:
    """Verdict for a single compact face."""
    config = config or OracleConfig()
    if not face.compact:
        raise OracleError("non-degeneracy is only checked on compact faces")
    g = face_polynomial(f, face)
    primes = config.ordered_primes()
    if face.dim == 0 and not force_sampling:
        return NondegeneracyVerdict(face.key, 0, EXACT, (), "nondegenerate")
    if face.dim == 1 and not force_sampling:
        h = _edge_polynomial(g, face)
        common = upoly.pgcd(h, upoly.derivative(h))
        if upoly.degree(common) <= 0:
            return NondegeneracyVerdict(face.key, 1, EXACT, (), "nondegenerate")
        witness, used = search_singular_torus_point(g, primes, config.budget)
        if witness is None:
            witness = {"repeatedFactor": [str(c) for c in common]}
        return NondegeneracyVerdict(face.key, 1, EXACT, tuple(used), "degenerate", witness)
    witness, used = search_singular_torus_point(g, primes, config.budget)
    if not used:
        raise OracleError("every configured prime divides a coefficient of the face")
    if witness is not None:
        return NondegeneracyVerdict(face.key, face.dim, SAMPLING, tuple(used), "degenerate", witness)
    return NondegeneracyVerdict(face.key, face.dim, SAMPLING, tuple(used), "probably-nondegenerate")


def nondegeneracy_check(f: Polynomial, config: OracleConfig | None = None,
                        P: NewtonPolyhedron | None = None) -> list[NondegeneracyVerdict]:
    """One verdict per compact face of the Newton polyhedron, ordered by face id."""
    P = P or newton_polyhedron(f.support, f.n)
    faces = sorted(P.compact_faces(), key=lambda fc: fc.key)
    return [face_verdict(f, fc, config) for fc in faces]
