"""Newton Q-polyhedra: polyhedra in the positive orthant with recession cone R^n_{>=0}.

Both representations are kept: vertices (V) and facets given by a primitive
normal ``u`` in N^n and a level ``N`` (H).  Faces are identified by the set
of facet indices containing them; the empty set is the whole polyhedron.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .dd import extreme_rays
from .linalg import as_fraction, dot, fmt_q, primitive, rank

MAX_DIM = 6


class PolyhedronError(ValueError):
    pass


@dataclass(frozen=True)
class HalfSpace:
    """``{a >= 0 : a . u >= N}`` with ``u`` primitive in N^n."""

    u: tuple[int, ...]
    N: Fraction

    def __post_init__(self):
        u = tuple(int(x) for x in self.u)
        if any(x < 0 for x in u) or not any(u):
            raise PolyhedronError(f"normal {u} must be nonzero with nonnegative entries")
        p = primitive(u)
        scale = Fraction(u[next(i for i, x in enumerate(u) if x)], p[next(i for i, x in enumerate(p) if x)])
        object.__setattr__(self, "u", p)
        object.__setattr__(self, "N", as_fraction(self.N) / scale)


@dataclass(frozen=True)
class Facet:
    u: tuple[int, ...]
    N: Fraction
    vertex_idx: frozenset[int]
    noncompact: frozenset[int]

    @property
    def norm(self) -> int:
        return sum(self.u)

    @property
    def slope(self) -> Fraction | None:
        """``-|u|/N`` for positive-level facets, else None."""
        if self.N <= 0:
            return None
        return Fraction(-self.norm) / self.N

    @property
    def datum(self) -> tuple[Fraction, int]:
        return (self.N, self.norm)

    def coordinate_direction(self) -> int | None:
        """Index i if ``u == e_i``."""
        if self.norm == 1:
            return self.u.index(1)
        return None


@dataclass(frozen=True, eq=False)
class Face:
    polyhedron: "NewtonPolyhedron" = field(repr=False)
    facets: frozenset[int]
    dim: int
    vertex_idx: frozenset[int]
    noncompact: frozenset[int]

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.facets))

    @property
    def compact(self) -> bool:
        return not self.noncompact

    @property
    def vertices(self) -> list[tuple[Fraction, ...]]:
        return [self.polyhedron.vertices[i] for i in sorted(self.vertex_idx)]

    def contains(self, point: Sequence) -> bool:
        P = self.polyhedron
        if not P.contains(point):
            return False
        return all(dot(P.facets[t].u, point) == P.facets[t].N for t in self.facets)

    def __eq__(self, other):
        return isinstance(other, Face) and other.polyhedron is self.polyhedron and other.facets == self.facets

    def __hash__(self):
        return hash((id(self.polyhedron), self.facets))

    def to_json(self) -> dict:
        return {
            "facets": list(self.key),
            "dim": self.dim,
            "vertexIdx": sorted(self.vertex_idx),
            "noncompactDirs": sorted(i + 1 for i in self.noncompact),
        }


def _facet_sort_key(f: Facet):
    if f.N > 0:
        return (0, Fraction(f.norm) / f.N, tuple(-x for x in f.u))
    return (1, Fraction(0), tuple(-x for x in f.u))


def _homog_points(points, n):
    rows = []
    for a in points:
        rows.append(primitive([1] + [as_fraction(x) for x in a]))
    for i in range(n):
        rows.append(tuple(1 if j == i + 1 else 0 for j in range(n + 1)))
    return rows


def _vertices_to_facets(points, n) -> list[tuple[tuple[int, ...], Fraction]]:
    out = []
    for ray, _ in extreme_rays(_homog_points(points, n), n + 1):
        y0, u = ray[0], ray[1:]
        if not any(u):
            continue  # the face at infinity
        p = primitive(u)
        g = u[next(i for i, x in enumerate(u) if x)] // p[next(i for i, x in enumerate(p) if x)]
        out.append((p, Fraction(-y0, g)))
    return out


def _facets_to_vertices(halfspaces: Sequence[HalfSpace], n):
    rows = []
    for h in halfspaces:
        rows.append(primitive([-h.N] + list(h.u)) if h.N != 0 else tuple([0] + list(h.u)))
    for i in range(n):
        rows.append(tuple(1 if j == i + 1 else 0 for j in range(n + 1)))
    rows.append(tuple(1 if j == 0 else 0 for j in range(n + 1)))
    verts = []
    rec = []
    for ray, _ in extreme_rays(rows, n + 1):
        if ray[0] > 0:
            verts.append(tuple(Fraction(x, ray[0]) for x in ray[1:]))
        else:
            rec.append(ray[1:])
    expected = sorted(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
    if sorted(rec) != expected:
        raise PolyhedronError("recession cone is not the positive orthant")
    return verts


class NewtonPolyhedron:
    """A Newton Q-polyhedron with both representations and its face lattice."""

    def __init__(self, n: int, vertices, facets: Sequence[tuple[tuple[int, ...], Fraction]], source_support=None):
        self.n = n
        self.vertices: tuple[tuple[Fraction, ...], ...] = tuple(sorted(set(vertices), reverse=True))
        raw = []
        for u, N in facets:
            vidx = frozenset(i for i, v in enumerate(self.vertices) if dot(u, v) == N)
            nc = frozenset(i for i in range(n) if u[i] == 0)
            raw.append(Facet(tuple(u), Fraction(N), vidx, nc))
        self.facets: tuple[Facet, ...] = tuple(sorted(raw, key=_facet_sort_key))
        self.source_support = tuple(source_support) if source_support is not None else None
        self.trivial = not any(f.N > 0 for f in self.facets)
        self.warnings: list[str] = []
        if self.trivial:
            self.warnings.append("trivial polyhedron: equals the positive orthant")
        self._check()

    def _check(self):
        for f in self.facets:
            if self.phi(f.u) != f.N:
                raise PolyhedronError(f"facet {f.u} level mismatch")
        for i, v in enumerate(self.vertices):
            normals = [f.u for f in self.facets if i in f.vertex_idx]
            if rank(normals) != self.n:
                raise PolyhedronError(f"vertex {v} is not a vertex")

    # -- queries ---------------------------------------------------------

    def contains(self, point: Sequence) -> bool:
        if any(as_fraction(x) < 0 for x in point):
            return False
        return all(dot(f.u, point) >= f.N for f in self.facets)

    def phi(self, u: Sequence) -> Fraction:
        """Minimum of ``a . u`` over the polyhedron (attained at a vertex)."""
        u = [as_fraction(x) for x in u]
        if len(u) != self.n:
            raise PolyhedronError("dimension mismatch")
        if any(x < 0 for x in u):
            raise PolyhedronError("phi is only defined on the positive orthant")
        return min(dot(v, u) for v in self.vertices)

    def facet_index(self, u: Sequence[int]) -> int:
        u = tuple(u)
        for i, f in enumerate(self.facets):
            if f.u == u:
                return i
        raise KeyError(f"no facet with normal {u}")

    def _closure(self, vidx: frozenset[int], rec: frozenset[int]) -> frozenset[int]:
        return frozenset(
            t for t, f in enumerate(self.facets) if vidx <= f.vertex_idx and rec <= f.noncompact
        )

    def _make_face(self, facet_set: frozenset[int]) -> Face | None:
        if not facet_set:
            return Face(self, frozenset(), self.n, frozenset(range(len(self.vertices))), frozenset(range(self.n)))
        vidx = frozenset(range(len(self.vertices)))
        rec = frozenset(range(self.n))
        for t in facet_set:
            vidx &= self.facets[t].vertex_idx
            rec &= self.facets[t].noncompact
        if not vidx:
            return None
        closed = self._closure(vidx, rec)
        verts = [self.vertices[i] for i in sorted(vidx)]
        v0 = verts[0]
        gens = [tuple(a - b for a, b in zip(v, v0)) for v in verts[1:]]
        gens += [tuple(1 if j == i else 0 for j in range(self.n)) for i in rec]
        dim = rank(gens) if gens else 0
        dual_dim = rank([self.facets[t].u for t in closed])
        if dim + dual_dim != self.n:
            raise PolyhedronError("face dimension and normal rank disagree")
        return Face(self, closed, dim, vidx, rec)

    def face(self, facet_set: Iterable[int]) -> Face | None:
        """The face cut out by the given facets, or None if they do not meet."""
        return self._make_face(frozenset(facet_set))

    @cached_property
    def faces(self) -> list[Face]:
        seen: dict[frozenset[int], Face] = {}
        whole = self._make_face(frozenset())
        seen[frozenset()] = whole
        frontier = [frozenset()]
        while frontier:
            nxt = []
            for s in frontier:
                for t in range(len(self.facets)):
                    if t in s:
                        continue
                    fc = self._make_face(s | {t})
                    if fc is not None and fc.facets not in seen:
                        seen[fc.facets] = fc
                        nxt.append(fc.facets)
            frontier = nxt
        return sorted(seen.values(), key=lambda f: (-f.dim, f.key))

    def face_of_vertex(self, v: Sequence) -> Face:
        v = tuple(as_fraction(x) for x in v)
        if v not in self.vertices:
            raise KeyError(f"{v} is not a vertex")
        i = self.vertices.index(v)
        return self._make_face(self._closure(frozenset([i]), frozenset()))

    def first_meet_locus(self, u: Sequence) -> Face:
        """The face where ``a . u`` attains its minimum over the polyhedron."""
        m = self.phi(u)
        u = [as_fraction(x) for x in u]
        vidx = frozenset(i for i, v in enumerate(self.vertices) if dot(v, u) == m)
        rec = frozenset(i for i in range(self.n) if u[i] == 0)
        if len(rec) == self.n:
            return self._make_face(frozenset())
        face = self._make_face(self._closure(vidx, rec))
        assert face.vertex_idx == vidx and face.noncompact == rec
        return face

    def compact_faces(self) -> list[Face]:
        return [f for f in self.faces if f.compact]

    def positive_facets(self) -> list[int]:
        return [i for i, f in enumerate(self.facets) if f.N > 0]

    def halfspaces(self) -> list[HalfSpace]:
        return [HalfSpace(f.u, f.N) for f in self.facets]

    def to_json(self, with_faces: bool = True) -> dict:
        out = {
            "n": self.n,
            "vertices": [[fmt_q(x) for x in v] for v in self.vertices],
            "facets": [
                {
                    "u": list(f.u),
                    "N": fmt_q(f.N),
                    "vertexIdx": sorted(f.vertex_idx),
                    "noncompactDirs": sorted(i + 1 for i in f.noncompact),
                }
                for f in self.facets
            ],
            "trivial": self.trivial,
        }
        if with_faces:
            out["faces"] = [fc.to_json() for fc in self.faces]
        return out

    def __repr__(self):
        return f"NewtonPolyhedron(n={self.n}, vertices={len(self.vertices)}, facets={len(self.facets)})"


def _check_dim(n: int):
    if not 1 <= n <= MAX_DIM:
        raise PolyhedronError(f"dimension {n} outside the supported range 1..{MAX_DIM}")


def newton_polyhedron(support: Iterable[Sequence], n: int) -> NewtonPolyhedron:
    """Convex hull of the union of ``a + R^n_{>=0}`` over the support points."""
    _check_dim(n)
    pts = [tuple(as_fraction(x) for x in a) for a in support]
    if not pts:
        raise PolyhedronError("empty support")
    if any(len(a) != n or any(x < 0 for x in a) for a in pts):
        raise PolyhedronError("support points must lie in the positive orthant of dimension n")
    facets = _vertices_to_facets(pts, n)
    verts = _facets_to_vertices([HalfSpace(u, N) for u, N in facets], n)
    src = [tuple(int(x) if x.denominator == 1 else x for x in a) for a in pts]
    return NewtonPolyhedron(n, verts, facets, source_support=sorted(set(src)))


def from_halfspaces(halfspaces: Iterable, n: int) -> NewtonPolyhedron:
    """Intersection of the given half-spaces with the positive orthant."""
    _check_dim(n)
    hs = [h if isinstance(h, HalfSpace) else HalfSpace(tuple(h[0]), as_fraction(h[1])) for h in halfspaces]
    if any(len(h.u) != n for h in hs):
        raise PolyhedronError("normal length does not match n")
    verts = _facets_to_vertices(hs, n)
    facets = _vertices_to_facets(verts, n)
    return NewtonPolyhedron(n, verts, facets)


@dataclass(frozen=True)
class VRep:
    points: tuple


@dataclass(frozen=True)
class HRep:
    halfspaces: tuple


def dd_convert(rep, n: int):
    """Complete a V- or H-representation by double description.

    A V-rep returns the facets ``[(u, N), ...]``; an H-rep returns the
    irredundant vertices.  Both come with the full polyhedron object.
    """
    if isinstance(rep, VRep):
        P = newton_polyhedron(rep.points, n)
        return [(f.u, f.N) for f in P.facets], P
    if isinstance(rep, HRep):
        P = from_halfspaces(rep.halfspaces, n)
        return list(P.vertices), P
    raise TypeError("expected VRep or HRep")
