"""Fans refining the positive orthant, normal fans and simplicial subdivision.

Cones are stored as frozensets of ray indices.  For a normal fan the ray
indices coincide with the facet indices of the source polyhedron, so a cone
and its dual face carry the same index set.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

from .dd import cone_facets, cone_inequalities, in_cone_by_inequalities
from .linalg import rank
from .polyhedron import Face, NewtonPolyhedron


class FanError(ValueError):
    pass


class Fan:
    def __init__(self, n: int, rays: Sequence[Sequence[int]], maximal: Iterable[Iterable[int]],
                 cones: Iterable[Iterable[int]] | None = None, source: NewtonPolyhedron | None = None):
        self.n = n
        self.rays: tuple[tuple[int, ...], ...] = tuple(tuple(int(x) for x in r) for r in rays)
        if any(len(r) != n or any(x < 0 for x in r) for r in self.rays):
            raise FanError("rays must be nonnegative vectors of length n")
        self.maximal: tuple[frozenset[int], ...] = tuple(sorted({frozenset(c) for c in maximal}, key=sorted))
        self.source = source
        self._facet_cache: dict[frozenset[int], list[frozenset[int]]] = {}
        if cones is None:
            cones = self._close_under_faces()
        self.cones: tuple[frozenset[int], ...] = tuple(
            sorted({frozenset(c) for c in cones}, key=lambda c: (len(c), sorted(c)))
        )
        self.dims = {c: rank([self.rays[i] for i in c]) if c else 0 for c in self.cones}

    # -- structure -------------------------------------------------------

    def cone_facets(self, cone: frozenset[int]) -> list[frozenset[int]]:
        """Facets of a cone of this fan, computed by double description."""
        if cone not in self._facet_cache:
            idx = sorted(cone)
            if not idx:
                self._facet_cache[cone] = []
            else:
                local = cone_facets([self.rays[i] for i in idx])
                self._facet_cache[cone] = [frozenset(idx[j] for j in f) for f in local]
        return self._facet_cache[cone]

    def _close_under_faces(self) -> set[frozenset[int]]:
        out: set[frozenset[int]] = set()
        stack = list(self.maximal)
        while stack:
            c = stack.pop()
            if c in out:
                continue
            out.add(c)
            stack.extend(self.cone_facets(c))
        out.add(frozenset())
        return out

    def dim(self, cone: Iterable[int]) -> int:
        cone = frozenset(cone)
        if cone in self.dims:
            return self.dims[cone]
        return rank([self.rays[i] for i in cone]) if cone else 0

    def is_simplicial_cone(self, cone: Iterable[int]) -> bool:
        cone = frozenset(cone)
        return len(cone) == self.dim(cone)

    @cached_property
    def simplicial(self) -> bool:
        return all(self.is_simplicial_cone(c) for c in self.maximal)

    def ray_index(self, u: Sequence[int]) -> int:
        u = tuple(u)
        try:
            return self.rays.index(u)
        except ValueError:
            raise KeyError(f"{u} is not a ray of the fan") from None

    def standard_ray(self, i: int) -> int:
        return self.ray_index(tuple(1 if j == i else 0 for j in range(self.n)))

    def is_standard(self, r: int) -> bool:
        return sum(self.rays[r]) == 1

    @cached_property
    def cone_set(self) -> frozenset[frozenset[int]]:
        return frozenset(self.cones)

    def inequalities(self, cone: frozenset[int]) -> list[tuple[int, ...]]:
        """Inward normals of a full-dimensional cone."""
        return cone_inequalities([self.rays[i] for i in sorted(cone)])

    @cached_property
    def _maximal_inequalities(self):
        return {c: self.inequalities(c) for c in self.maximal if self.dim(c) == self.n}

    def maximal_cones_containing(self, point: Sequence) -> list[frozenset[int]]:
        return [c for c, ineq in self._maximal_inequalities.items() if in_cone_by_inequalities(point, ineq)]

    def to_json(self) -> dict:
        index = {c: i for i, c in enumerate(self.cones)}
        cones = []
        for c in self.cones:
            entry = {"rayIdx": sorted(c), "dim": self.dims[c]}
            if self.source is not None:
                entry["dualFace"] = sorted(c)
            cones.append(entry)
        return {
            "n": self.n,
            "rays": [list(r) for r in self.rays],
            "cones": cones,
            "maximal": [index[c] for c in self.maximal],
            "simplicial": self.simplicial,
        }

    def __repr__(self):
        return f"Fan(n={self.n}, rays={len(self.rays)}, maximal={len(self.maximal)})"


def normal_fan(P: NewtonPolyhedron) -> Fan:
    """Normal fan of P: one ray per facet, one cone per face."""
    rays = [f.u for f in P.facets]
    cones = [fc.facets for fc in P.faces]
    maximal = [fc.facets for fc in P.faces if fc.dim == 0]
    fan = Fan(P.n, rays, maximal, cones=cones, source=P)
    for i in range(P.n):
        fan.standard_ray(i)
    return fan


def dual_pair(fan: Fan, obj):
    """Face <-> cone duality of a normal fan.

    A cone (iterable of ray indices) maps to its dual :class:`Face`; a Face or
    a vertex point maps to the dual cone.
    """
    P = fan.source
    if P is None:
        raise FanError("fan has no source polyhedron")
    if isinstance(obj, Face):
        if obj.polyhedron is not P:
            raise FanError("face belongs to another polyhedron")
        return obj.facets
    if isinstance(obj, (frozenset, set)):
        cone = frozenset(obj)
        if cone not in fan.cone_set:
            raise FanError(f"{sorted(cone)} is not a cone of the fan")
        face = P.face(cone)
        assert face is not None and face.facets == cone
        return face
    # otherwise a vertex
    try:
        return P.face_of_vertex(obj).facets
    except KeyError:
        raise FanError(f"{obj} is not a vertex of the polyhedron") from None


def ray_adjacency(fan: Fan) -> set[frozenset[int]]:
    """Pairs of rays spanning a two-dimensional cone of the fan."""
    return {c for c in fan.cones if len(c) == 2 and fan.dims[c] == 2}


def inscribed(ray_set: Iterable[int], fan: Fan) -> frozenset[int] | None:
    """Smallest cone of ``fan`` whose rays include ``ray_set``, else None."""
    s = frozenset(ray_set)
    cands = [c for c in fan.cones if s <= c]
    if not cands:
        return None
    meet = frozenset.intersection(*cands)
    if meet not in fan.cone_set:
        raise FanError("cones do not meet in a common face")
    return meet


def is_inscribable(ray_set: Iterable[int], fan: Fan) -> bool:
    s = frozenset(ray_set)
    return any(s <= c for c in fan.maximal)


def frugal_simplicial_subdivision(fan: Fan) -> Fan:
    """Pulling triangulation of every cone, using no new rays.

    Rays are ordered lexicographically by generator.  A non-simplicial cone is
    split into joins of its least ray with the subdivided facets not
    containing that ray.  Each face is subdivided by the same rule, so the
    pieces glue across shared faces.
    """
    order = {r: k for k, r in enumerate(sorted(range(len(fan.rays)), key=lambda i: fan.rays[i]))}
    memo: dict[frozenset[int], list[frozenset[int]]] = {}

    def pull(cone: frozenset[int]) -> list[frozenset[int]]:
        if cone in memo:
            return memo[cone]
        if fan.is_simplicial_cone(cone):
            out = [cone]
        else:
            apex = min(cone, key=order.__getitem__)
            out = []
            for facet in fan.cone_facets(cone):
                if apex in facet:
                    continue
                for piece in pull(facet):
                    out.append(piece | {apex})
        memo[cone] = out
        return out

    maximal = []
    for c in fan.maximal:
        maximal.extend(pull(c))
    return Fan(fan.n, fan.rays, maximal)
