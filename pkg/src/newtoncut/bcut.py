"""B1-facets, admissible drop sets, and the polyhedron obtained by dropping them.

Coordinate directions are 0-based internally and 1-based in JSON output.
"""

from __future__ import annotations

import weakref

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .fan import Fan, is_inscribable
from .polyhedron import Face, NewtonPolyhedron, from_halfspaces
from .linalg import fmt_q

CONSISTENT = "consistent"
COMPATIBLE = "compatible"
GENERAL = "general"


class BSetError(ValueError):
    """A proposed drop set violates a hard precondition."""


@dataclass(frozen=True)
class B1Certificate:
    facet: int
    apex: tuple[Fraction, ...]
    base: int

    def to_json(self) -> dict:
        return {"facet": self.facet, "apex": [fmt_q(x) for x in self.apex], "base": self.base + 1}


def detect_b1(P: NewtonPolyhedron) -> dict[int, list[B1Certificate]]:
    """All apex/base pairs of every positive-level facet (empty list: not B1).

    Facets parallel to a coordinate hyperplane are never reported, since a
    B1-facet must meet that hyperplane in one of its own facets.
    """
    out: dict[int, list[B1Certificate]] = {}
    for t, facet in enumerate(P.facets):
        if facet.N <= 0:
            continue
        certs = []
        if facet.coordinate_direction() is None:
            verts = sorted(facet.vertex_idx)
            for v in verts:
                apex = P.vertices[v]
                for i in range(P.n):
                    if apex[i] != 1 or facet.u[i] == 0:
                        continue
                    if all(P.vertices[w][i] == 0 for w in verts if w != v):
                        certs.append(B1Certificate(t, apex, i))
        out[t] = sorted(certs, key=lambda c: c.base)
    return out


_ADJACENCY: "weakref.WeakKeyDictionary[NewtonPolyhedron, frozenset]" = weakref.WeakKeyDictionary()


def facet_adjacency(P: NewtonPolyhedron) -> frozenset[frozenset[int]]:
    """Pairs of facets meeting in a face of codimension two."""
    if P not in _ADJACENCY:
        out = set()
        for i, j in combinations(range(len(P.facets)), 2):
            face = P.face({i, j})
            if face is not None and face.dim == P.n - 2:
                out.add(frozenset((i, j)))
        _ADJACENCY[P] = frozenset(out)
    return _ADJACENCY[P]


def _components(members: Iterable[int], adjacency: set[frozenset[int]]) -> list[tuple[int, ...]]:
    members = sorted(set(members))
    seen: set[int] = set()
    comps = []
    for m in members:
        if m in seen:
            continue
        comp = []
        stack = [m]
        seen.add(m)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in members:
                if y not in seen and frozenset((x, y)) in adjacency:
                    seen.add(y)
                    stack.append(y)
        comps.append(tuple(sorted(comp)))
    return comps


@dataclass(frozen=True)
class BSet:
    facets: tuple[int, ...]
    mode: str
    choice: dict = field(default_factory=dict, hash=False)
    classes: tuple[tuple[int, ...], ...] = ()
    class_apex: tuple = ()
    class_base: tuple = ()

    @property
    def bases(self) -> set[int]:
        return {c.base for c in self.choice.values()}

    def to_json(self) -> dict:
        return {
            "facets": list(self.facets),
            "mode": self.mode,
            "certificates": [self.choice[t].to_json() for t in self.facets if t in self.choice],
            "classes": [
                {
                    "facets": list(c),
                    "apex": None if a is None else [fmt_q(x) for x in a],
                    "base": None if b is None else b + 1,
                }
                for c, a, b in zip(self.classes, self.class_apex, self.class_base)
            ],
        }


@dataclass(frozen=True)
class Refusal:
    reason: str
    component: tuple[int, ...]

    def __bool__(self):
        return False

    def to_json(self) -> dict:
        return {"refused": True, "reason": self.reason, "component": list(self.component)}


def _validate(P: NewtonPolyhedron, B: Iterable[int], need_b1: bool):
    B = tuple(sorted(set(B)))
    certs = detect_b1(P)
    for t in B:
        if not 0 <= t < len(P.facets):
            raise BSetError(f"facet index {t} out of range")
        facet = P.facets[t]
        if facet.N <= 0:
            raise BSetError(f"facet {t} has level 0 and cannot be dropped")
        if facet.coordinate_direction() is not None:
            raise BSetError(f"facet {t} lies in a translate of a coordinate hyperplane")
        if need_b1 and not certs[t]:
            raise BSetError(f"facet {t} is not a B1-facet")
    return B, certs


def choose_consistent(P: NewtonPolyhedron, B: Iterable[int]) -> BSet | Refusal:
    """Assign one base direction per adjacency class, or refuse."""
    B, certs = _validate(P, B, need_b1=True)
    adj = facet_adjacency(P)
    comps = _components(B, adj)
    choice = {}
    apexes, bases = [], []
    for comp in comps:
        common = set.intersection(*({c.base for c in certs[t]} for t in comp))
        if not common:
            return Refusal("inconsistent base directions", comp)
        b = min(common)
        picked = {t: next(c for c in certs[t] if c.base == b) for t in comp}
        apex = {c.apex for c in picked.values()}
        if len(apex) != 1:
            raise AssertionError(f"class {comp} with base {b + 1} has no common apex")
        choice.update(picked)
        apexes.append(apex.pop())
        bases.append(b)
    return BSet(B, CONSISTENT, choice, tuple(comps), tuple(apexes), tuple(bases))


def _search(comp, certs, adj):
    """Backtracking over certificate choices for one class."""
    assign: dict[int, B1Certificate] = {}

    def ok(t, c):
        for s, d in assign.items():
            if frozenset((s, t)) in adj and d.apex == c.apex and d.base != c.base:
                return False
        return True

    def go(k):
        if k == len(comp):
            return True
        t = comp[k]
        for c in certs[t]:
            if ok(t, c):
                assign[t] = c
                if go(k + 1):
                    return True
                del assign[t]
        return False

    return dict(assign) if go(0) else None


def choose_compatible(P: NewtonPolyhedron, B: Iterable[int]) -> BSet | Refusal:
    """Choose apices so adjacent members sharing an apex share the base, or refuse."""
    B, certs = _validate(P, B, need_b1=True)
    adj = facet_adjacency(P)
    comps = _components(B, adj)
    choice = {}
    apexes, bases = [], []
    for comp in comps:
        picked = _search(comp, certs, adj)
        if picked is None:
            return Refusal("no compatible choice of apices", comp)
        choice.update(picked)
        a = {c.apex for c in picked.values()}
        b = {c.base for c in picked.values()}
        apexes.append(a.pop() if len(a) == 1 else None)
        bases.append(b.pop() if len(b) == 1 else None)
    return BSet(B, COMPATIBLE, choice, tuple(comps), tuple(apexes), tuple(bases))


def general_bset(P: NewtonPolyhedron, B: Iterable[int]) -> BSet:
    """Any positive-level facets off coordinate translates, with no B1 structure."""
    B, _ = _validate(P, B, need_b1=False)
    comps = _components(B, facet_adjacency(P))
    return BSet(B, GENERAL, {}, tuple(comps), tuple(None for _ in comps), tuple(None for _ in comps))


def slope_classes(P: NewtonPolyhedron) -> dict[Fraction, tuple[int, ...]]:
    """Positive-level facets grouped by slope, slopes in decreasing order."""
    groups: dict[Fraction, list[int]] = {}
    for t, facet in enumerate(P.facets):
        if facet.N > 0:
            groups.setdefault(facet.slope, []).append(t)
    return {s: tuple(groups[s]) for s in sorted(groups, reverse=True)}


@dataclass(frozen=True)
class CutResult:
    original: NewtonPolyhedron
    dagger: NewtonPolyhedron
    dropped: tuple[int, ...]
    correspondence: dict = field(hash=False)  # original facet -> dagger facet

    @property
    def trivial(self) -> bool:
        return self.dagger.trivial

    def to_json(self) -> dict:
        return {
            "dropped": list(self.dropped),
            "polyhedron": self.dagger.to_json(),
            "correspondence": [[k, v] for k, v in sorted(self.correspondence.items())],
            "trivial": self.trivial,
        }


def b_cut(P: NewtonPolyhedron, B) -> CutResult:
    """Intersect the half-spaces of every facet outside B (level-0 ones included)."""
    if isinstance(B, BSet):
        dropped = B.facets
    else:
        dropped = general_bset(P, B).facets
    keep = [t for t in range(len(P.facets)) if t not in dropped]
    dagger = from_halfspaces([(P.facets[t].u, P.facets[t].N) for t in keep], P.n)
    corr = {}
    for t in keep:
        try:
            s = dagger.facet_index(P.facets[t].u)
        except KeyError:
            raise AssertionError(f"retained facet {P.facets[t].u} became redundant") from None
        if dagger.facets[s].N != P.facets[t].N:
            raise AssertionError("retained facet changed level")
        corr[t] = s
    if len(dagger.facets) != len(keep):
        raise AssertionError("the cut acquired facets that were not retained")
    return CutResult(P, dagger, tuple(dropped), corr)


@dataclass(frozen=True)
class ConeClassification:
    rays: frozenset[int]  # indices into the cut fan
    facets: frozenset[int]  # the same rays as facet indices of the original polyhedron
    old: bool
    face: Face | None = field(default=None, compare=False)
    base_ray: int | None = None
    sigma0: frozenset[int] | None = None
    apex: tuple | None = None
    apex_inscribed: bool | None = None

    @property
    def label(self) -> str:
        return "old" if self.old else "new"

    def to_json(self, fan: Fan) -> dict:
        out = {"cone": [list(fan.rays[r]) for r in sorted(self.rays)], "class": self.label}
        if self.old:
            out["face"] = list(self.face.key)
        else:
            out["baseRay"] = None if self.base_ray is None else list(fan.rays[self.base_ray])
            out["sigma0"] = None if self.sigma0 is None else [list(fan.rays[r]) for r in sorted(self.sigma0)]
        return out


def augmented_cones(fan: Fan) -> list[frozenset[int]]:
    """Nonempty ray subsets of maximal cones (cones of the augmented fan)."""
    out = set()
    for c in fan.maximal:
        items = sorted(c)
        for k in range(1, len(items) + 1):
            for sub in combinations(items, k):
                out.add(frozenset(sub))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def classify_cones(fan_dagger: Fan, P: NewtonPolyhedron, original_fan: Fan, B: BSet | None = None,
                   cones: Iterable[frozenset[int]] | None = None) -> dict[frozenset[int], ConeClassification]:
    """Label every cone of the augmented cut fan as old or new.

    Old means the facets of the original polyhedron dual to its rays share a
    point; this is cross-checked against inscribability in the original fan.
    """
    to_facet = {r: P.facet_index(u) for r, u in enumerate(fan_dagger.rays)}
    if original_fan.rays != tuple(f.u for f in P.facets):
        raise ValueError("original fan must be the normal fan of P")
    bases = None if B is None or B.mode == GENERAL else B.bases
    apex_by_base = {}
    if B is not None:
        for a, b in zip(B.class_apex, B.class_base):
            if a is not None and b is not None:
                apex_by_base.setdefault(b, []).append(a)
    out = {}
    for S in (cones if cones is not None else augmented_cones(fan_dagger)):
        S = frozenset(S)
        T = frozenset(to_facet[r] for r in S)
        face = P.face(T)
        old = face is not None
        if old != is_inscribable(T, original_fan):
            raise AssertionError(f"old/new criteria disagree on {sorted(T)}")
        if old:
            out[S] = ConeClassification(S, T, True, face)
            continue
        base_ray = sigma0 = apex = None
        inscribed = None
        for r in sorted(S):
            if not fan_dagger.is_standard(r):
                continue
            b = fan_dagger.rays[r].index(1)
            if bases is not None and b not in bases:
                continue
            rest = S - {r}
            if rest and P.face(frozenset(to_facet[x] for x in rest)) is not None:
                base_ray, sigma0 = r, rest
                restface = P.face(frozenset(to_facet[x] for x in rest))
                cands = apex_by_base.get(b, [])
                hits = [a for a in cands if restface.contains(a)]
                apex = hits[0] if hits else None
                inscribed = bool(hits) if cands else None
                break
        out[S] = ConeClassification(S, T, False, None, base_ray, sigma0, apex, inscribed)
    return out
