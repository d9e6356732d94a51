"""Cox presentations of fans, proper transforms, and the SNC certificate.

Variables of a presentation are indexed by rays: the standard rays e_1..e_n
come first (named x1'..xn'), then the remaining rays (named u1, u2, ...).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .bcut import (
    BSet,
    ConeClassification,
    CutResult,
    GENERAL,
    Refusal,
    augmented_cones,
    b_cut,
    classify_cones,
)
from .fan import Fan, frugal_simplicial_subdivision, normal_fan
from .linalg import det, dot, fmt_q, invariant_factors
from .nondegeneracy import OracleConfig, face_verdict
from .polyhedron import NewtonPolyhedron, newton_polyhedron
from .polynomial import Polynomial, format_terms


class TransformError(ValueError):
    pass


def ray_order(fan: Fan) -> list[int]:
    """Standard rays first (e_1..e_n), then the others in fan order."""
    std = [fan.standard_ray(i) for i in range(fan.n)]
    return std + [r for r in range(len(fan.rays)) if r not in std]


def variable_names(fan: Fan) -> list[str]:
    order = ray_order(fan)
    return [f"x{i + 1}'" for i in range(fan.n)] + [f"u{k + 1}" for k in range(len(order) - fan.n)]


@dataclass
class StackPresentation:
    fan: Fan
    order: list[int]
    names: list[str]
    beta: list[list[int]]
    weights: list[list[int]]
    irrelevant: list[frozenset[int]]
    pullback: list[list[int]]
    charts: list[dict] = field(default_factory=list)

    @property
    def exceptional(self) -> list[tuple[int, ...]]:
        return [self.fan.rays[r] for r in self.order[self.fan.n:]]

    def minimal_irrelevant(self) -> list[frozenset[int]]:
        gens = sorted(set(self.irrelevant), key=lambda g: (len(g), sorted(g)))
        return [g for g in gens if not any(h < g for h in gens)]

    def monomial(self, positions: Iterable[int]) -> str:
        names = [self.names[p] for p in sorted(positions)]
        return "*".join(names) if names else "1"

    def pullback_text(self) -> list[str]:
        out = []
        for i, row in enumerate(self.pullback):
            out.append(f"x{i + 1} -> " + format_terms({tuple(row): Fraction(1)}, self.names))
        return out

    def to_json(self) -> dict:
        return {
            "variables": self.names,
            "rays": [list(self.fan.rays[r]) for r in self.order],
            "beta": self.beta,
            "weights": {name: row for name, row in zip(self.names, self.weights)},
            "irrelevant": [self.monomial(g) for g in self.irrelevant],
            "irrelevantMinimal": [self.monomial(g) for g in self.minimal_irrelevant()],
            "pullback": self.pullback_text(),
            "charts": self.charts,
        }


def chart_group(generators) -> dict:
    """Finite group Z^n / (lattice of a simplicial cone) as invariant factors."""
    factors = [d for d in invariant_factors(generators) if d != 1]
    order = 1
    for d in invariant_factors(generators):
        order *= d
    if order != abs(det(generators)):
        raise AssertionError("Smith form order disagrees with the determinant")
    return {"invariantFactors": factors, "order": order}


def cox_presentation(fan: Fan) -> StackPresentation:
    n = fan.n
    try:
        order = ray_order(fan)
    except KeyError as exc:
        raise TransformError(f"fan is missing a standard ray: {exc}") from None
    pos = {r: k for k, r in enumerate(order)}
    rays = [fan.rays[r] for r in order]
    beta = [[u[i] for u in rays] for i in range(n)]
    ex = rays[n:]
    weights = [[u[i] for u in ex] for i in range(n)]
    for k in range(len(ex)):
        weights.append([-1 if j == k else 0 for j in range(len(ex))])
    for i in range(n):
        for k in range(len(ex)):
            if sum(beta[i][j] * weights[j][k] for j in range(len(rays))) != 0:
                raise AssertionError("beta does not annihilate the weight lattice")
    irrelevant = []
    for c in fan.maximal:
        irrelevant.append(frozenset(pos[r] for r in order if r not in c))
    charts = []
    sub = frugal_simplicial_subdivision(fan)
    for c in sub.maximal:
        gens = [sub.rays[r] for r in sorted(c)]
        info = chart_group([[g[i] for g in gens] for i in range(n)])
        info["cone"] = [list(g) for g in gens]
        charts.append(info)
    return StackPresentation(fan, order, variable_names(fan), beta, weights, irrelevant, beta, charts)


@dataclass
class TransformedPolynomial:
    names: list[str]
    rays: list[tuple[int, ...]]  # in variable order
    terms: dict  # exponent over variables -> coefficient
    multiplicities: list[Fraction]  # N_rho per variable
    origin: dict = field(default_factory=dict)  # exponent over variables -> original exponent

    def restrict(self, positions: Iterable[int]) -> "TransformedPolynomial":
        """Set the variables at ``positions`` to zero."""
        pos = set(positions)
        keep = {e: c for e, c in self.terms.items() if all(e[p] == 0 for p in pos)}
        return TransformedPolynomial(self.names, self.rays, keep, self.multiplicities,
                                     {e: self.origin[e] for e in keep})

    def to_text(self) -> str:
        return format_terms(self.terms, self.names)

    def to_json(self) -> dict:
        return {
            "variables": self.names,
            "terms": [{"exp": list(e), "coeff": fmt_q(c)} for e, c in self.terms.items()],
            "multiplicities": [fmt_q(x) for x in self.multiplicities],
            "text": self.to_text(),
        }


def proper_transform(f: Polynomial, fan: Fan, P: NewtonPolyhedron | None = None) -> TransformedPolynomial:
    """Pull back along the fan's toric morphism and divide by each x'_rho^{N_rho}.

    N_rho is read off the polyhedron the fan came from (the cut polyhedron
    for a cut fan); it must agree with f's own support function on every ray.
    """
    P = P or newton_polyhedron(f.support, f.n)
    order = ray_order(fan)
    rays = [fan.rays[r] for r in order]
    levels = fan.source if fan.source is not None else P
    mult = [levels.phi(u) for u in rays]
    terms = {}
    origin = {}
    for a, c in f.terms.items():
        e = []
        for u, N in zip(rays, mult):
            x = dot(a, u) - N
            if x < 0:
                raise TransformError(f"negative exponent on ray {u}: fan not compatible with the polynomial")
            e.append(int(x))
        terms[tuple(e)] = c
        origin[tuple(e)] = a
    return TransformedPolynomial(variable_names(fan), rays, terms, mult, origin)


def relative_canonical(fan: Fan) -> dict[tuple[int, ...], tuple[int, int]]:
    """Per ray: (multiplicity |u| - 1 in the relative canonical divisor, nu = |u|)."""
    return {fan.rays[r]: (sum(fan.rays[r]) - 1, sum(fan.rays[r])) for r in ray_order(fan)}


def orbit_restriction(fprime: TransformedPolynomial, cone: Iterable[tuple[int, ...]]) -> TransformedPolynomial:
    """Restrict to the closed orbit of ``cone`` (given by ray generators)."""
    rays = [tuple(u) for u in cone]
    pos = [fprime.rays.index(u) for u in rays]
    return fprime.restrict(pos)


def numerical_data(fan: Fan, f: Polynomial, P: NewtonPolyhedron | None = None) -> list[tuple[int, int]]:
    """{(1,1)} together with (N_rho, |u_rho|) for rays with N_rho > 0."""
    P = P or newton_polyhedron(f.support, f.n)
    out = {(1, 1)}
    for u in fan.rays:
        N = P.phi(u)
        if N > 0:
            out.add((int(N), sum(u)))
    return sorted(out)


def verification_cones(fan: Fan) -> list[frozenset[int]]:
    """Augmented cones not contained in any coordinate hyperplane."""
    out = []
    for S in augmented_cones(fan):
        if all(any(fan.rays[r][i] > 0 for r in S) for i in range(fan.n)):
            out.append(S)
    return out


@dataclass
class OrbitRecord:
    cone: list[tuple[int, ...]]
    cls: str
    case: str
    ok: bool
    detail: dict

    def to_json(self) -> dict:
        return {
            "cone": [list(u) for u in self.cone],
            "class": self.cls,
            "case": self.case,
            "verdict": "pass" if self.ok else "fail",
            "detail": self.detail,
        }


@dataclass
class SNCCertificate:
    passed: bool
    orbits: list[OrbitRecord]
    numerical: list[tuple[int, int]]
    cut: CutResult
    fan: Fan
    fprime: TransformedPolynomial

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "orbits": [o.to_json() for o in self.orbits],
            "numericalData": [list(x) for x in self.numerical],
            "dropped": list(self.cut.dropped),
            "fPrime": self.fprime.to_text(),
        }


def _case_b(fprime: TransformedPolynomial, cls: ConeClassification, pos: dict[int, int]):
    if cls.base_ray is None:
        return False, {"reason": "no standard base ray whose removal leaves an old cone"}
    g = fprime.restrict(pos[r] for r in cls.sigma0)
    b = pos[cls.base_ray]
    by_power: dict[int, list] = {}
    for e, c in g.terms.items():
        by_power.setdefault(e[b], []).append((e, c))
    detail = {"baseVariable": fprime.names[b]}
    constant = by_power.get(0, [])
    linear = by_power.get(1, [])
    if constant:
        detail["reason"] = "terms constant in the base variable survive"
        detail["residual"] = format_terms(dict(constant), fprime.names)
        return False, detail
    if len(linear) != 1:
        detail["reason"] = f"expected one term linear in the base variable, found {len(linear)}"
        detail["residual"] = format_terms(dict(linear), fprime.names)
        return False, detail
    e, c = linear[0]
    detail["witness"] = format_terms({e: c}, fprime.names)
    detail["apex"] = [fmt_q(x) for x in g.origin[e]]
    if cls.apex is not None and tuple(g.origin[e]) != tuple(cls.apex):
        detail["note"] = "linear term differs from the class apex"
    return True, detail


def verify_desingularization(f: Polynomial, B: BSet, config: OracleConfig | None = None) -> SNCCertificate:
    """Check that the blow-up along the cut fan resolves f above the origin."""
    if isinstance(B, Refusal):
        raise TransformError(f"drop set was refused: {B.reason}")
    config = config or OracleConfig()
    P = newton_polyhedron(f.support, f.n)
    sigma = normal_fan(P)
    cut = b_cut(P, B)
    dagger = normal_fan(cut.dagger)
    fprime = proper_transform(f, dagger, P)
    order = ray_order(dagger)
    pos = {r: k for k, r in enumerate(order)}
    orbits = verification_cones(dagger)
    classes = classify_cones(dagger, P, sigma, B, cones=orbits)
    verdicts = {}
    records = []
    for S in sorted(orbits, key=lambda s: (len(s), sorted(pos[r] for r in s))):
        cls = classes[S]
        cone = [dagger.rays[r] for r in sorted(S, key=pos.__getitem__)]
        if cls.old:
            face = cls.face
            if not face.compact:
                raise AssertionError(f"old orbit {cone} has a non-compact face")
            restricted = fprime.restrict(pos[r] for r in S)
            on_face = {a for a in f.support if face.contains(a)}
            if {tuple(a) for a in restricted.origin.values()} != on_face:
                raise AssertionError("orbit restriction does not match the face polynomial")
            if face.key not in verdicts:
                verdicts[face.key] = face_verdict(f, face, config)
            v = verdicts[face.key]
            records.append(OrbitRecord(cone, "old", "A", v.ok, v.to_json()))
        else:
            ok, detail = _case_b(fprime, cls, pos)
            if ok:
                # the apex is the only point of the sigma0 face at height 1 over the base
                b = dagger.rays[cls.base_ray].index(1)
                rest = P.face(frozenset(P.facet_index(dagger.rays[r]) for r in cls.sigma0))
                apex = tuple(Fraction(x) for x in detail["apex"])
                if any(v[b] < 2 for v in rest.vertices if v != apex):
                    raise AssertionError(f"sigma0 face of {cone} has a second vertex at height 1")
            records.append(OrbitRecord(cone, "new", "B", ok, detail))
    passed = all(r.ok for r in records)
    return SNCCertificate(passed, records, numerical_data(dagger, f, P), cut, dagger, fprime)
