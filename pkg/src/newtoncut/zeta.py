"""Candidate poles and topological zeta functions assembled from strata."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from . import upoly
from .bcut import CONSISTENT, BSet, Refusal, choose_compatible, choose_consistent, detect_b1, slope_classes
from .linalg import fmt_q
from .polyhedron import NewtonPolyhedron, newton_polyhedron
from .polynomial import Polynomial


class ZetaError(ValueError):
    pass


@dataclass(frozen=True)
class PoleSet:
    values: tuple[Fraction, ...]
    provenance: dict = field(default_factory=dict, hash=False, compare=False)

    def __contains__(self, x):
        return Fraction(x) in self.values

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def as_set(self) -> set[Fraction]:
        return set(self.values)

    def to_json(self) -> dict:
        return {
            "poles": [fmt_q(x) for x in self.values],
            "provenance": {fmt_q(k): v for k, v in self.provenance.items()},
        }


def _pole_set(P: NewtonPolyhedron, skip: Iterable[int] = ()) -> PoleSet:
    skip = set(skip)
    prov: dict[Fraction, list] = {Fraction(-1): ["constant"]}
    for t, facet in enumerate(P.facets):
        if facet.N > 0 and t not in skip:
            prov.setdefault(facet.slope, []).append(t)
    values = tuple(sorted(prov, reverse=True))
    return PoleSet(values, {k: prov[k] for k in values})


def candidate_poles(f: Polynomial | NewtonPolyhedron) -> PoleSet:
    """{-1} together with the slopes of all positive-level facets."""
    P = f if isinstance(f, NewtonPolyhedron) else newton_polyhedron(f.support, f.n)
    return _pole_set(P)


def reduced_candidate_poles(f: Polynomial | NewtonPolyhedron, B: BSet) -> PoleSet:
    """Candidate poles with the slopes carried only by dropped facets removed."""
    if isinstance(B, Refusal) or not isinstance(B, BSet):
        raise ZetaError("a validated drop set is required")
    P = f if isinstance(f, NewtonPolyhedron) else newton_polyhedron(f.support, f.n)
    return _pole_set(P, B.facets)


def removable_slope_classes(f: Polynomial | NewtonPolyhedron, mode: str = CONSISTENT) -> dict[Fraction, BSet]:
    """Slopes other than -1 whose whole facet class can be dropped, with witnesses.

    ``mode`` is ``consistent`` or ``compatible-n3`` (the latter needs n = 3).
    """
    P = f if isinstance(f, NewtonPolyhedron) else newton_polyhedron(f.support, f.n)
    if mode not in (CONSISTENT, "compatible-n3", "compatible"):
        raise ZetaError(f"unknown mode {mode}")
    if mode != CONSISTENT and P.n != 3:
        raise ZetaError("compatible mode is only supported in dimension 3")
    chooser = choose_consistent if mode == CONSISTENT else choose_compatible
    certs = detect_b1(P)
    out = {}
    for s, members in slope_classes(P).items():
        if s == -1:
            continue
        if any(not certs[t] for t in members):
            continue
        B = chooser(P, members)
        if isinstance(B, BSet):
            out[s] = B
    return out


# --- rational functions in s ------------------------------------------------


def _int_coeffs(p) -> list[int]:
    den = 1
    for c in p:
        den = lcm(den, Fraction(c).denominator)
    return [int(Fraction(c) * den) for c in p]


@dataclass(frozen=True)
class RationalFunction:
    """num/den with integer coefficients (ascending), reduced canonically."""

    num: tuple[int, ...]
    den: tuple[int, ...]

    @staticmethod
    def make(num, den) -> "RationalFunction":
        num, den = upoly.trim(num), upoly.trim(den)
        if not den:
            raise ZetaError("zero denominator")
        if not num:
            return RationalFunction((0,), (1,))
        g = upoly.pgcd(num, den)
        if upoly.degree(g) > 0:
            num = upoly.divmod_(num, g)[0]
            den = upoly.divmod_(den, g)[0]
        den_l = 1
        for c in list(num) + list(den):
            den_l = lcm(den_l, c.denominator)
        ni = [int(c * den_l) for c in num]
        di = [int(c * den_l) for c in den]
        content = 0
        for c in ni + di:
            content = gcd(content, c)
        ni = [c // content for c in ni]
        di = [c // content for c in di]
        if di[-1] < 0:
            ni = [-c for c in ni]
            di = [-c for c in di]
        return RationalFunction(tuple(ni), tuple(di))

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        num = upoly.add(upoly.mul(self.num, other.den), upoly.mul(other.num, self.den))
        return RationalFunction.make(num, upoly.mul(self.den, other.den))

    def __call__(self, s) -> Fraction:
        d = upoly.evaluate([Fraction(c) for c in self.den], Fraction(s))
        if d == 0:
            raise ZeroDivisionError("pole")
        return upoly.evaluate([Fraction(c) for c in self.num], Fraction(s)) / d

    def to_json(self) -> dict:
        return {"num": list(self.num), "den": list(self.den)}

    @staticmethod
    def from_json(data: dict) -> "RationalFunction":
        return RationalFunction.make([Fraction(c) for c in data["num"]], [Fraction(c) for c in data["den"]])

    def to_text(self) -> str:
        if self.den == (1,):
            return _factored(self.num)
        return f"{_factored(self.num)}/{_factored(self.den, wrap=True)}"

    def __str__(self):
        return self.to_text()


def _linear_text(r: Fraction) -> str:
    # primitive integer linear form with root r: (q s - p)
    a, b = r.denominator, -r.numerator
    lead = "s" if a == 1 else f"{a}s"
    if b == 0:
        return lead
    return f"{lead}{'+' if b > 0 else '-'}{abs(b)}"


def _poly_text(coeffs) -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mono = "" if k == 0 else ("s" if k == 1 else f"s^{k}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += sign + body
    return out


def _factored(coeffs: Sequence[int], wrap: bool = False) -> str:
    p = [Fraction(c) for c in coeffs]
    if upoly.degree(p) <= 0:
        return _poly_text(coeffs)
    factors, rest = upoly.linear_factorization(p)
    pieces = []
    for r, m in sorted(factors, key=lambda x: -x[0]):
        pieces.append(f"({_linear_text(r)})" + (f"^{m}" if m > 1 else ""))
    prod_lin = [Fraction(1)]
    for r, m in factors:
        for _ in range(m):
            prod_lin = upoly.mul(prod_lin, [-r.numerator, r.denominator])
    leftover = upoly.divmod_(p, prod_lin)[0]
    if upoly.degree(leftover) > 0:
        pieces.append(f"({_poly_text(_int_coeffs(leftover))})")
        const = ""
    else:
        const = leftover[0]
        const = "" if const == 1 else ("-" if const == -1 else fmt_q(const) + "*")
    body = "".join(pieces)
    if wrap and (len(pieces) > 1 or const):
        return f"({const}{body})"
    return f"{const}{body}"


@dataclass(frozen=True)
class Stratum:
    chi: int
    divisors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        divs = tuple((int(N), int(nu)) for N, nu in self.divisors)
        if len(set(divs)) != len(divs):
            raise ZetaError("divisor pairs must be distinct within a stratum")
        for N, nu in divs:
            if N < 0 or nu < 0 or (N == 0 and nu == 0):
                raise ZetaError(f"invalid divisor datum ({N}, {nu})")
        object.__setattr__(self, "divisors", divs)

    @staticmethod
    def from_json(data: dict) -> "Stratum":
        return Stratum(int(data["chi"]), tuple(tuple(d) for d in data["divisors"]))


def assemble_topological_zeta(strata: Iterable[Stratum | dict]) -> RationalFunction:
    """Sum of chi / prod (N s + nu) over the strata, reduced."""
    total = RationalFunction((0,), (1,))
    for st in strata:
        if isinstance(st, dict):
            st = Stratum.from_json(st)
        den = [Fraction(1)]
        for N, nu in st.divisors:
            den = upoly.mul(den, [Fraction(nu), Fraction(N)])
        total = total + RationalFunction.make([Fraction(st.chi)], den)
    return total


@dataclass(frozen=True)
class Poles:
    values: tuple[Fraction, ...]
    irrational_factor: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        return {
            "poles": [fmt_q(x) for x in self.values],
            "irrationalFactor": None if self.irrational_factor is None else list(self.irrational_factor),
        }


def actual_poles(Z: RationalFunction) -> Poles:
    """Rational roots of the reduced denominator; leftover factors are flagged."""
    den = [Fraction(c) for c in Z.den]
    factors, rest = upoly.linear_factorization(den)
    leftover = None
    if upoly.degree(rest) > 0:
        leftover = tuple(upoly.integer_primitive(rest))
    return Poles(tuple(sorted((r for r, _ in factors), reverse=True)), leftover)
