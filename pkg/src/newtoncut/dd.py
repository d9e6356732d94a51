"""Double description for pointed polyhedral cones in exact arithmetic.

The cone is given by homogeneous inequalities ``row . y >= 0`` whose rows
span the ambient space.  The output is the list of extreme rays, each with
the set of rows it makes tight.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .linalg import dot, independent_subset, inverse, primitive


class NotPointedError(ValueError):
    pass


def extreme_rays(rows: Sequence[Sequence], dim: int) -> list[tuple[tuple[int, ...], frozenset[int]]]:
    """Extreme rays of ``{y : row . y >= 0 for all rows}``.

    Rays come back as primitive integer vectors, deduplicated, sorted, each
    paired with the indices of the rows vanishing on it.
    """
    rows = [primitive(r) if any(r) else tuple(0 for _ in r) for r in rows]
    if any(len(r) != dim for r in rows):
        raise ValueError("row length does not match the ambient dimension")
    basis = independent_subset(rows)
    if len(basis) < dim:
        raise NotPointedError("inequalities do not cut out a pointed cone")

    # start from the simplicial cone of a row basis
    inv = inverse([rows[i] for i in basis])
    rays: list[tuple[int, ...]] = [primitive([inv[r][c] for r in range(dim)]) for c in range(dim)]
    processed = list(basis)
    tight: list[set[int]] = []
    for ray in rays:
        tight.append({i for i in processed if dot(rows[i], ray) == 0})

    for k, row in enumerate(rows):
        if k in basis:
            continue
        vals = [dot(row, ray) for ray in rays]
        pos = [i for i, x in enumerate(vals) if x > 0]
        neg = [i for i, x in enumerate(vals) if x < 0]
        zero = [i for i, x in enumerate(vals) if x == 0]
        new_rays = []
        new_tight = []
        for p in pos:
            for q in neg:
                common = tight[p] & tight[q]
                if len(common) < dim - 2:
                    continue
                # combinatorial adjacency: no third ray is tight on all of common
                if any(common <= tight[r] for r in range(len(rays)) if r != p and r != q):
                    continue
                vp, vq = vals[p], vals[q]
                cand = [vp * b - vq * a for a, b in zip(rays[p], rays[q])]
                new_rays.append(primitive(cand))
                new_tight.append(common | {k})
        keep = pos + zero
        rays = [rays[i] for i in keep] + new_rays
        tight = [tight[i] | ({k} if i in zero else set()) for i in keep] + new_tight
        processed.append(k)
        if not rays:
            raise NotPointedError("cone collapsed to the origin")

    out = {}
    for ray in rays:
        out[ray] = frozenset(i for i, r in enumerate(rows) if dot(r, ray) == 0)
    return sorted(out.items())


def cone_facets(generators: Sequence[Sequence[int]]) -> list[frozenset[int]]:
    """Facets of the cone spanned by ``generators`` as sets of generator indices.

    Works for cones of any dimension by projecting onto pivot coordinates of
    their linear span.  A one-dimensional cone has the zero cone as its only
    facet.
    """
    from .linalg import pivot_columns

    gens = [tuple(g) for g in generators]
    cols = pivot_columns(gens)
    d = len(cols)
    if d == 0:
        return []
    proj = [tuple(g[c] for c in cols) for g in gens]
    facets = []
    for _, t in extreme_rays(proj, d):
        facets.append(frozenset(t))
    return sorted(set(facets), key=lambda s: sorted(s))


def cone_inequalities(generators: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Inward facet normals of a full-dimensional cone."""
    n = len(generators[0])
    return [ray for ray, _ in extreme_rays(generators, n)]


def in_cone_by_inequalities(point: Sequence, normals: Sequence[Sequence[int]]) -> bool:
    return all(dot(u, point) >= 0 for u in normals)


def in_simplicial_cone(point: Sequence, generators: Sequence[Sequence[int]]) -> bool:
    """Membership in a full-dimensional simplicial cone by solving for coefficients."""
    from .linalg import solve

    n = len(point)
    mat = [[generators[j][i] for j in range(n)] for i in range(n)]
    coeffs = solve(mat, [Fraction(x) for x in point])
    if coeffs is None:
        raise ValueError("generators are not a basis")
    return all(c >= 0 for c in coeffs)
