"""Simplicial fans: representation, validation, walls, subdivision.

A Fan stores primitive ray generators and full-dimensional maximal cones as
index sets. Construction canonicalizes the presentation (rays sorted
lexicographically, cones sorted), so structural equality of Fan objects is
fan equality; round-trip identities in the rest of the package rely on this.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from . import lattice
from .lattice import IntMatrix, Vector, is_primitive, vec

try:  # batch integer kernels; all uses are guarded against int64 overflow
    import numpy as _np
except Exception:  # pragma: no cover
    _np = None


class FanError(ValueError):
    """Raised when an operation receives a fan outside its preconditions."""


@dataclass(frozen=True)
class Wall:
    """Codimension-one cone of a complete fan with its two adjacent cones."""

    cone: tuple[int, ...]
    sides: tuple[int, int]  # indices into fan.max_cones


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    complete: Optional[bool]
    violations: tuple[str, ...]


@dataclass(frozen=True)
class Fan:
    rank: int
    rays: tuple[Vector, ...]
    max_cones: tuple[tuple[int, ...], ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        rays = tuple(vec(r) for r in self.rays)
        if any(len(r) != self.rank for r in rays):
            raise FanError("ray length differs from fan rank")
        order = sorted(range(len(rays)), key=lambda i: rays[i])
        remap = {old: new for new, old in enumerate(order)}
        cones = []
        for c in self.max_cones:
            c = tuple(int(i) for i in c)
            if any(not 0 <= i < len(rays) for i in c):
                raise FanError(f"cone {c} has an out-of-range ray index")
            cc = tuple(sorted(remap[i] for i in c))
            if len(set(cc)) != len(cc):
                raise FanError(f"cone {c} repeats a ray")
            if len(cc) != self.rank:
                raise FanError("maximal cones must be full-dimensional")
            cones.append(cc)
        if self.rank == 0 and not cones:
            cones = [()]
        object.__setattr__(self, "rays", tuple(rays[i] for i in order))
        object.__setattr__(self, "max_cones", tuple(sorted(set(cones))))

    # -- basic views --------------------------------------------------------

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def cone_rays(self, cone: Sequence[int]) -> list[Vector]:
        return [self.rays[i] for i in cone]

    def ray_index(self, v: Sequence[int]) -> int:
        return self.rays.index(vec(v))

    def __str__(self) -> str:
        return f"Fan(rank={self.rank}, rays={self.n_rays}, max_cones={len(self.max_cones)})"


# ---------------------------------------------------------------------------
# per-cone exact geometry, cached on the fan


def _cone_adj_det(fan: Fan, cone: tuple[int, ...]) -> tuple[list[list[int]], int]:
    """(adjugate, det) of the ray column matrix, normalized so det > 0."""
    key = ("adj", cone)
    hit = fan._cache.get(key)
    if hit is None:
        cols = [[fan.rays[i][k] for i in cone] for k in range(fan.rank)]
        adj, det = lattice.adjugate_int(cols)
        if det < 0:
            det = -det
            adj = [[-x for x in row] for row in adj]
        hit = (adj, det)
        fan._cache[key] = hit
    return hit


def cone_contains(fan: Fan, cone: tuple[int, ...], point: Sequence[int]) -> bool:
    """Exact membership of an integer point in a full-dimensional cone."""
    adj, det = _cone_adj_det(fan, cone)
    return all(lattice.vec_dot(row, point) >= 0 for row in adj)


def cone_coordinates(fan: Fan, cone: tuple[int, ...], point: Sequence[int]) -> list[Fraction]:
    adj, det = _cone_adj_det(fan, cone)
    return [Fraction(lattice.vec_dot(row, point), det) for row in adj]


def multiplicity(fan: Fan, cone: Sequence[int]) -> int:
    """Index of the subgroup the cone's rays generate inside the lattice of
    their span; 1 exactly for smooth cones."""
    cone = tuple(sorted(cone))
    key = ("mult", cone)
    hit = fan._cache.get(key)
    if hit is None:
        if len(cone) == fan.rank:
            _, det = _cone_adj_det(fan, cone)
            hit = det
        else:
            hit = lattice.sublattice_index([fan.rays[i] for i in cone])
        fan._cache[key] = hit
    return hit


# ---------------------------------------------------------------------------
# validation


def validate(fan: Fan) -> ValidationReport:
    """Check the fan axioms and report violations instead of raising.

    Checks: primitive distinct rays, simplicial strongly convex maximal
    cones, pairwise intersection in a common face. Completeness is reported
    but is not itself a validity requirement.
    """
    violations: list[str] = []
    for i, r in enumerate(fan.rays):
        if lattice.is_zero(r):
            violations.append(f"ray {i} is zero")
        elif not is_primitive(r):
            violations.append(f"ray {i} = {r} not primitive")
    if len(set(fan.rays)) != fan.n_rays:
        violations.append("duplicate rays")
    for c in fan.max_cones:
        if lattice.rank_int([fan.rays[i] for i in c]) != len(c):
            violations.append(f"cone {c} is not simplicial")
    if violations:
        return ValidationReport(False, None, tuple(violations))

    for a, b in combinations(range(len(fan.max_cones)), 2):
        ca, cb = fan.max_cones[a], fan.max_cones[b]
        if not _faces_properly(fan, ca, cb):
            violations.append(f"cones {ca} and {cb} do not meet in a common face")

    ok = not violations
    return ValidationReport(ok, is_complete(fan) if ok else None, tuple(violations))


def _faces_properly(fan: Fan, ca: tuple[int, ...], cb: tuple[int, ...]) -> bool:
    """True when the two cones intersect exactly in the cone on their shared rays."""
    shared = sorted(set(ca) & set(cb))
    if len(shared) == len(ca):
        return True
    # cheap certificate: the sum of the facet normals of ca that vanish on the
    # shared rays separates the cones whenever it is negative on all of cb's
    # other rays
    adj, _ = _cone_adj_det(fan, ca)
    pos = [k for k, i in enumerate(ca) if i not in shared]
    m = [sum(adj[k][j] for k in pos) for j in range(fan.rank)]
    if all(lattice.vec_dot(m, fan.rays[i]) < 0 for i in cb if i not in shared):
        return True
    # exact fallback: is there a point in both cones outside cone(shared)?
    n = fan.rank
    cols = []
    for i in ca:
        cols.append(list(fan.rays[i]) + [1 if i not in shared else 0])
    for i in cb:
        cols.append([-x for x in fan.rays[i]] + [0])
    target = [0] * n + [1]
    return lattice.nonneg_combination(target, cols) is None


def _facet_side_map(fan: Fan) -> dict[tuple[int, ...], list[int]]:
    key = "facets"
    hit = fan._cache.get(key)
    if hit is None:
        hit = {}
        for ci, c in enumerate(fan.max_cones):
            for drop in c:
                facet = tuple(i for i in c if i != drop)
                hit.setdefault(facet, []).append(ci)
        fan._cache[key] = hit
    return hit


def is_complete(fan: Fan) -> bool:
    """Support covers the whole space.

    Test: all maximal cones full-dimensional, every facet shared by exactly
    two of them, and a deterministic probe set (all sign vectors plus all
    pairwise ray sums) contained in the support.
    """
    key = "complete"
    hit = fan._cache.get(key)
    if hit is not None:
        return hit
    fan._cache[key] = result = _is_complete(fan)
    return result


def _is_complete(fan: Fan) -> bool:
    if fan.rank == 0:
        return len(fan.max_cones) == 1
    if not fan.max_cones:
        return False
    for c in fan.max_cones:
        if lattice.rank_int([fan.rays[i] for i in c]) != fan.rank:
            return False
    if any(len(sides) != 2 for sides in _facet_side_map(fan).values()):
        return False
    probes = [p for p in _sign_probes(fan.rank)]
    for i, j in combinations(range(fan.n_rays), 2):
        probes.append(lattice.vec_add(fan.rays[i], fan.rays[j]))
    return all(_support_contains(fan, probes))


def _sign_probes(n: int) -> list[Vector]:
    out = []
    for mask in range(2 ** n):
        out.append(tuple(1 if mask & (1 << k) else -1 for k in range(n)))
    return out


def _support_contains(fan: Fan, points: list[Vector]) -> list[bool]:
    """Batch membership of points in the union of the maximal cones."""
    adjs = [_cone_adj_det(fan, c)[0] for c in fan.max_cones]
    if _np is not None:
        bound = max((abs(x) for adj in adjs for row in adj for x in row), default=0)
        pbound = max((abs(x) for p in points for x in p), default=0)
        if bound * pbound * fan.rank < 2 ** 62:
            a = _np.array(adjs, dtype=_np.int64)            # (C, n, n)
            p = _np.array(points, dtype=_np.int64).T        # (n, P)
            prod = a @ p                                    # (C, n, P)
            return list((prod >= 0).all(axis=1).any(axis=0))
    out = []
    for pt in points:
        out.append(any(all(lattice.vec_dot(row, pt) >= 0 for row in adj) for adj in adjs))
    return out


# ---------------------------------------------------------------------------
# walls


def walls(fan: Fan) -> list[Wall]:
    """Every codimension-one cone with its two adjacent maximal cones."""
    key = "walls"
    hit = fan._cache.get(key)
    if hit is not None:
        return hit
    if not is_complete(fan):
        raise FanError("fan not complete or malformed")
    out = []
    for facet, sides in sorted(_facet_side_map(fan).items()):
        if len(sides) != 2:
            raise FanError("fan not complete or malformed")
        out.append(Wall(facet, (sides[0], sides[1])))
    fan._cache[key] = out
    return out


def picard_number(fan: Fan) -> int:
    """Rays minus rank, for complete simplicial fans."""
    if not is_complete(fan):
        raise FanError("Picard number needs a complete fan")
    return fan.n_rays - fan.rank


# ---------------------------------------------------------------------------
# stellar subdivision


def stellar_subdivision(fan: Fan, v: Sequence[int]) -> Fan:
    """Insert the primitive vector v as a new ray, splitting every maximal
    cone that contains it along its facets not containing v."""
    v = vec(v)
    if not is_primitive(v):
        raise FanError(f"subdivision vector {v} is not primitive")
    if v in fan.rays:
        raise FanError(f"{v} is already a ray")
    touched = []
    for c in fan.max_cones:
        coords = cone_coordinates(fan, c, v)
        if all(x >= 0 for x in coords):
            touched.append((c, coords))
    if not touched:
        raise FanError(f"{v} lies outside the support of the fan")

    new_rays = list(fan.rays) + [v]
    vi = len(fan.rays)
    new_cones = []
    touched_set = {c for c, _ in touched}
    for c in fan.max_cones:
        if c not in touched_set:
            new_cones.append(c)
    for c, coords in touched:
        for k, x in enumerate(coords):
            if x > 0:
                new_cones.append(tuple(sorted([i for i in c if i != c[k]] + [vi])))
    return Fan(fan.rank, tuple(new_rays), tuple(new_cones))
