"""Singularity classification for simplicial fans.

Per-cone classes come from the dual vector m pairing every generator to 1:
a cone is terminal when every other nonzero lattice point of it pairs
strictly above 1, canonical when nothing pairs below 1. The enumeration is
finite because it suffices to look at the lattice points of the half-open
fundamental parallelepiped of the generators.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from . import lattice
from .fans import Fan, FanError, multiplicity
from .lattice import IntMatrix, smith_normal_form, solve_affine_dual, vec_dot


class SingClass(enum.Enum):
    SMOOTH = "smooth"
    TERMINAL = "terminal"
    CANONICAL = "canonical-nonterminal"
    NOT_CANONICAL = "not-canonical"
    # simplicial cones always admit the dual vector, so this class can only
    # appear for data produced outside this package
    NOT_QGORENSTEIN = "not-QGorenstein"

    @property
    def severity(self) -> int:
        return _SEVERITY[self]

    def __str__(self) -> str:
        return self.value


_SEVERITY = {
    SingClass.SMOOTH: 0,
    SingClass.TERMINAL: 1,
    SingClass.CANONICAL: 2,
    SingClass.NOT_CANONICAL: 3,
    SingClass.NOT_QGORENSTEIN: 4,
}


@dataclass(frozen=True)
class CartierData:
    """Per-maximal-cone local data of a divisor and its Cartier index."""

    m_by_cone: tuple[tuple[Fraction, ...], ...]  # aligned with fan.max_cones
    index: int  # least l making every l * m integral


@dataclass(frozen=True)
class SingularityReport:
    max_cone_classes: tuple[SingClass, ...]  # aligned with fan.max_cones
    minimal_singular_cones: tuple[tuple[int, ...], ...]
    sing_locus_dim: int  # -1 when smooth
    isolated: bool
    finitely_many_nonterminal: bool

    @property
    def worst(self) -> SingClass:
        return max(self.max_cone_classes, key=lambda c: c.severity, default=SingClass.SMOOTH)

    def to_dict(self) -> dict:
        return {
            "max_cone_classes": [c.value for c in self.max_cone_classes],
            "minimal_singular_cones": [list(c) for c in self.minimal_singular_cones],
            "sing_locus_dim": self.sing_locus_dim,
            "isolated": self.isolated,
            "finitely_many_nonterminal": self.finitely_many_nonterminal,
        }


# ---------------------------------------------------------------------------
# Cartier data


def divisor_cartier_data(fan: Fan, coeffs: Sequence[int]) -> CartierData:
    """Local data of the divisor sum(coeffs[rho] * V(rho)) and its index.

    Every divisor on a simplicial fan is Q-Cartier; the index is the least
    positive l such that l times the divisor is Cartier.
    """
    if len(coeffs) != fan.n_rays:
        raise FanError("one coefficient per ray required")
    ms = []
    index = 1
    for c in fan.max_cones:
        m = solve_affine_dual([fan.rays[i] for i in c], [-coeffs[i] for i in c])
        ms.append(tuple(m))
        for x in m:
            index = index * x.denominator // math.gcd(index, x.denominator)
    return CartierData(tuple(ms), index)


def gorenstein_data(fan: Fan) -> CartierData:
    """Cartier data of -K; index 1 means the fan is Gorenstein."""
    key = "gorenstein"
    hit = fan._cache.get(key)
    if hit is None:
        hit = divisor_cartier_data(fan, canonical_divisor(fan))
        fan._cache[key] = hit
    return hit


def gorenstein_index(fan: Fan) -> int:
    return gorenstein_data(fan).index


def is_cartier(fan: Fan, coeffs: Sequence[int]) -> bool:
    return divisor_cartier_data(fan, coeffs).index == 1


def canonical_divisor(fan: Fan) -> tuple[int, ...]:
    """Coefficients of K: -1 on every ray."""
    return (-1,) * fan.n_rays


# ---------------------------------------------------------------------------
# per-cone classification


def classify_cone(fan: Fan, cone: Sequence[int]) -> SingClass:
    """Classify the affine patch of a simplicial cone.

    Smooth iff multiplicity 1; otherwise the lattice points of the half-open
    fundamental parallelepiped decide between terminal (all pair above 1
    against the dual vector of the generators), canonical-nonterminal (none
    below 1, some at exactly 1) and not-canonical.
    """
    cone = tuple(sorted(cone))
    key = ("class", cone)
    hit = fan._cache.get(key)
    if hit is None:
        hit = _classify(fan, cone)
        fan._cache[key] = hit
    return hit


def _classify(fan: Fan, cone: tuple[int, ...]) -> SingClass:
    rays = [fan.rays[i] for i in cone]
    if len(cone) == fan.rank:
        span_rays = rays
    else:
        span_rays = _span_coordinates(rays)
    det, levels = lattice.parallelepiped_levels(span_rays)
    if det == 1:
        return SingClass.SMOOTH
    low = min(levels)
    if low > det:
        return SingClass.TERMINAL
    if low == det:
        return SingClass.CANONICAL
    return SingClass.NOT_CANONICAL


def _span_coordinates(rays: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Re-express rays in a basis of the lattice of their span."""
    d = len(rays)
    if lattice.rank_int(rays) != d:
        raise FanError("cone is not simplicial")
    _, u, _ = smith_normal_form(IntMatrix.from_rows(rays).transpose())
    return [tuple(vec_dot(u.row(i), r) for i in range(d)) for r in rays]


# ---------------------------------------------------------------------------
# fan-wide report


def singularity_report(fan: Fan) -> SingularityReport:
    """Classify every maximal cone and locate the singular locus.

    minimal_singular_cones are the inclusion-minimal non-smooth faces; the
    singular locus is the union of their orbit closures, of dimension
    rank - min(dim). isolated means all of them are maximal;
    finitely_many_nonterminal means no proper face is worse than terminal.
    """
    n = fan.rank
    max_classes = tuple(classify_cone(fan, c) for c in fan.max_cones)

    singular_max = [c for c in fan.max_cones if multiplicity(fan, c) > 1]
    minimal: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for dim in range(1, n + 1):
        for cmax in singular_max:
            if multiplicity(fan, cmax) == 1:
                continue
            for face in combinations(cmax, dim):
                if face in seen:
                    continue
                seen.add(face)
                if any(set(m) <= set(face) for m in minimal):
                    continue
                if multiplicity(fan, face) > 1:
                    minimal.append(face)

    if minimal:
        sing_dim = n - min(len(f) for f in minimal)
        isolated = all(len(f) == n for f in minimal)
    else:
        sing_dim = -1
        isolated = True

    finitely_nonterminal = True
    for ci, cls in zip(fan.max_cones, max_classes):
        if cls.severity < SingClass.CANONICAL.severity:
            continue
        # only faces of a non-terminal maximal cone can be non-terminal
        for dim in range(1, n):
            for face in combinations(ci, dim):
                if multiplicity(fan, face) == 1:
                    continue
                if classify_cone(fan, face).severity >= SingClass.CANONICAL.severity:
                    finitely_nonterminal = False
                    break
            if not finitely_nonterminal:
                break
        if not finitely_nonterminal:
            break

    return SingularityReport(
        max_cone_classes=max_classes,
        minimal_singular_cones=tuple(sorted(minimal, key=lambda f: (len(f), f))),
        sing_locus_dim=sing_dim,
        isolated=isolated,
        finitely_many_nonterminal=finitely_nonterminal,
    )


def has_canonical_singularities(fan: Fan) -> bool:
    """No maximal cone (hence no cone) is worse than canonical."""
    return all(classify_cone(fan, c).severity <= SingClass.CANONICAL.severity
               for c in fan.max_cones)


def is_terminal_fan(fan: Fan) -> bool:
    return all(classify_cone(fan, c).severity <= SingClass.TERMINAL.severity
               for c in fan.max_cones)
