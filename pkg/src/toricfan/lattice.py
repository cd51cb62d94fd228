"""Exact integer and rational linear algebra over lattices.

Everything here works with Python ints and fractions.Fraction; no floating
point is used anywhere. Vectors are tuples of ints, matrices either the
IntMatrix wrapper (when an explicit shape matters) or lists of row lists
inside algorithms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional, Sequence

Vector = tuple[int, ...]


class LatticeError(ValueError):
    """Raised for malformed lattice-algebra inputs."""


# ---------------------------------------------------------------------------
# vectors


def vec(coords: Iterable[int]) -> Vector:
    v = tuple(int(c) for c in coords)
    return v


def vec_add(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x + y for x, y in zip(a, b, strict=True))

def vec_sub(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x - y for x, y in zip(a, b, strict=True))

def vec_scale(k: int, a: Sequence[int]) -> Vector:
    return tuple(k * x for x in a)

def vec_dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b, strict=True))

def is_zero(a: Sequence[int]) -> bool:
    return all(x == 0 for x in a)


def gcd_list(xs: Iterable[int]) -> int:
    g = 0
    for x in xs:
        g = math.gcd(g, x)
        if g == 1:
            return 1
    return g


def lcm(a: int, b: int) -> int:
    return abs(a * b) // math.gcd(a, b) if a and b else 0


def primitive_part(v: Sequence[int]) -> tuple[Vector, int]:
    """Factor v = k * v0 with v0 primitive (gcd of coordinates 1) and k > 0.

    The direction of v is kept; (0,-5) maps to ((0,-1), 5).
    """
    v = vec(v)
    g = gcd_list(v)
    if g == 0:
        raise LatticeError("zero has no primitive part")
    return tuple(x // g for x in v), g


def is_primitive(v: Sequence[int]) -> bool:
    return gcd_list(v) == 1


# ---------------------------------------------------------------------------
# integer matrices


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, row-major entries, explicit shape."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise LatticeError("entry count does not match shape")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if rows:
            cols = len(rows[0])
            if any(len(r) != cols for r in rows):
                raise LatticeError("ragged rows")
        elif cols is None:
            raise LatticeError("empty matrix needs an explicit column count")
        flat = tuple(int(x) for r in rows for x in r)
        return IntMatrix(len(rows), cols, flat)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise LatticeError("shape mismatch in matrix product")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                out.append(sum(r[k] * other[k, j] for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence[int]) -> Vector:
        if len(v) != self.cols:
            raise LatticeError("vector length mismatch")
        return tuple(vec_dot(self.row(i), v) for i in range(self.rows))

    def diagonal(self) -> Vector:
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))


# ---------------------------------------------------------------------------
# determinants, rank, inverses (fraction-free where it counts)


def det_int(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    if any(len(r) != n for r in a):
        raise LatticeError("determinant needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def rank_int(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix, exact."""
    a = [list(r) for r in rows]
    if not a or not a[0]:
        return 0
    m, n = len(a), len(a[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, m):
            if a[i][c]:
                g = math.gcd(a[r][c], a[i][c])
                f1, f2 = a[i][c] // g, a[r][c] // g
                a[i] = [f2 * x - f1 * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == m:
            break
    return r


def solve_rational(rows: Sequence[Sequence[int]], rhs: Sequence) -> Optional[list[Fraction]]:
    """Solve A x = b exactly over Q; None when inconsistent.

    A must have full column rank for the solution to be unique; a particular
    solution is returned when the system is consistent and underdetermined.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs, strict=True)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    for i in range(r, m):
        if a[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = a[i][n]
    return x


def invert_rational(rows: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(rows)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise LatticeError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def adjugate_int(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], int]:
    """Return (adj, det) with adj @ A == det * I, all integer."""
    d = det_int(rows)
    if d == 0:
        raise LatticeError("adjugate of a singular matrix")
    inv = invert_rational(rows)
    adj = [[int(x * d) for x in row] for row in inv]
    return adj, d


# ---------------------------------------------------------------------------
# Smith normal form


def _swap_rows(a, u, i, j):
    a[i], a[j] = a[j], a[i]
    u[i], u[j] = u[j], u[i]

def _swap_cols(a, v, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]
    for row in v:
        row[i], row[j] = row[j], row[i]

def _add_row(a, u, dst, src, f):
    a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
    u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

def _add_col(a, v, dst, src, f):
    for row in a:
        row[dst] += f * row[src]
    for row in v:
        row[dst] += f * row[src]


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form with transforms: U * M * V = D.

    D is diagonal with d_i | d_{i+1} and d_i >= 0; U and V are unimodular.
    Pivoting always selects the smallest nonzero entry in absolute value
    (ties broken in row-major order), so the transforms are deterministic.
    """
    a = m.row_lists()
    nr, nc = m.rows, m.cols
    u = IntMatrix.identity(nr).row_lists()
    v = IntMatrix.identity(nc).row_lists()

    def pivot_at(k):
        best = None
        for i in range(k, nr):
            for j in range(k, nc):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        return best

    k = 0
    while k < min(nr, nc):
        pos = pivot_at(k)
        if pos is None:
            break
        i, j = pos
        if i != k:
            _swap_rows(a, u, k, i)
        if j != k:
            _swap_cols(a, v, k, j)
        dirty = False
        for i in range(k + 1, nr):
            if a[i][k]:
                q = a[i][k] // a[k][k]
                _add_row(a, u, i, k, -q)
                if a[i][k]:
                    dirty = True
        for j in range(k + 1, nc):
            if a[k][j]:
                q = a[k][j] // a[k][k]
                _add_col(a, v, j, k, -q)
                if a[k][j]:
                    dirty = True
        if dirty:
            continue
        # pivot must divide the rest of the block; if not, fold the offending
        # row in and restart this step with a smaller pivot
        offender = None
        for i in range(k + 1, nr):
            for j in range(k + 1, nc):
                if a[i][j] % a[k][k] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            _add_row(a, u, k, offender, 1)
            continue
        if a[k][k] < 0:
            a[k] = [-x for x in a[k]]
            u[k] = [-x for x in u[k]]
        k += 1

    d = IntMatrix.from_rows(a, cols=nc)
    return d, IntMatrix.from_rows(u, cols=nr), IntMatrix.from_rows(v, cols=nc)


def invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    """Nonzero diagonal entries of the Smith form."""
    d, _, _ = smith_normal_form(m)
    return tuple(x for x in d.diagonal() if x != 0)


def sublattice_index(vectors: Sequence[Sequence[int]]) -> int:
    """Index of the span of the vectors inside its saturation.

    For d independent vectors in Z^n this is the multiplicity of the cone
    they generate: the product of the invariant factors.
    """
    m = IntMatrix.from_rows(vectors)
    facs = invariant_factors(m)
    if len(facs) != m.rows:
        raise LatticeError("vectors are linearly dependent")
    return math.prod(facs)


@dataclass(frozen=True)
class AbelianGroupShape:
    """Invariant-factor decomposition of a finitely generated abelian group."""

    invariant_factors: tuple[int, ...]
    free_rank: int

    def __post_init__(self):
        fs = self.invariant_factors
        if any(f < 2 for f in fs):
            raise LatticeError("invariant factors must be >= 2")
        if any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            raise LatticeError("invariant factors must form a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors and self.free_rank == 0

    @property
    def order(self) -> Optional[int]:
        """Group order; None when infinite."""
        if self.free_rank:
            return None
        return math.prod(self.invariant_factors)

    def __str__(self) -> str:
        parts = [f"Z/{f}" for f in self.invariant_factors]
        parts += ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "0"


def quotient_group(generators: Sequence[Sequence[int]], ambient_rank: int) -> AbelianGroupShape:
    """Shape of Z^ambient_rank modulo the subgroup the generators span."""
    gens = [vec(g) for g in generators]
    if any(len(g) != ambient_rank for g in gens):
        raise LatticeError("generator length does not match ambient rank")
    if not gens:
        return AbelianGroupShape((), ambient_rank)
    facs = invariant_factors(IntMatrix.from_rows(gens))
    return AbelianGroupShape(tuple(f for f in facs if f > 1), ambient_rank - len(facs))


# ---------------------------------------------------------------------------
# Hermite row basis and span coordinates


def hermite_row_basis(vectors: Sequence[Sequence[int]]) -> list[Vector]:
    """Canonical basis (Hermite form rows) of the lattice the rows generate.

    Rows come out in echelon order with positive pivots and the entries above
    each pivot reduced to [0, pivot).
    """
    if not vectors:
        return []
    by_pivot: dict[int, list[int]] = {}
    for v in vectors:
        work = list(v)
        while True:
            j = next((k for k, x in enumerate(work) if x != 0), None)
            if j is None:
                break
            if j not in by_pivot:
                by_pivot[j] = work
                break
            row = by_pivot[j]
            a, b = row[j], work[j]
            if b % a == 0:
                q = b // a
                work = [x - q * y for x, y in zip(work, row)]
            else:
                g, s, t = _xgcd(a, b)
                ag, bg = a // g, b // g
                by_pivot[j] = [s * x + t * y for x, y in zip(row, work)]
                work = [ag * y - bg * x for x, y in zip(row, work)]
    basis = [by_pivot[j] for j in sorted(by_pivot)]
    pivots = sorted(by_pivot)
    for i in reversed(range(len(basis))):
        p = pivots[i]
        if basis[i][p] < 0:
            basis[i] = [-x for x in basis[i]]
        for k in range(i):
            q = basis[k][p] // basis[i][p]
            if q:
                basis[k] = [x - q * y for x, y in zip(basis[k], basis[i])]
    return [tuple(b) for b in basis]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, s, t with s*a + t*b = g = gcd(a, b)."""
    s, ns = 1, 0
    t, nt = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        s, ns = ns, s - q * ns
        t, nt = nt, t - q * nt
        g, ng = ng, g - q * ng
    if g < 0:
        g, s, t = -g, -s, -t
    return g, s, t


def coords_in_basis(basis: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[Vector]:
    """Integer coordinates of v in the given independent basis rows, or None."""
    sol = solve_rational([[basis[i][j] for i in range(len(basis))] for j in range(len(v))], v)
    if sol is None:
        return None
    if any(x.denominator != 1 for x in sol):
        return None
    return tuple(int(x) for x in sol)


# ---------------------------------------------------------------------------
# dual-vector solving on a cone's span


def solve_affine_dual(rays: Sequence[Sequence[int]], values: Sequence) -> list[Fraction]:
    """The rational dual vector m with <m, ray_i> = values_i.

    Rays must be linearly independent (simplicial cone generators). When the
    rays do not span the ambient space the representative with zero
    coordinates on a fixed complement of the span is returned; pairings
    against vectors inside the span do not depend on that choice.
    """
    rays = [vec(r) for r in rays]
    if not rays:
        raise LatticeError("cone not simplicial")
    n = len(rays[0])
    d = len(rays)
    if rank_int(rays) != d:
        raise LatticeError("cone not simplicial")
    vals = [Fraction(x) for x in values]
    if len(vals) != d:
        raise LatticeError("one value per ray required")
    if d == n:
        sol = solve_rational(rays, vals)
        assert sol is not None
        return sol
    # project onto a basis of the span, solve there, pull back
    _, u, _ = smith_normal_form(IntMatrix.from_rows(rays).transpose())
    ub = [[vec_dot(u.row(i), r) for r in rays] for i in range(d)]
    msp = solve_rational([[ub[i][j] for i in range(d)] for j in range(d)], vals)
    assert msp is not None
    return [sum(msp[i] * u[i, j] for i in range(d)) for j in range(n)]


# ---------------------------------------------------------------------------
# exact nonnegative-combination feasibility (tiny simplex, Bland's rule)


def nonneg_combination(target: Sequence, gens: Sequence[Sequence]) -> Optional[list[Fraction]]:
    """Coefficients lam >= 0 with sum lam_i * gens_i == target, or None.

    Runs phase I of the simplex method over exact rationals with Bland's
    anti-cycling rule. Instances here are tiny, so no effort is spent on
    performance beyond exactness and guaranteed termination.
    """
    if not gens:
        return [] if all(Fraction(x) == 0 for x in target) else None
    m = len(target)
    cols = [[Fraction(g[i]) for i in range(m)] for g in gens]
    b = [Fraction(x) for x in target]
    sol = _simplex_feasible(cols, b)
    return sol


def _simplex_feasible(cols: list[list[Fraction]], b: list[Fraction]) -> Optional[list[Fraction]]:
    """Find x >= 0 with sum x_j cols[j] = b, via phase-I simplex."""
    m = len(b)
    n = len(cols)
    # flip rows so b >= 0
    sign = [1 if b[i] >= 0 else -1 for i in range(m)]
    a = [[sign[i] * cols[j][i] for j in range(n)] for i in range(m)]
    rhs = [sign[i] * b[i] for i in range(m)]
    # artificials occupy columns n .. n+m-1
    basis = [n + i for i in range(m)]
    tab = [row[:] + [Fraction(int(i == k)) for k in range(m)] + [rhs[i]]
           for i, row in enumerate(a)]
    ncols = n + m
    # objective: minimize sum of artificials; reduced costs of column j
    def reduced_cost(j):
        return -sum(tab[i][j] for i in range(m) if basis[i] >= n)

    while True:
        enter = None
        for j in range(ncols):
            if j in basis:
                continue
            if reduced_cost(j) < 0:
                enter = j
                break
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][ncols] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            # unbounded phase-I objective cannot happen; treat as infeasible
            return None
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        basis[leave] = enter

    if any(basis[i] >= n and tab[i][ncols] != 0 for i in range(m)):
        return None
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tab[i][ncols]
    if any(v < 0 for v in x):
        return None
    return x


def in_cone(point: Sequence, gens: Sequence[Sequence]) -> bool:
    """Exact membership of a point in the cone the generators span."""
    return nonneg_combination(point, gens) is not None


# ---------------------------------------------------------------------------
# fundamental-parallelepiped coset levels


def parallelepiped_levels(rays_in_span: Sequence[Sequence[int]]) -> tuple[int, list[int]]:
    """Pairing levels of the half-open parallelepiped points of a cone.

    For a full-rank d x d generator matrix A (columns = cone rays expressed
    in a basis of their span), returns (det, levels) where levels lists, for
    every nonzero lattice point p of {A t : 0 <= t_i < 1}, the integer
    sum(adj A * p) so that <m, p> = level / det for the dual vector m pairing
    every generator to 1. Exactly mult - 1 levels come back.
    """
    d = len(rays_in_span)
    a = [[rays_in_span[j][i] for j in range(d)] for i in range(d)]  # columns = rays
    det = det_int(a)
    if det == 0:
        raise LatticeError("vectors are linearly dependent")
    mdet = abs(det)
    if mdet == 1:
        return 1, []
    adj, dd = adjugate_int(a)
    if dd < 0:
        adj = [[-x for x in row] for row in adj]
    # coset representatives of Z^d / A Z^d via the Smith form
    dmat, u, _ = smith_normal_form(IntMatrix.from_rows(a))
    diag = [dmat[i, i] for i in range(d)]
    uinv_rows = invert_rational(u.row_lists())
    uinv = [[int(x) for x in row] for row in uinv_rows]
    levels = []
    for ytuple in product(*(range(di) for di in diag)):
        if all(y == 0 for y in ytuple):
            continue
        z = [sum(uinv[i][k] * ytuple[k] for k in range(d)) for i in range(d)]
        tau = [sum(adj[i][k] * z[k] for k in range(d)) for i in range(d)]
        r = [t % mdet for t in tau]
        if all(x == 0 for x in r):
            continue  # representative of the zero coset
        levels.append(sum(r))
    assert len(levels) == mdet - 1
    return mdet, levels
