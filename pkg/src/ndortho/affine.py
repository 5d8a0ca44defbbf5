"""Homotheties, point reflections, affine subspaces and collinear-point tools."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .numcore import (
    EXACT,
    FLOAT,
    Backend,
    GeometryError,
    Point,
    Vector,
    add,
    backend_of,
    combo,
    dot,
    max_abs,
    scale,
    sub,
    vec_eq,
)


# -- exact / tolerant linear algebra on small dense matrices ----------------

def rref(rows: Sequence[Sequence], backend: Backend = EXACT):
    """Reduced row echelon form.

    Returns ``(R, pivots)``. Rows are pivoted on the largest magnitude entry
    of each column; in float mode entries below ``eps * max|entry|`` count
    as zero. The reduced form (and hence the pivot columns) does not depend
    on the row order.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    mag = max((abs(x) for r in m for x in r), default=0)
    piv_r = 0
    pivots = []
    for c in range(ncols):
        if piv_r == len(m):
            break
        best = max(range(piv_r, len(m)), key=lambda i: abs(m[i][c]))
        if backend.is_zero(m[best][c], mag) or m[best][c] == 0:
            if not backend.exact:
                for i in range(piv_r, len(m)):
                    m[i][c] = 0 * m[i][c]
            continue
        m[piv_r], m[best] = m[best], m[piv_r]
        pv = m[piv_r][c]
        m[piv_r] = [x / pv for x in m[piv_r]]
        for i in range(len(m)):
            if i != piv_r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[piv_r])]
        pivots.append(c)
        piv_r += 1
    return m, pivots


def rank(rows: Sequence[Sequence], backend: Backend | None = None) -> int:
    if not rows:
        return 0
    backend = backend or backend_of(*rows)
    return len(rref(rows, backend)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None,
              backend: Backend | None = None) -> list[Vector]:
    """Basis of {x : rows @ x = 0}, one vector per free column of the RREF."""
    if not rows:
        if ncols is None:
            raise ValueError("need ncols for an empty matrix")
        one = backend.coerce(1) if backend else 1
        return [tuple(one if j == i else 0 * one for j in range(ncols)) for i in range(ncols)]
    backend = backend or backend_of(*rows)
    ncols = len(rows[0])
    R, pivots = rref(rows, backend)
    one, zero = backend.coerce(1), backend.coerce(0)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        x = [zero] * ncols
        x[free] = one
        for r, pc in enumerate(pivots):
            x[pc] = -R[r][free]
        basis.append(tuple(x))
    return basis


def solve_least_squares(columns: Sequence[Vector], w: Vector, backend: Backend):
    """Coefficients c minimising |sum c_i columns_i - w| (columns independent)."""
    k = len(columns)
    gram = [[dot(columns[i], columns[j]) for j in range(k)] + [dot(columns[i], w)]
            for i in range(k)]
    R, pivots = rref(gram, backend)
    if len(pivots) < k or (pivots and pivots[-1] == k):
        raise GeometryError("dependent columns in least-squares solve")
    return [R[i][k] for i in range(k)]


# -- transformations ----------------------------------------------------------

@dataclass(frozen=True)
class Homothety:
    """X -> (1 - ratio) * center + ratio * X."""

    center: Point
    ratio: object

    def __post_init__(self):
        if self.ratio == 0:
            raise ValueError("homothety ratio must be nonzero")

    def __call__(self, X: Point) -> Point:
        return homothety_apply(self, X)

    def then(self, other: "Homothety") -> "Homothety":
        """``other`` after ``self``; only defined for a shared center."""
        if not vec_eq(self.center, other.center):
            raise ValueError("composition implemented for a common center only")
        return Homothety(self.center, self.ratio * other.ratio)

    def inverse(self) -> "Homothety":
        return Homothety(self.center, 1 / self.ratio)


@dataclass(frozen=True)
class PointReflection:
    center: Point

    def __call__(self, X: Point) -> Point:
        return point_reflect(self.center, X)

    def as_homothety(self) -> Homothety:
        one = backend_of(self.center).coerce(1)
        return Homothety(self.center, -one)


def homothety_apply(h: Homothety, X: Point) -> Point:
    if len(h.center) != len(X):
        raise ValueError("dimension mismatch")
    lam = h.ratio
    return tuple((1 - lam) * c + lam * x for c, x in zip(h.center, X))


def point_reflect(C: Point, X: Point) -> Point:
    """Reflection of X through C: 2C - X."""
    if len(C) != len(X):
        raise ValueError("dimension mismatch")
    return tuple(2 * c - x for c, x in zip(C, X))


# -- affine subspaces -------------------------------------------------------

@dataclass(frozen=True)
class AffineSubspace:
    """base + span(basis); the basis must be linearly independent."""

    base: Point
    basis: tuple = ()
    backend: Backend = field(default=None, compare=False)

    def __post_init__(self):
        basis = tuple(tuple(b) for b in self.basis)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "base", tuple(self.base))
        if self.backend is None:
            object.__setattr__(self, "backend", backend_of(self.base, *basis))
        for b in basis:
            if len(b) != len(self.base):
                raise ValueError("basis vector dimension differs from base point")
        if basis and rank(basis, self.backend) != len(basis):
            raise GeometryError("basis vectors are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return len(self.base)

    def point(self, params: Sequence) -> Point:
        if len(params) != self.dim:
            raise ValueError(f"expected {self.dim} parameters, got {len(params)}")
        if not params:
            return self.base
        return add(self.base, combo(list(params), list(self.basis)))

    def contains(self, X: Point) -> bool:
        return subspace_contains(self, X)


def subspace_contains(S: AffineSubspace, X: Point) -> bool:
    if len(X) != S.ambient_dim:
        raise ValueError("dimension mismatch")
    backend = S.backend
    if backend.exact and not backend_of(X).exact:
        backend = FLOAT
    w = sub(X, S.base)
    if S.dim == 0:
        return vec_eq(X, S.base, backend)
    if backend.exact:
        return rank(list(S.basis) + [w], backend) == S.dim
    coeffs = solve_least_squares(S.basis, w, backend)
    resid = sub(w, combo(coeffs, list(S.basis)))
    return max_abs(resid) <= backend.eps * max(1.0, max_abs(w), max_abs(X))


def subspace_map(h: Homothety, S: AffineSubspace) -> AffineSubspace:
    """Image of S under a homothety: base mapped, directions scaled by the ratio."""
    return AffineSubspace(
        h(S.base), tuple(scale(h.ratio, b) for b in S.basis), S.backend
    )


# -- collinearity and cross-ratio --------------------------------------------

def collinear(points: Sequence[Point], backend: Backend | None = None) -> bool:
    """All points lie on one line (coincident points count as collinear)."""
    if len(points) < 3:
        raise ValueError("collinearity needs at least 3 points")
    backend = backend or backend_of(*points)
    diffs = [sub(p, points[0]) for p in points[1:]]
    if backend.exact:
        return rank(diffs, backend) <= 1
    ref = max(diffs, key=max_abs)
    m = max_abs(ref)
    if m == 0:
        return True
    u = [x / m for x in ref]
    for w in diffs:
        mw = max_abs(w)
        if mw == 0:
            continue
        v = [x / mw for x in w]
        for i in range(len(u)):
            for j in range(i + 1, len(u)):
                if abs(u[i] * v[j] - u[j] * v[i]) > backend.eps:
                    return False
    return True


def line_parameter(A: Point, B: Point, X: Point):
    """Signed position of X on line AB with A -> 0 and B -> 1."""
    d = sub(B, A)
    return dot(sub(X, A), d) / dot(d, d)


def cross_ratio(A: Point, B: Point, C: Point, D: Point, backend: Backend | None = None):
    """(AC/CB) / (AD/DB) with signed ratios along the common line.

    Equals -1 exactly when C and D divide AB harmonically.
    """
    pts = [A, B, C, D]
    backend = backend or backend_of(*pts)
    for i in range(4):
        for j in range(i + 1, 4):
            if vec_eq(pts[i], pts[j], backend):
                raise GeometryError("cross-ratio needs four distinct points")
    if not collinear(pts, backend):
        raise GeometryError("cross-ratio needs collinear points")
    tc = line_parameter(A, B, C)
    td = line_parameter(A, B, D)
    return (tc / (1 - tc)) / (td / (1 - td))
