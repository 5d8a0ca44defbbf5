"""Triangles in R^n: centroid, midpoints, in-plane circumcenter and the
locus of all points equidistant from the three vertices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .affine import AffineSubspace, nullspace, rank
from .numcore import (
    EUCLIDEAN,
    Backend,
    GeometryError,
    IrrationalNormError,
    NormSpec,
    Point,
    add,
    backend_of,
    distances_equal,
    dot,
    float_norm,
    fmt,
    midpoint,
    norm,
    norm_power,
    norm_sq,
    scale,
    sub,
    vsum,
)


@dataclass(frozen=True)
class Triangle:
    """Three non-collinear points. Side ``a_i`` is opposite vertex ``A_i``."""

    A0: Point
    A1: Point
    A2: Point
    backend: Backend = field(default=None, compare=False)

    def __post_init__(self):
        if self.backend is None:
            object.__setattr__(self, "backend", backend_of(self.A0, self.A1, self.A2))
        b = self.backend
        for name in ("A0", "A1", "A2"):
            object.__setattr__(self, name, tuple(b.coerce(x) for x in getattr(self, name)))
        n = len(self.A0)
        if n < 2 or len(self.A1) != n or len(self.A2) != n:
            raise ValueError("triangle vertices need a common dimension n >= 2")
        if rank([sub(self.A1, self.A0), sub(self.A2, self.A0)], b) < 2:
            raise GeometryError(
                f"collinear vertices {fmt(self.A0)}, {fmt(self.A1)}, {fmt(self.A2)} do not form a triangle"
            )

    @classmethod
    def from_points(cls, points: Sequence[Sequence], backend: Backend | None = None):
        A0, A1, A2 = (tuple(p) for p in points)
        return cls(A0, A1, A2, backend)

    @property
    def vertices(self) -> tuple:
        return (self.A0, self.A1, self.A2)

    @property
    def dim(self) -> int:
        return len(self.A0)

    @cached_property
    def vertex_sum(self) -> Point:
        return vsum(self.vertices)

    def others(self, i: int) -> tuple:
        """The two vertices on side a_i, in index order."""
        return tuple(self.vertices[j] for j in range(3) if j != i)


@dataclass(frozen=True)
class Sphere:
    """Sphere under a norm, stored by squared radius."""

    center: Point
    r_sq: object
    norm: NormSpec = EUCLIDEAN

    def __post_init__(self):
        if self.r_sq < 0:
            raise ValueError("negative squared radius")

    def contains(self, X: Point, backend: Backend | None = None) -> bool:
        backend = backend or backend_of(self.center, X, (self.r_sq,))
        d = sub(X, self.center)
        if self.norm.is_euclidean:
            d_sq = norm_sq(d)
        else:
            try:
                d_sq = norm(d, self.norm) ** 2 if backend.exact else float_norm(d, self.norm) ** 2
            except IrrationalNormError:
                d_sq = float_norm(d, self.norm) ** 2
        if backend.exact and not isinstance(d_sq, float) and not isinstance(self.r_sq, float):
            return d_sq == self.r_sq
        eps = backend.eps if not backend.exact else 1e-9
        return abs(float(d_sq) - float(self.r_sq)) <= eps * max(1.0, float(self.r_sq))


def centroid(t: Triangle) -> Point:
    return tuple(x / 3 for x in t.vertex_sum)


def midpoints(t: Triangle) -> tuple:
    """(M0, M1, M2) with M_i the midpoint of side a_i."""
    return tuple(midpoint(*t.others(i)) for i in range(3))


def _bisector_system(t: Triangle):
    e1, e2 = sub(t.A1, t.A0), sub(t.A2, t.A0)
    g11, g12, g22 = dot(e1, e1), dot(e1, e2), dot(e2, e2)
    return e1, e2, g11, g12, g22


def circumcenter_inplane(t: Triangle) -> tuple:
    """In-plane circumcenter O and squared circumradius.

    O = A0 + s (A1 - A0) + t (A2 - A0) with (s, t) solving the 2x2 Gram
    system of the two perpendicular-bisector conditions.
    """
    e1, e2, g11, g12, g22 = _bisector_system(t)
    det = g11 * g22 - g12 * g12
    h1, h2 = g11 / 2, g22 / 2
    s = (h1 * g22 - h2 * g12) / det
    u = (g11 * h2 - g12 * h1) / det
    O = add(t.A0, add(scale(s, e1), scale(u, e2)))
    return O, norm_sq(sub(O, t.A0))


def bisector_condition(t: Triangle) -> float:
    """2-norm condition number of the bisector Gram system."""
    _, _, g11, g12, g22 = _bisector_system(t)
    a, b, c = float(g11), float(g12), float(g22)
    mean, half = (a + c) / 2, math.hypot((a - c) / 2, b)
    lo = mean - half
    if lo <= 0:
        return math.inf
    return (mean + half) / lo


def circumlocus(t: Triangle) -> AffineSubspace:
    """All points equidistant from the vertices: O + null space of the edge rows."""
    O, _ = circumcenter_inplane(t)
    basis = nullspace([sub(t.A1, t.A0), sub(t.A2, t.A0)], backend=t.backend)
    return AffineSubspace(O, tuple(basis), t.backend)


def locus_sample(S: AffineSubspace, params: Sequence) -> Point:
    return S.point(params)


def vertex_distances(t: Triangle, P: Point, ns: NormSpec = EUCLIDEAN) -> list:
    """Squared distances (euclidean) or ``norm_power`` values from P to each vertex."""
    return [norm_power(sub(P, A), ns) for A in t.vertices]


def sphere_through(t: Triangle, P: Point, ns: NormSpec = EUCLIDEAN) -> Sphere:
    """Sphere centred at P through the three vertices; P must be equidistant."""
    if not distances_equal(P, t.vertices, ns, t.backend):
        raise GeometryError(
            f"{fmt(P)} is not equidistant from the vertices under {ns}: "
            f"distances {'squared ' if ns.is_euclidean else ''}"
            f"{fmt(vertex_distances(t, P, ns))}"
        )
    d = sub(P, t.A0)
    if ns.is_euclidean:
        r_sq = norm_sq(d)
    else:
        try:
            r_sq = norm(d, ns) ** 2
        except IrrationalNormError:
            r_sq = float_norm(d, ns) ** 2
    return Sphere(P, r_sq, ns)
