"""Orthocenters associated to equidistant points.

For a triangle A0 A1 A2 in R^n and any point P equidistant from its vertices
(radius r), the orthocenter associated to P is ``H_P = A0 + A1 + A2 - 2P``.
This module builds every object attached to the pair (triangle, P) and
checks the relations between them. Distance relations are checked on
squared lengths, so on rational input everything is exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .affine import AffineSubspace, Homothety, collinear, cross_ratio, point_reflect, subspace_map
from .numcore import (
    EUCLIDEAN,
    GeometryError,
    NormSpec,
    Point,
    add,
    dot,
    float_norm,
    midpoint,
    norm_sq,
    scale,
    sub,
    to_float,
    vec_eq,
)
from .triangle import Sphere, Triangle, centroid, circumcenter_inplane, circumlocus, midpoints, sphere_through


@dataclass(frozen=True)
class OrthoConfig:
    """Everything Theorem-style constructions derive from (triangle, P)."""

    triangle: Triangle
    P: Point
    norm: NormSpec
    r_sq: object
    G: Point
    H_P: Point
    Q_P: Point
    M: tuple
    B: tuple
    N: tuple
    sphere: Sphere
    reflected: tuple
    feuerbach: Sphere
    sphere_H: Sphere

    @property
    def backend(self):
        return self.triangle.backend


def orthocenter_formula(t: Triangle, P: Point) -> Point:
    """A0 + A1 + A2 - 2P without the equidistance check."""
    return tuple(s - 2 * p for s, p in zip(t.vertex_sum, P))


def orthocenter_at(t: Triangle, P: Point, ns: NormSpec = EUCLIDEAN) -> Point:
    sphere_through(t, P, ns)
    return orthocenter_formula(t, P)


def classical_orthocenter(t: Triangle) -> Point:
    O, _ = circumcenter_inplane(t)
    return orthocenter_formula(t, O)


def symmetry_center(t: Triangle, P: Point) -> Point:
    """Q_P = (A0 + A1 + A2 - P) / 2."""
    return tuple((s - p) / 2 for s, p in zip(t.vertex_sum, P))


def _antitriangle(t: Triangle, P: Point) -> tuple:
    return tuple(sub(add(*t.others(i)), P) for i in range(3))


def antitriangle(t: Triangle, P: Point, ns: NormSpec = EUCLIDEAN) -> tuple:
    """(B0, B1, B2) with B_i = A_j + A_k - P, the reflection of P through M_i."""
    sphere_through(t, P, ns)
    return _antitriangle(t, P)


def configure(t: Triangle, P: Point, ns: NormSpec = EUCLIDEAN) -> OrthoConfig:
    S = sphere_through(t, P, ns)
    B = _antitriangle(t, P)
    M = midpoints(t)
    N = tuple(midpoint(B[j], B[k]) for j, k in ((1, 2), (0, 2), (0, 1)))
    H_P = orthocenter_formula(t, P)
    Q_P = symmetry_center(t, P)
    r_sq = S.r_sq
    return OrthoConfig(
        triangle=t,
        P=tuple(P),
        norm=ns,
        r_sq=r_sq,
        G=centroid(t),
        H_P=H_P,
        Q_P=Q_P,
        M=M,
        B=B,
        N=N,
        sphere=S,
        reflected=tuple(Sphere(b, r_sq, ns) for b in B),
        feuerbach=Sphere(Q_P, r_sq / 4, ns),
        sphere_H=Sphere(H_P, r_sq, ns),
    )


def reflected_spheres(t: Triangle, P: Point, ns: NormSpec = EUCLIDEAN) -> tuple:
    """Reflections of the sphere through A0, A1, A2 (center P) in the side midpoints."""
    return configure(t, P, ns).reflected


def feuerbach_sphere(t: Triangle, P: Point, ns: NormSpec = EUCLIDEAN) -> Sphere:
    return configure(t, P, ns).feuerbach


def orthocenter_set(t: Triangle) -> AffineSubspace:
    """Image of the circumcenter locus under X -> 3G - 2X."""
    return subspace_map(Homothety(centroid(t), t.backend.coerce(-2)), circumlocus(t))


# -- checks ---------------------------------------------------------------


def concurrence(cfg: OrthoConfig, X: Point) -> bool:
    """X lies on all three reflected spheres."""
    return all(S.contains(X, cfg.backend) for S in cfg.reflected)


def symmetry_center_holds(cfg: OrthoConfig) -> bool:
    A = cfg.triangle.vertices
    return all(vec_eq(midpoint(A[i], cfg.B[i]), cfg.Q_P, cfg.backend) for i in range(3))


@dataclass(frozen=True)
class EulerCheck:
    G: Point
    collinear: bool
    identity: bool
    degenerate: bool
    line: AffineSubspace | None

    @property
    def holds(self) -> bool:
        return self.collinear and self.identity


def euler_check(t: Triangle, P: Point, ns: NormSpec = EUCLIDEAN) -> EulerCheck:
    """P, G, H_P collinear with H_P - G = 2(G - P) (G between, 2 PG = G H_P)."""
    H_P = orthocenter_at(t, P, ns)
    G = centroid(t)
    b = t.backend
    identity = vec_eq(sub(H_P, G), scale(2, sub(G, P)), b)
    degenerate = vec_eq(P, G, b)
    line = None if degenerate else AffineSubspace(G, (sub(G, P),), b)
    return EulerCheck(G, collinear([P, G, H_P], b), identity, degenerate, line)


def feuerbach_points(cfg: OrthoConfig) -> tuple:
    return cfg.M + cfg.N


def feuerbach_points_hold(cfg: OrthoConfig) -> bool:
    return all(cfg.feuerbach.contains(X, cfg.backend) for X in feuerbach_points(cfg))


def _rational_direction(rng: random.Random, n: int) -> tuple:
    while True:
        d = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n))
        if any(d):
            return d


def second_intersection(S: Sphere, X0: Point, d: Sequence) -> Point:
    """Other point where the line X0 + s d meets a euclidean sphere through X0."""
    s = -2 * dot(sub(X0, S.center), d) / dot(d, d)
    return add(X0, scale(s, d))


def sample_sphere(S: Sphere, count: int, through: Point | None = None, seed: int = 0) -> list:
    """Points on S.

    Euclidean spheres with a known point ``through`` are sampled by second
    intersections of lines through it, which keeps rational input rational.
    Otherwise points are placed radially at distance r along fixed directions.
    """
    rng = random.Random(seed)
    n = len(S.center)
    if S.norm.is_euclidean and through is not None:
        return [second_intersection(S, through, _rational_direction(rng, n)) for _ in range(count)]
    r = float(S.r_sq) ** 0.5
    c = to_float(S.center)
    out = []
    for _ in range(count):
        u = [rng.gauss(0.0, 1.0) for _ in range(n)]
        k = r / float_norm(u, S.norm)
        out.append(tuple(ci + k * ui for ci, ui in zip(c, u)))
    return out


def feuerbach_homothety_holds(cfg: OrthoConfig, count: int = 16, seed: int = 0) -> bool:
    """Midpoints of H_P with points of S, and of P with points of S_H, lie on S_M."""
    A0 = cfg.triangle.A0
    on_S = sample_sphere(cfg.sphere, count, A0, seed)
    on_S += [point_reflect(cfg.P, A) for A in cfg.triangle.vertices]
    on_SH = sample_sphere(cfg.sphere_H, count, cfg.B[0], seed + 1)
    return all(cfg.feuerbach.contains(midpoint(cfg.H_P, X), cfg.backend) for X in on_S) and all(
        cfg.feuerbach.contains(midpoint(cfg.P, Y), cfg.backend) for Y in on_SH
    )


def harmonic_range_check(t: Triangle, P: Point, ns: NormSpec = EUCLIDEAN) -> bool:
    """P, Q_P, G, H_P harmonic: PG/GQ_P = PH_P/H_PQ_P = 2 and cross-ratio -1.

    The two ratios are checked through the lengths PG = PH_P/3,
    GQ_P = PH_P/6, Q_PH_P = PH_P/2, compared as squares.
    """
    cfg = configure(t, P, ns)
    b = t.backend
    if vec_eq(P, cfg.G, b):
        raise GeometryError("P coincides with the centroid; the range degenerates")
    P, G, Q, H = cfg.P, cfg.G, cfg.Q_P, cfg.H_P
    ph = norm_sq(sub(H, P))
    pg, gq, qh = norm_sq(sub(G, P)), norm_sq(sub(Q, G)), norm_sq(sub(H, Q))
    ratios = (
        b.eq(9 * pg, ph) and b.eq(36 * gq, ph) and b.eq(4 * qh, ph)
        and b.eq(pg, 4 * gq) and b.eq(ph, 4 * qh)
    )
    cr = cross_ratio(P, Q, G, H, b)
    return ratios and b.eq(cr, -1)


def reassociation_holds(cfg: OrthoConfig) -> bool:
    """Orthocenter of H_P A_i A_j associated to B_k is A_k."""
    A = cfg.triangle.vertices
    for k in range(3):
        i, j = (m for m in range(3) if m != k)
        sub_t = Triangle(cfg.H_P, A[i], A[j], cfg.backend)
        if not vec_eq(orthocenter_at(sub_t, cfg.B[k], cfg.norm), A[k], cfg.backend):
            return False
    return True


def inplane_altitude_holds(t: Triangle) -> bool:
    """(H - A_i) . (A_k - A_j) = 0 for the classical orthocenter H."""
    H = classical_orthocenter(t)
    b = t.backend
    A = t.vertices
    scale_ = max(norm_sq(sub(A[1], A[0])), norm_sq(sub(A[2], A[0])))
    return all(
        b.is_zero(dot(sub(H, A[i]), sub(*t.others(i)[::-1])), scale_) for i in range(3)
    )
