"""Orthocentric systems of four points in R^n.

Four points form an orthocentric system when the fourth equals
``A0 + A1 + A2 - 2P`` for some P equidistant from the first three.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .affine import Homothety, homothety_apply, rank, solve_least_squares
from .numcore import (
    EUCLIDEAN,
    Backend,
    GeometryError,
    IrrationalNormError,
    NormSpec,
    Point,
    add,
    backend_of,
    dot,
    float_norm,
    fmt,
    isosceles_orthogonal,
    max_abs,
    norm,
    norm_sq,
    scale,
    sub,
    vec_eq,
    vsum,
)
from .orthocenter import configure
from .triangle import Triangle, sphere_through, vertex_distances

PAIRINGS = ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2))


class NotOrthocentric(GeometryError):
    pass


@dataclass(frozen=True)
class OrthocentricSystem:
    points: tuple
    P: Point
    r_sq: object
    norm: NormSpec = EUCLIDEAN
    backend: Backend = None

    def __post_init__(self):
        if self.backend is None:
            object.__setattr__(self, "backend", backend_of(*self.points, self.P))


def witness(points: Sequence[Point]) -> Point:
    """Candidate P = (A0 + A1 + A2 - A3) / 2."""
    A0, A1, A2, A3 = points
    return tuple((a + b + c - d) / 2 for a, b, c, d in zip(A0, A1, A2, A3))


def is_orthocentric(points: Sequence[Point], ns: NormSpec = EUCLIDEAN,
                    backend: Backend | None = None) -> OrthocentricSystem:
    """Validate four points as an orthocentric system (A3 is the fourth).

    Raises :class:`NotOrthocentric` if the witness is not equidistant, and
    :class:`GeometryError` for repeated points or collinear A0, A1, A2.
    """
    points = tuple(tuple(p) for p in points)
    if len(points) != 4:
        raise ValueError("an orthocentric system has four points")
    backend = backend or backend_of(*points)
    for i in range(4):
        for j in range(i + 1, 4):
            if vec_eq(points[i], points[j], backend):
                raise GeometryError(f"points {i} and {j} coincide at {fmt(points[i])}")
    t = Triangle(*points[:3], backend)
    P = witness(t.vertices + (points[3],))
    try:
        S = sphere_through(t, P, ns)
    except GeometryError as err:
        raise NotOrthocentric(
            f"witness {fmt(P)} is not equidistant from the first three points "
            f"{fmt(vertex_distances(t, P, ns))}"
        ) from err
    return OrthocentricSystem(t.vertices + (points[3],), P, S.r_sq, ns, backend)


def derived_point_sets(t: Triangle, P: Point, ns: NormSpec = EUCLIDEAN) -> dict:
    """The four-point sets of the derived systems, unvalidated.

    Keys: ``ABH`` {A, H_P}, ``BP`` {B, P}, ``MP`` {M, P}, ``NH`` {N, H_P},
    ``GG`` {G_i, G} where G_i is the centroid of the triangle obtained by
    replacing A_i with H_P.
    """
    cfg = configure(t, P, ns)
    Gs = tuple(tuple(x / 3 for x in vsum([cfg.H_P, *t.others(i)])) for i in range(3))
    return {
        "ABH": t.vertices + (cfg.H_P,),
        "BP": cfg.B + (cfg.P,),
        "MP": cfg.M + (cfg.P,),
        "NH": cfg.N + (cfg.H_P,),
        "GG": Gs + (cfg.G,),
    }


def derived_systems(t: Triangle, P: Point, ns: NormSpec = EUCLIDEAN) -> dict:
    """The five derived orthocentric systems, each validated."""
    return {k: is_orthocentric(v, ns, t.backend) for k, v in derived_point_sets(t, P, ns).items()}


def g_points_formula(t: Triangle, P: Point) -> tuple:
    """(A_i + 2A_j + 2A_k - 2P) / 3 for i = 0, 1, 2."""
    s = t.vertex_sum
    return tuple(
        tuple((2 * sx - ax - 2 * px) / 3 for sx, ax, px in zip(s, A, P)) for A in t.vertices
    )


def homothety_image(sys: OrthocentricSystem, h: Homothety) -> OrthocentricSystem:
    """Map a system by a homothety; the result is re-validated from scratch."""
    if h.ratio == 0:
        raise ValueError("homothety ratio must be nonzero")
    image = tuple(homothety_apply(h, X) for X in sys.points)
    return is_orthocentric(image, sys.norm, sys.backend)


@dataclass(frozen=True)
class PairingCheck:
    pairing: tuple
    u: tuple
    v: tuple
    isosceles: bool
    dot: object        # None outside the euclidean norm
    dot_zero: bool
    diff_matches: bool  # |u - v| == 2r
    sum_matches: bool   # |u + v| == 2r

    @property
    def holds(self) -> bool:
        return self.isosceles and self.diff_matches and self.sum_matches and self.dot_zero


def _norm_sq_under(v, ns: NormSpec, backend: Backend):
    if ns.is_euclidean:
        return norm_sq(v)
    if backend.exact:
        try:
            return norm(v, ns) ** 2
        except IrrationalNormError:
            pass
    return float_norm(v, ns) ** 2


def _matches(value, target, backend: Backend, rtol: float | None = None) -> bool:
    if backend.exact and not isinstance(value, float) and not isinstance(target, float):
        return value == target
    tol = rtol if rtol is not None else (backend.eps if not backend.exact else 1e-9)
    return abs(float(value) - float(target)) <= tol * max(1.0, abs(float(target)))


def opposite_orthogonality(sys: OrthocentricSystem) -> list:
    """Check the three pairings of opposite edges A_iA_j, A_kA_l.

    Each pairing must be isosceles-orthogonal, with both |u - v| and |u + v|
    equal to twice the radius (compared as squares: 4 r^2). Under the
    euclidean norm the dot product is reported too and must vanish.
    """
    out = []
    b, ns = sys.backend, sys.norm
    four_r_sq = 4 * sys.r_sq
    A = sys.points
    for i, j, k, l in PAIRINGS:
        u, v = sub(A[j], A[i]), sub(A[l], A[k])
        d = dot(u, v) if ns.is_euclidean else None
        dot_zero = d is None or b.is_zero(d, max(norm_sq(u), norm_sq(v)))
        out.append(PairingCheck(
            pairing=(i, j, k, l),
            u=u,
            v=v,
            isosceles=isosceles_orthogonal(u, v, ns, b),
            dot=d,
            dot_zero=dot_zero,
            diff_matches=_matches(_norm_sq_under(sub(u, v), ns, b), four_r_sq, b),
            sum_matches=_matches(_norm_sq_under(add(u, v), ns, b), four_r_sq, b),
        ))
    return out


def _foot(X: Point, face: Sequence[Point], backend: Backend) -> Point:
    F0 = face[0]
    cols = [sub(face[1], F0), sub(face[2], F0)]
    c = solve_least_squares(cols, sub(X, F0), backend)
    return add(F0, add(scale(c[0], cols[0]), scale(c[1], cols[1])))


def tetrahedron_altitudes_concur(points: Sequence[Point],
                                 backend: Backend | None = None) -> Point | None:
    """Common point of the four altitudes of a tetrahedron, or None.

    Altitude i runs from vertex i to its orthogonal projection on the plane
    of the opposite face. The first two altitudes are intersected exactly
    and the point is tested against the other two.
    """
    points = tuple(tuple(p) for p in points)
    if len(points) != 4:
        raise ValueError("a tetrahedron has four vertices")
    backend = backend or backend_of(*points)
    if len(points[0]) < 3:
        raise GeometryError("a tetrahedron needs ambient dimension >= 3")
    edges = [sub(p, points[0]) for p in points[1:]]
    if rank(edges, backend) < 3:
        raise GeometryError("coplanar points do not span a tetrahedron")

    lines = []
    for i, V in enumerate(points):
        face = [p for j, p in enumerate(points) if j != i]
        lines.append((V, sub(V, _foot(V, face, backend))))

    (V0, d0), (V1, d1) = lines[0], lines[1]
    # V0 + s d0 = V1 + t d1, least squares in (s, -t), then exact residual test
    c = solve_least_squares([d0, scale(-1, d1)], sub(V1, V0), backend)
    X = add(V0, scale(c[0], d0))
    Y = add(V1, scale(c[1], d1))
    if not vec_eq(X, Y, backend):
        return None
    for V, d in lines[2:]:
        w = sub(X, V)
        if max_abs(w) == 0:
            continue
        if rank([d, w], backend) > 1:
            return None
    return X
