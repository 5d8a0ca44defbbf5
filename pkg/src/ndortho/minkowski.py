"""Equidistant points and theorem checks under p-norms.

The search minimises ``(d0 - d1)^2 + (d1 - d2)^2`` (d_i the p-distance to
vertex i) by coordinate descent with golden-section line searches, then
polishes with damped Gauss-Newton steps on ``(d0 - d1, d1 - d2)`` when the
norm is smooth (1 < p < inf).
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import kernels
from .affine import Homothety, cross_ratio, homothety_apply, point_reflect
from .numcore import (
    EXACT,
    FLOAT,
    GeometryError,
    IrrationalNormError,
    NormSpec,
    Point,
    fmt,
    midpoint,
    norm,
    norm_sq,
    sub,
    to_float,
    vec_eq,
    vsum,
)
from .orthocenter import (
    configure,
    feuerbach_homothety_holds,
    orthocenter_formula,
    sample_sphere,
    symmetry_center,
)
from .orthosys import PAIRINGS, g_points_formula, witness
from .triangle import Sphere, Triangle, centroid, circumcenter_inplane, midpoints

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
METRIC_RTOL = 1e-8
SNAP_DENOMINATOR = 10**6


class NonConvergence(RuntimeError):
    def __init__(self, message, best_point, best_residual):
        super().__init__(message)
        self.best_point = best_point
        self.best_residual = best_residual


@dataclass
class EquidistantProblem:
    triangle: Triangle
    norm: NormSpec
    mode: str = "plane"            # "plane" or "ambient"
    initial: Point | None = None
    tol: float = DEFAULT_TOL
    max_sweeps: int = 400
    starts: int = 6
    seed: int = 0


@dataclass
class Solution:
    point: tuple
    residual: float
    history: list
    warnings: list = field(default_factory=list)


def _orthonormal(vectors: Sequence[Sequence[float]]) -> list:
    out = []
    for v in vectors:
        w = list(v)
        for u in out:
            c = sum(a * b for a, b in zip(w, u))
            w = [a - c * b for a, b in zip(w, u)]
        n = math.sqrt(sum(a * a for a in w))
        if n > 1e-300:
            out.append([a / n for a in w])
    return out


def _directions(verts, mode: str) -> list:
    n = len(verts[0])
    if mode == "plane":
        base = _orthonormal([[b - a for a, b in zip(verts[0], verts[1])],
                             [c - a for a, c in zip(verts[0], verts[2])]])
    elif mode == "ambient":
        base = [[1.0 if i == j else 0.0 for i in range(n)] for j in range(n)]
    else:
        raise ValueError(f"unknown search mode {mode!r}")
    dirs = [list(u) for u in base]
    # diagonals help across the kinks of p = 1 and p = inf
    for i in range(len(base)):
        for j in range(i + 1, len(base)):
            s = 1 / math.sqrt(2)
            dirs.append([s * (a + b) for a, b in zip(base[i], base[j])])
            dirs.append([s * (a - b) for a, b in zip(base[i], base[j])])
    return base, dirs


def _grad(x, a, p: float):
    v = [xi - ai for xi, ai in zip(x, a)]
    d = kernels.pnorm(v, p)
    if d == 0.0:
        return [0.0] * len(v), 0.0
    return [math.copysign((abs(vi) / d) ** (p - 1), vi) for vi in v], d


def _solve_small(J, F):
    """Minimum-norm solution of J dz = F for a 2 x k matrix J."""
    # J J^T y = F, dz = J^T y
    a = sum(x * x for x in J[0])
    b = sum(x * y for x, y in zip(J[0], J[1]))
    c = sum(x * x for x in J[1])
    det = a * c - b * b
    if not det or not math.isfinite(det):
        return None
    y0 = (c * F[0] - b * F[1]) / det
    y1 = (a * F[1] - b * F[0]) / det
    return [y0 * J[0][i] + y1 * J[1][i] for i in range(len(J[0]))]


def _newton(x, verts, p: float, basis, history, iters: int = 60):
    f = kernels.residual(x, verts, p)
    for _ in range(iters):
        if f == 0.0:
            break
        grads = []
        dists = []
        for a in verts:
            g, d = _grad(x, a, p)
            grads.append(g)
            dists.append(d)
        F = [dists[0] - dists[1], dists[1] - dists[2]]
        Jx = [[g0 - g1 for g0, g1 in zip(grads[0], grads[1])],
              [g1 - g2 for g1, g2 in zip(grads[1], grads[2])]]
        Jz = [[sum(r[i] * u[i] for i in range(len(u))) for u in basis] for r in Jx]
        dz = _solve_small(Jz, F)
        if dz is None:
            break
        step = [sum(dz[k] * basis[k][i] for k in range(len(basis))) for i in range(len(x))]
        lam = 1.0
        improved = False
        for _ in range(40):
            trial = [xi - lam * si for xi, si in zip(x, step)]
            ft = kernels.residual(trial, verts, p)
            if ft < f:
                x, f, improved = trial, ft, True
                break
            lam *= 0.5
        if not improved:
            break
        history.append(f)
    return x, f


def equidistant_search(prob: EquidistantProblem) -> Solution:
    """Find a point equidistant from the triangle's vertices under ``prob.norm``.

    Raises :class:`NonConvergence` (carrying the best point found) when no
    start reaches ``prob.tol``.
    """
    ns = prob.norm
    p = ns.p_float
    verts = [list(to_float(A)) for A in prob.triangle.vertices]
    scale_ = max(math.dist(verts[i], verts[j]) for i in range(3) for j in range(i + 1, 3))
    basis, dirs = _directions(verts, prob.mode)
    warnings = []
    if not ns.strictly_convex:
        warnings.append(f"norm {ns} is not strictly convex; equidistant points may be non-unique")

    rng = random.Random(prob.seed)
    G = [sum(c) / 3 for c in zip(*verts)]
    O, _ = circumcenter_inplane(Triangle(*[tuple(v) for v in verts]))
    starts = [list(prob.initial)] if prob.initial is not None else []
    starts += [list(O), G]
    while len(starts) < prob.starts:
        starts.append([g + scale_ * sum(rng.uniform(-1, 1) * u[i] for u in basis)
                       for i, g in enumerate(G)])

    smooth = ns.strictly_convex
    # descent hands over to Newton early on smooth norms
    cd_tol = max(prob.tol, 1e-12 * scale_**2) if smooth else prob.tol * 1e-6
    best = None
    for k, x0 in enumerate(starts):
        x, f, history = kernels.descend(x0, verts, p, dirs, cd_tol, prob.max_sweeps, scale_)
        history = list(history)
        if smooth:
            x, f = _newton(x, verts, p, basis, history)
        log.debug("start %d: residual %.3e after %d steps", k, f, len(history))
        if best is None or f < best.residual:
            best = Solution(tuple(x), f, history, list(warnings))
        if f <= prob.tol:
            return best
    raise NonConvergence(
        f"no start reached residual {prob.tol:g}; best {best.residual:.3e}",
        best.point, best.residual,
    )


def equidistant_solve(prob: EquidistantProblem) -> Point:
    return equidistant_search(prob).point


def residual(t: Triangle, P: Point, ns: NormSpec) -> float:
    return kernels.residual(list(to_float(P)), [list(to_float(A)) for A in t.vertices], ns.p_float)


def snap(P: Point, max_denominator: int = SNAP_DENOMINATOR) -> Point:
    """Continued-fraction rationalisation of each coordinate."""
    return tuple(Fraction(x).limit_denominator(max_denominator) for x in P)


# -- verification ------------------------------------------------------------

@dataclass
class MinkowskiReport:
    point: tuple
    norm: NormSpec
    residual: float
    radius: object        # None when only the square is rational
    r_sq: object
    clauses: dict = field(default_factory=dict)
    not_applicable: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v for v in self.clauses.values())

    def failed(self) -> list:
        return sorted(k for k, v in self.clauses.items() if not v)


class _Metric:
    """Distance comparisons under a norm; exact when the values are rational."""

    def __init__(self, ns: NormSpec, exact: bool, rtol: float):
        self.ns, self.exact, self.rtol = ns, exact, rtol

    def length(self, v):
        if self.exact:
            if self.ns.is_euclidean:
                return ("sq", norm_sq(v))
            try:
                return ("lin", norm(v, self.ns))
            except IrrationalNormError:
                pass
        return ("lin", kernels.pnorm(to_float(v), self.ns.p_float))

    def equals(self, v, target, factor=1) -> bool:
        """|v| == factor * target, target as returned by ``length``."""
        kind, value = self.length(v)
        tkind, tval = target
        if tkind == "sq":
            want = tval * factor * factor
            if kind == "sq" and not isinstance(value, float) and not isinstance(want, float):
                return value == want
            got, want = math.sqrt(float(value)), math.sqrt(float(want))
        else:
            got, want = float(value), float(tval) * float(factor)
            if (self.exact and kind == "lin" and not isinstance(value, float)
                    and not isinstance(tval, float)):
                return value == tval * factor
        return abs(got - want) <= self.rtol * max(abs(want), 1e-300)


def _affine_clauses(t: Triangle, P: Point, rng: random.Random) -> dict:
    """Norm-independent identities, evaluated in the triangle's backend."""
    b = t.backend
    A = t.vertices
    G = centroid(t)
    H = orthocenter_formula(t, P)
    Q = symmetry_center(t, P)
    M = midpoints(t)
    B = tuple(point_reflect(M[i], P) for i in range(3))
    N = tuple(point_reflect(Q, Mi) for Mi in M)
    out = {}
    out["theorem1.antitriangle_formula"] = all(
        vec_eq(B[i], tuple(x + y - z for x, y, z in zip(*t.others(i), P)), b) for i in range(3)
    )
    out["theorem1.symmetry_center"] = all(vec_eq(midpoint(A[i], B[i]), Q, b) for i in range(3))
    out["theorem1.euler"] = vec_eq(sub(H, G), tuple(2 * (g - p) for g, p in zip(G, P)), b)
    if vec_eq(P, G, b):
        out["theorem1.harmonic_range"] = None
    else:
        out["theorem1.harmonic_range"] = b.eq(cross_ratio(P, Q, G, H, b), -1)
    hm = Homothety(G, b.coerce(Fraction(-1, 2)))
    hq = Homothety(Q, b.coerce(Fraction(-1, 3)))
    Gs = g_points_formula(t, P)
    out["theorem2.medial_homothety"] = all(
        vec_eq(homothety_apply(hm, X), Y, b) for X, Y in zip(A + (H,), M + (P,))
    )
    out["theorem2.antitriangle_reflection"] = all(
        vec_eq(point_reflect(Q, X), Y, b) for X, Y in zip(A + (H,), B + (P,))
    )
    out["theorem2.n_reflection"] = all(
        vec_eq(point_reflect(Q, X), Y, b) for X, Y in zip(M + (P,), N + (H,))
    )
    out["theorem2.centroid_homothety"] = all(
        vec_eq(homothety_apply(hq, X), Y, b) for X, Y in zip(A + (H,), Gs + (G,))
    )
    lemma = True
    for _ in range(3):
        lam = b.coerce(Fraction(rng.choice([-3, -2, -1, 1, 2, 5]), rng.randint(1, 4)))
        C = tuple(b.coerce(Fraction(rng.randint(-5, 5), rng.randint(1, 3))) for _ in P)
        h = Homothety(C, lam)
        img = [homothety_apply(h, X) for X in A + (H,)]
        R = homothety_apply(h, P)
        lemma &= vec_eq(tuple(x + y + z - 2 * r for x, y, z, r in zip(*img[:3], R)), img[3], b)
        lemma &= vec_eq(witness(img), R, b)
    out["lemma.homothety_closure"] = lemma
    return out


def verify_under_norm(t: Triangle, P: Point, ns: NormSpec, tol: float = DEFAULT_TOL,
                      rtol: float = METRIC_RTOL, samples: int = 16, seed: int = 0,
                      snap_denominator: int = SNAP_DENOMINATOR) -> MinkowskiReport:
    """Re-check every clause of the orthocenter theorems under ``ns``.

    Affine clauses run exactly on a rational copy of (t, P) (P snapped to a
    nearby rational if it is a float); metric clauses use P as given, exactly
    when P is rational and the norm values are rational, within ``rtol``
    otherwise.
    """
    res = residual(t, P, ns)
    if res > tol:
        raise GeometryError(f"P = {fmt(P)} has residual {res:.3e} > {tol:g}; not equidistant")
    exact_P = all(not isinstance(x, float) for x in P) and t.backend.exact
    rng = random.Random(seed)

    if t.backend.exact:
        t_exact = t
    else:
        t_exact = Triangle(*(snap(A, snap_denominator) for A in t.vertices), EXACT)
    P_exact = tuple(P) if exact_P else snap(P, snap_denominator)
    clauses = _affine_clauses(t_exact, P_exact, rng)

    metric = _Metric(ns, exact_P, rtol)
    if exact_P:
        tm, Pm = t, tuple(P)
    else:
        tm = Triangle(*(to_float(A) for A in t.vertices), FLOAT)
        Pm = to_float(P)
    A = tm.vertices
    r = metric.length(sub(Pm, A[0]))
    H = orthocenter_formula(tm, Pm)
    Q = symmetry_center(tm, Pm)
    M = midpoints(tm)
    B = tuple(point_reflect(M[i], Pm) for i in range(3))
    N = tuple(point_reflect(Q, Mi) for Mi in M)

    clauses["metric.equidistant"] = all(metric.equals(sub(Pm, Ai), r) for Ai in A)
    clauses["theorem1.concurrence_HP"] = all(metric.equals(sub(Bi, H), r) for Bi in B)
    clauses["theorem1.reflected_through_vertices"] = all(
        metric.equals(sub(B[i], Aj), r) for i in range(3) for Aj in tm.others(i)
    )
    half = Fraction(1, 2)
    clauses["theorem1.feuerbach_points"] = all(metric.equals(sub(X, Q), r, half) for X in M + N)

    # midpoints of H_P with points of S, and of P with points of S_H
    if exact_P and ns.is_euclidean:
        clauses["theorem1.feuerbach_homothety"] = feuerbach_homothety_holds(
            configure(tm, Pm, ns), samples, seed)
    else:
        r_sq = float(r[1]) ** 2 if r[0] == "lin" else float(r[1])
        Pf, Hf, Qf = to_float(Pm), to_float(H), to_float(Q)
        ok = all(metric.equals(sub(midpoint(Hf, X), Qf), r, half)
                 for X in sample_sphere(Sphere(Pf, r_sq, ns), samples, seed=seed))
        ok &= all(metric.equals(sub(midpoint(Pf, Y), Qf), r, half)
                  for Y in sample_sphere(Sphere(Hf, r_sq, ns), samples, seed=seed + 1))
        clauses["theorem1.feuerbach_homothety"] = ok

    Gs = tuple(tuple(x / 3 for x in vsum([H, *tm.others(i)])) for i in range(3))
    G = centroid(tm)
    systems = {"ABH": A + (H,), "BP": B + (Pm,), "MP": M + (Pm,), "NH": N + (H,), "GG": Gs + (G,)}
    for name, pts in systems.items():
        W = witness(pts)
        rw = metric.length(sub(W, pts[0]))
        ok = all(metric.equals(sub(W, X), rw) for X in pts[:3])
        clauses[f"theorem2.{name}"] = ok
        orth = True
        for i, j, k, l in PAIRINGS:
            u, v = sub(pts[j], pts[i]), sub(pts[l], pts[k])
            orth &= metric.equals(sub(u, v), rw, 2) and metric.equals(
                tuple(a + c for a, c in zip(u, v)), rw, 2)
        clauses[f"theorem3.{name}"] = orth

    warnings = []
    if not ns.strictly_convex:
        warnings.append(f"norm {ns} is not strictly convex; equidistant points may be non-unique")
    if r[0] == "sq":
        radius, r_sq = None, r[1]
    else:
        radius, r_sq = r[1], r[1] * r[1]
    return MinkowskiReport(
        point=tuple(P), norm=ns, residual=res, radius=radius, r_sq=r_sq,
        clauses={k: v for k, v in clauses.items() if v is not None},
        not_applicable=sorted(k for k, v in clauses.items() if v is None),
        warnings=warnings,
    )
