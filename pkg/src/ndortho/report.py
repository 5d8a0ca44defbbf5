"""Full verification pipeline for one scene, producing a report document."""

from __future__ import annotations

import random
from fractions import Fraction

from .affine import Homothety, homothety_apply
from .minkowski import EquidistantProblem, NonConvergence, equidistant_search, verify_under_norm
from .numcore import EUCLIDEAN, GeometryError, vec_eq
from .orthocenter import (
    classical_orthocenter,
    concurrence,
    configure,
    euler_check,
    feuerbach_homothety_holds,
    feuerbach_points_hold,
    harmonic_range_check,
    reassociation_holds,
    symmetry_center_holds,
    orthocenter_set,
)
from .orthosys import (
    NotOrthocentric,
    derived_point_sets,
    g_points_formula,
    homothety_image,
    is_orthocentric,
    opposite_orthogonality,
    tetrahedron_altitudes_concur,
)
from .scene import Scene
from .triangle import Triangle, bisector_condition, circumcenter_inplane, circumlocus

CONDITION_WARNING = 1e8

PASS, FAIL, NA = "pass", "fail", "not-applicable"


def verdict(ok, reason: str = "") -> dict:
    if ok is None:
        return {"status": NA, "reason": reason or "not applicable"}
    return {"status": PASS if ok else FAIL, "reason": reason or ("holds" if ok else "violated")}


def _nest(flat: dict) -> dict:
    out = {}
    for key, value in flat.items():
        group, name = key.split(".", 1)
        out.setdefault(group, {})[name] = value
    return out


def _summary(clauses: dict) -> dict:
    counts = {PASS: 0, FAIL: 0, NA: 0}
    for group in clauses.values():
        for v in group.values():
            counts[v["status"]] += 1
    return {
        "fail": counts[FAIL],
        "not_applicable": counts[NA],
        "pass": counts[PASS],
        "status": FAIL if counts[FAIL] else PASS,
    }


def resolve_P(scene: Scene, t: Triangle):
    """The scene's P: given coordinates, locus parameters, or (p-norms) a solve."""
    warnings = []
    if scene.P is not None:
        return scene.P, warnings
    if scene.norm.is_euclidean:
        S = circumlocus(t)
        params = scene.params if scene.params is not None else (t.backend.coerce(0),) * S.dim
        return S.point(params), warnings
    sol = equidistant_search(EquidistantProblem(t, scene.norm, tol=scene.residual_tol,
                                                seed=scene.seed))
    warnings.extend(sol.warnings)
    return sol.point, warnings


def _lemma_check(system, rng: random.Random, backend, trials: int = 3) -> bool:
    for _ in range(trials):
        lam = backend.coerce(Fraction(rng.choice([-4, -3, -2, -1, 1, 2, 3, 5]), rng.randint(1, 5)))
        C = tuple(backend.coerce(Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
                  for _ in system.P)
        image = homothety_image(system, Homothety(C, lam))
        if not backend.eq(image.r_sq, lam * lam * system.r_sq):
            return False
        if not vec_eq(image.P, homothety_apply(Homothety(C, lam), system.P), backend):
            return False
    return True


def _euclidean(scene: Scene, t: Triangle, P, samples: int) -> tuple:
    b = t.backend
    flat, warnings = {}, []
    O, circ_r_sq = circumcenter_inplane(t)
    S = circumlocus(t)
    flat["locus.dimension"] = verdict(S.dim == t.dim - 2, f"dimension {S.dim}, n - 2 = {t.dim - 2}")
    flat["locus.contains_P"] = verdict(S.contains(P))
    if not b.exact:
        cond = bisector_condition(t)
        if cond > CONDITION_WARNING:
            warnings.append(f"bisector system condition number {cond:.3e} exceeds 1e8")

    cfg = configure(t, P)
    H = classical_orthocenter(t)
    flat["theorem1.concurrence_H"] = verdict(concurrence(cfg, H))
    flat["theorem1.concurrence_HP"] = verdict(concurrence(cfg, cfg.H_P))
    flat["theorem1.symmetry_center"] = verdict(symmetry_center_holds(cfg))
    eu = euler_check(t, P)
    flat["theorem1.euler"] = verdict(eu.holds, "P = G: degenerate Euler line" if eu.degenerate else "")
    flat["theorem1.feuerbach_points"] = verdict(feuerbach_points_hold(cfg))
    flat["theorem1.feuerbach_homothety"] = verdict(feuerbach_homothety_holds(cfg, samples, scene.seed))
    if eu.degenerate:
        flat["theorem1.harmonic_range"] = verdict(None, "P coincides with the centroid")
    else:
        flat["theorem1.harmonic_range"] = verdict(harmonic_range_check(t, P))
    try:
        flat["theorem1.reassociation"] = verdict(reassociation_holds(cfg))
    except GeometryError as err:
        flat["theorem1.reassociation"] = verdict(None, f"degenerate sub-triangle: {err}")

    systems = {}
    for name, pts in derived_point_sets(t, P).items():
        try:
            systems[name] = is_orthocentric(pts, EUCLIDEAN, b)
            flat[f"theorem2.{name}"] = verdict(True, "witness is equidistant")
        except NotOrthocentric as err:
            flat[f"theorem2.{name}"] = verdict(False, str(err))
        except GeometryError as err:
            flat[f"theorem2.{name}"] = verdict(None, f"degenerate point set: {err}")
    hm = Homothety(cfg.G, b.coerce(Fraction(-1, 2)))
    hq = Homothety(cfg.Q_P, b.coerce(Fraction(-1, 3)))
    flat["theorem2.medial_homothety"] = verdict(all(
        vec_eq(homothety_apply(hm, X), Y, b)
        for X, Y in zip(t.vertices + (cfg.H_P,), cfg.M + (cfg.P,))))
    flat["theorem2.centroid_homothety"] = verdict(all(
        vec_eq(homothety_apply(hq, X), Y, b)
        for X, Y in zip(t.vertices + (cfg.H_P,), g_points_formula(t, P) + (cfg.G,))))

    for name, system in systems.items():
        checks = opposite_orthogonality(system)
        bad = [c.pairing for c in checks if not c.holds]
        flat[f"theorem3.{name}"] = verdict(not bad, f"failing pairings {bad}" if bad else "")
    for name in derived_point_sets(t, P):
        if name not in systems:
            flat[f"theorem3.{name}"] = verdict(None, "system is degenerate")

    if "ABH" in systems:
        rng = random.Random(scene.seed)
        flat["lemma.homothety_closure"] = verdict(_lemma_check(systems["ABH"], rng, b))
    else:
        flat["lemma.homothety_closure"] = verdict(None, "base system unavailable")

    if t.dim >= 3 and "ABH" in systems:
        try:
            X = tetrahedron_altitudes_concur(systems["ABH"].points, b)
            flat["tetrahedron.altitudes_concur"] = verdict(X is not None, "altitudes meet" if X else "")
        except GeometryError as err:
            flat["tetrahedron.altitudes_concur"] = verdict(None, str(err))
    else:
        flat["tetrahedron.altitudes_concur"] = verdict(None, "needs n >= 3 and a valid system")

    objects = {
        "G": cfg.G,
        "O": O,
        "circumradius_sq": circ_r_sq,
        "r_sq": cfg.r_sq,
        "locus": {"base": S.base, "basis": S.basis, "dimension": S.dim},
        "orthocenter_set": _subspace_doc(orthocenter_set(t)),
        "H": H,
        "H_P": cfg.H_P,
        "Q_P": cfg.Q_P,
        "M": cfg.M,
        "B": cfg.B,
        "N": cfg.N,
        "G_i": g_points_formula(t, P),
        "spheres": _sphere_docs(cfg),
    }
    return flat, objects, warnings


def _subspace_doc(S) -> dict:
    return {"base": S.base, "basis": S.basis, "dimension": S.dim}


def _sphere_docs(cfg) -> dict:
    out = {"S": cfg.sphere, "S_M": cfg.feuerbach, "S_H": cfg.sphere_H}
    for i, s in enumerate(cfg.reflected):
        out[f"S{i}"] = s
    return {k: {"center": s.center, "r_sq": s.r_sq} for k, s in out.items()}


def _minkowski(scene: Scene, t: Triangle, P, samples: int) -> tuple:
    rep = verify_under_norm(t, P, scene.norm, tol=scene.residual_tol, rtol=scene.metric_rtol,
                            samples=samples, seed=scene.seed)
    flat = {k: verdict(v) for k, v in rep.clauses.items()}
    for k in rep.not_applicable:
        flat[k] = verdict(None, "degenerate configuration")
    flat["locus.dimension"] = verdict(None, "locus structure is only claimed for the euclidean norm")
    flat["theorem1.concurrence_H"] = verdict(None, "classical orthocenter is euclidean")
    flat["tetrahedron.altitudes_concur"] = verdict(None, "altitudes are euclidean")
    cfg_H = tuple(s - 2 * p for s, p in zip(t.vertex_sum, P))
    objects = {
        "residual": rep.residual,
        "H_P": cfg_H,
        "radius": rep.radius,
        "r_sq": rep.r_sq,
    }
    return flat, objects, list(rep.warnings)


def analyze_scene(scene: Scene, samples: int = 16) -> dict:
    """Run every check on the scene and return the report document.

    Raises GeometryError for precondition failures (collinear vertices, a
    non-equidistant P) and NonConvergence if no equidistant point is found.
    """
    backend = scene.scalar_backend()
    t = Triangle(*scene.vertices(), backend)
    P, warnings = resolve_P(scene, t)
    P = tuple(backend.coerce(x) for x in P) if scene.norm.is_euclidean else tuple(P)
    if scene.norm.is_euclidean:
        flat, objects, more = _euclidean(scene, t, P, samples)
    else:
        flat, objects, more = _minkowski(scene, t, P, samples)
    warnings += more
    clauses = _nest(flat)
    return {
        "instance": {
            "backend": scene.backend,
            "dimension": scene.dimension,
            "norm": str(scene.norm),
            "P": P,
            "triangle": dict(zip(scene.triangle, t.vertices)),
        },
        "objects": objects,
        "clauses": clauses,
        "summary": _summary(clauses),
        "warnings": sorted(set(warnings)),
    }


def error_document(kind: str, message: str, **extra) -> dict:
    doc = {"error": {"kind": kind, "message": message}}
    doc["error"].update(extra)
    return doc


__all__ = ["analyze_scene", "error_document", "resolve_P", "verdict", "NonConvergence"]
