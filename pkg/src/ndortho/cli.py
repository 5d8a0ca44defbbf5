"""ndortho command line: analyze, generate, locus, plotdata.

Exit status is 0 when every clause passes, 1 when a clause fails (or the
p-norm solver does not converge), 2 for input and usage errors. Errors are
reported as a JSON document on stdout plus a one-line message on stderr.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from .affine import Homothety, homothety_apply, rank
from .minkowski import NonConvergence
from .numcore import GeometryError, NormSpec, float_norm, sub, to_float
from .orthocenter import configure, sample_sphere, orthocenter_set
from .report import analyze_scene, error_document, resolve_P
from .scene import SceneError, dumps, load_scene, write_atomic
from .triangle import Triangle, circumcenter_inplane, circumlocus, midpoints

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(ValueError):
    pass


# -- shared plumbing ------------------------------------------------------


def _load(args, path):
    scene = load_scene(path, backend=args.backend, norm=args.norm)
    if args.tol is not None:
        scene = replace(scene, residual_tol=args.tol)
    if args.seed is not None:
        scene = replace(scene, seed=args.seed)
    return scene


def _run_guarded(fn):
    """Call fn() -> (doc, code); turn known failures into error documents."""
    try:
        return fn()
    except SceneError as err:
        return error_document("parse", err.detail, where=err.where), EXIT_INPUT
    except GeometryError as err:
        return error_document("geometry", str(err)), EXIT_INPUT
    except NonConvergence as err:
        return error_document("nonconvergence", str(err), best_point=list(err.best_point),
                              best_residual=err.best_residual), EXIT_FAIL
    except (OSError, UnicodeDecodeError) as err:
        return error_document("io", str(err)), EXIT_INPUT
    except UsageError as err:
        return error_document("usage", str(err)), EXIT_INPUT


def _emit(doc, out, stdout) -> None:
    text = dumps(doc)
    if out:
        write_atomic(out, text)
    else:
        stdout.write(text)


def _report_error(doc, stderr) -> None:
    if "error" in doc:
        e = doc["error"]
        where = f" [{e['where']}]" if e.get("where") else ""
        stderr.write(f"ndortho: {e['kind']} error{where}: {e['message']}\n")


# -- analyze ----------------------------------------------------------------


def analyze_path(args, path):
    def run():
        report = analyze_scene(_load(args, path), samples=args.samples)
        return report, EXIT_OK if report["summary"]["status"] == "pass" else EXIT_FAIL
    return _run_guarded(run)


def _analyze_job(job):
    args, path, out = job
    doc, code = analyze_path(args, path)
    write_atomic(out, dumps(doc))
    return path.name, code, doc["summary"]["status"] if "summary" in doc else doc["error"]["kind"]


def cmd_analyze(args, stdout, stderr) -> int:
    src = Path(args.path)
    if not src.is_dir():
        doc, code = analyze_path(args, src)
        _report_error(doc, stderr)
        _emit(doc, args.out, stdout)
        return code
    if not args.out:
        raise UsageError("analyzing a directory needs --out <directory>")
    out_dir = Path(args.out)
    jobs = [(args, p, out_dir / f"{p.stem}.report.json") for p in sorted(src.glob("*.json"))]
    if not jobs:
        raise UsageError(f"no .json scenes in {src}")
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_analyze_job, jobs))
    else:
        results = [_analyze_job(j) for j in jobs]
    index = {name: {"exit": code, "status": status} for name, code, status in results}
    stdout.write(dumps({"scenes": index, "count": len(index)}))
    return max(code for _, code, _ in results)


# -- generate ---------------------------------------------------------------


def _rational(rng, bound: int) -> Fraction:
    den = rng.randint(1, 4)
    return Fraction(rng.randint(-bound * den, bound * den), den)


def generate_scenes(seed: int, n: int, count: int, bound: int, norm: str = "euclidean",
                    backend: str = "exact") -> list:
    """Deterministic list of (file name, scene text)."""
    if n < 2 or count < 1 or bound < 1:
        raise UsageError("need --dim >= 2, --count >= 1 and --bound >= 1")
    ns = NormSpec.parse(norm)
    rng = random.Random(seed)
    out = []
    for k in range(count):
        while True:
            A = [tuple(_rational(rng, bound) for _ in range(n)) for _ in range(3)]
            if rank([sub(A[1], A[0]), sub(A[2], A[0])]) == 2:
                break
        params = [_rational(rng, bound) for _ in range(n - 2)]
        doc = {
            "dimension": n,
            "points": {name: list(p) for name, p in zip("ABC", A)},
            "triangle": ["A", "B", "C"],
            "norm": str(ns),
            "backend": backend,
            "seed": seed,
        }
        if ns.is_euclidean:
            doc["P"] = {"params": params}
        out.append((f"scene_{k:04d}.json", dumps(doc)))
    return out


def cmd_generate(args, stdout, stderr) -> int:
    try:
        scenes = generate_scenes(args.seed or 0, args.dim, args.count, args.bound,
                                 args.norm or "euclidean", args.backend or "exact")
    except ValueError as err:
        raise UsageError(str(err)) from None
    if args.out:
        for name, text in scenes:
            write_atomic(Path(args.out) / name, text)
        stdout.write(dumps({"count": len(scenes), "directory": str(args.out),
                            "files": [name for name, _ in scenes]}))
    else:
        for _, text in scenes:
            stdout.write(text)
    return EXIT_OK


# -- locus ------------------------------------------------------------------


def locus_document(scene) -> dict:
    if not scene.norm.is_euclidean:
        raise UsageError("the locus parametrization is only defined for the euclidean norm")
    t = Triangle(*scene.vertices(), scene.scalar_backend())
    S = circumlocus(t)
    _, r_sq = circumcenter_inplane(t)
    H = orthocenter_set(t)
    return {
        "base": S.base,
        "basis": S.basis,
        "dimension": S.dim,
        "r_sq": r_sq,
        "orthocenter_set": {"base": H.base, "basis": H.basis, "dimension": H.dim},
    }


def cmd_locus(args, stdout, stderr) -> int:
    doc, code = _run_guarded(lambda: (locus_document(_load(args, args.path)), EXIT_OK))
    _report_error(doc, stderr)
    _emit(doc, args.out, stdout)
    return code


# -- plotdata ---------------------------------------------------------------


def plot_document(scene, samples: int) -> dict:
    if samples < 0:
        raise UsageError("--samples must be >= 0")
    t = Triangle(*scene.vertices(), scene.scalar_backend())
    P, _ = resolve_P(scene, t)
    ns = scene.norm
    if ns.is_euclidean:
        cfg = configure(t, P, ns)
    else:
        tf = Triangle(*(to_float(A) for A in t.vertices))
        cfg = configure(tf, to_float(P), ns)
    through = {
        "S": t.A0, "S_H": cfg.B[0], "S_M": cfg.M[0],
        "S0": t.A1, "S1": t.A0, "S2": t.A0,
    }
    spheres = {"S": cfg.sphere, "S_H": cfg.sphere_H, "S_M": cfg.feuerbach}
    spheres.update({f"S{i}": s for i, s in enumerate(cfg.reflected)})
    sphere_docs = {}
    for name, sph in spheres.items():
        entry = {"center": to_float(sph.center), "radius": math.sqrt(float(sph.r_sq))}
        if samples and t.dim in (2, 3):
            pts = sample_sphere(sph, samples, through[name] if ns.is_euclidean else None, scene.seed)
            entry["points"] = [to_float(X) for X in pts]
        sphere_docs[name] = entry
    euler = []
    if samples and float_norm(to_float(sub(cfg.H_P, cfg.P)), ns) > 0:
        k = max(samples, 2)
        hom = [Homothety(cfg.P, Fraction(2 * j - (k - 1), k - 1)) for j in range(k)]
        euler = [to_float(homothety_apply(h, cfg.H_P)) for h in hom]
    return {
        "dimension": t.dim,
        "norm": str(ns),
        "points": {
            "vertices": [to_float(A) for A in t.vertices],
            "antitriangle": [to_float(B) for B in cfg.B],
            "medial": [to_float(M) for M in midpoints(t)],
            "N": [to_float(X) for X in cfg.N],
            "G": to_float(cfg.G),
            "P": to_float(cfg.P),
            "H_P": to_float(cfg.H_P),
            "Q_P": to_float(cfg.Q_P),
        },
        "euler_line": euler,
        "spheres": sphere_docs,
    }


def cmd_plotdata(args, stdout, stderr) -> int:
    doc, code = _run_guarded(lambda: (plot_document(_load(args, args.path), args.samples), EXIT_OK))
    _report_error(doc, stderr)
    _emit(doc, args.out, stdout)
    return code


# -- entry point ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=("exact", "float"), default=None,
                        help="scalar backend (overrides the scene)")
    common.add_argument("--norm", default=None, help="euclidean or p:<value>, e.g. p:1, p:3, p:inf")
    common.add_argument("--tol", type=float, default=None, help="residual tolerance for p-norm solves")
    common.add_argument("--seed", type=int, default=None, help="seed for sampling and generation")
    common.add_argument("--out", default=None, help="output file (or directory for batches)")
    common.add_argument("--samples", type=int, default=16, help="sphere samples per sphere")

    parser = argparse.ArgumentParser(prog="ndortho", description=__doc__.splitlines()[0])
    sub_ = parser.add_subparsers(dest="command", required=True)
    p = sub_.add_parser("analyze", parents=[common], help="verify every theorem on a scene")
    p.add_argument("path", help="scene file, or a directory of scenes")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for directories")
    p = sub_.add_parser("generate", parents=[common], help="write random rational scenes")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--bound", type=int, default=5, help="coordinates lie in [-bound, bound]")
    p = sub_.add_parser("locus", parents=[common], help="parametrize the circumcenter locus")
    p.add_argument("path")
    p = sub_.add_parser("plotdata", parents=[common], help="point sets for plotting")
    p.add_argument("path")
    return parser


COMMANDS = {"analyze": cmd_analyze, "generate": cmd_generate, "locus": cmd_locus,
            "plotdata": cmd_plotdata}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.seed is not None and args.seed < 0:
        stderr.write("ndortho: --seed must be non-negative\n")
        return EXIT_INPUT
    if args.norm is not None:
        try:
            NormSpec.parse(args.norm)
        except ValueError as err:
            doc = error_document("usage", f"--norm: {err}")
            _report_error(doc, stderr)
            stdout.write(dumps(doc))
            return EXIT_INPUT
    try:
        return COMMANDS[args.command](args, stdout, stderr)
    except UsageError as err:
        doc = error_document("usage", str(err))
        _report_error(doc, stderr)
        stdout.write(dumps(doc))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
