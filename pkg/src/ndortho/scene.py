"""Scene files (JSON) and scalar serialisation.

A scene names some points, picks three of them as the triangle, and
optionally fixes the equidistant point P either by coordinates or by
parameters along the circumcenter locus. Rationals travel as ``"num/den"``
strings so exact input survives the round trip; floats are written with
their shortest round-trip representation.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .numcore import EUCLIDEAN, EXACT, FloatBackend, NormSpec


class SceneError(ValueError):
    """Malformed scene; ``where`` names the offending field."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where
        self.detail = message


def encode_scalar(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int) and not isinstance(x, bool):
        return str(x)
    if isinstance(x, float):
        return x
    raise TypeError(f"cannot serialise {x!r}")


def encode(obj):
    """Recursively encode for JSON output.

    Fractions become strings and plain ints stay ints (counts, dimensions).
    Exact coordinates are always Fractions, so they round-trip as strings.
    """
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if isinstance(obj, (Fraction, float)):
        return encode_scalar(obj)
    return obj


def dumps(doc) -> str:
    return json.dumps(encode(doc), sort_keys=True, indent=2, allow_nan=False) + "\n"


def parse_scalar(value, where: str, exact: bool = True):
    """Parse one coordinate.

    In exact mode JSON floats are read by their decimal text (0.1 -> 1/10).
    """
    if isinstance(value, bool):
        raise SceneError("booleans are not coordinates", where)
    if isinstance(value, int):
        return Fraction(value) if exact else float(value)
    if isinstance(value, float):
        return Fraction(repr(value)) if exact else value
    if isinstance(value, str):
        try:
            q = Fraction(value.strip())
        except ZeroDivisionError:
            raise SceneError(f"zero denominator in {value!r}", where) from None
        except ValueError:
            raise SceneError(f"not a rational number: {value!r}", where) from None
        return q if exact else float(q)
    raise SceneError(f"expected a number or 'num/den' string, got {type(value).__name__}", where)


@dataclass
class Scene:
    dimension: int
    points: dict
    triangle: tuple
    P: tuple | None = None
    params: tuple | None = None
    norm: NormSpec = EUCLIDEAN
    backend: str = "exact"
    eps: float = 1e-9
    residual_tol: float = 1e-10
    metric_rtol: float = 1e-8
    seed: int = 0
    source: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.backend == "exact"

    def scalar_backend(self):
        return EXACT if self.exact else FloatBackend(self.eps)

    def vertices(self) -> tuple:
        return tuple(self.points[name] for name in self.triangle)

    def to_doc(self) -> dict:
        doc = {
            "dimension": self.dimension,
            "points": {k: list(v) for k, v in self.points.items()},
            "triangle": list(self.triangle),
            "norm": str(self.norm),
            "backend": self.backend,
            "seed": self.seed,
        }
        if self.P is not None:
            doc["P"] = {"coords": list(self.P)}
        elif self.params is not None:
            doc["P"] = {"params": list(self.params)}
        tol = {}
        if self.eps != 1e-9:
            tol["eps"] = self.eps
        if self.residual_tol != 1e-10:
            tol["residual"] = self.residual_tol
        if self.metric_rtol != 1e-8:
            tol["metric_rtol"] = self.metric_rtol
        if tol:
            doc["tolerance"] = tol
        return doc


def _require(doc: dict, key: str, kind, where: str = ""):
    path = f"{where}.{key}" if where else key
    if key not in doc:
        raise SceneError("missing field", path)
    if not isinstance(doc[key], kind) or isinstance(doc[key], bool):
        raise SceneError(f"expected {getattr(kind, '__name__', kind)}", path)
    return doc[key]


def scene_from_doc(doc, source: str = "", backend: str | None = None,
                   norm: str | None = None) -> Scene:
    """Validate a decoded scene document. ``backend``/``norm`` override the file."""
    if not isinstance(doc, dict):
        raise SceneError("scene must be a JSON object")
    n = _require(doc, "dimension", int)
    if n < 2:
        raise SceneError("dimension must be >= 2", "dimension")
    backend = backend or doc.get("backend", "exact")
    if backend not in ("exact", "float"):
        raise SceneError(f"unknown backend {backend!r}", "backend")
    exact = backend == "exact"
    try:
        ns = NormSpec.parse(norm or doc.get("norm", "euclidean"))
    except ValueError as err:
        raise SceneError(str(err), "norm") from None

    raw_points = _require(doc, "points", dict)
    points = {}
    for name, coords in raw_points.items():
        where = f"points.{name}"
        if not isinstance(coords, list):
            raise SceneError("expected a list of coordinates", where)
        if len(coords) != n:
            raise SceneError(f"has {len(coords)} coordinates, dimension is {n}", where)
        points[name] = tuple(parse_scalar(c, f"{where}[{i}]", exact) for i, c in enumerate(coords))

    tri = _require(doc, "triangle", list)
    if len(tri) != 3:
        raise SceneError("needs exactly three point names", "triangle")
    for i, name in enumerate(tri):
        if name not in points:
            raise SceneError(f"unknown point {name!r}", f"triangle[{i}]")

    P = params = None
    if doc.get("P") is not None:
        spec = doc["P"]
        if not isinstance(spec, dict) or len(spec) != 1 or not ({"coords", "params"} & set(spec)):
            raise SceneError("expected {'coords': [...]} or {'params': [...]}", "P")
        key = "coords" if "coords" in spec else "params"
        values = spec[key]
        if not isinstance(values, list):
            raise SceneError("expected a list", f"P.{key}")
        parsed = tuple(parse_scalar(c, f"P.{key}[{i}]", exact) for i, c in enumerate(values))
        if key == "coords":
            if len(parsed) != n:
                raise SceneError(f"has {len(parsed)} coordinates, dimension is {n}", "P.coords")
            P = parsed
        else:
            if len(parsed) != n - 2:
                raise SceneError(f"needs {n - 2} locus parameters", "P.params")
            params = parsed

    tol = doc.get("tolerance", {})
    if not isinstance(tol, dict):
        raise SceneError("expected an object", "tolerance")
    for key in tol:
        if key not in ("eps", "residual", "metric_rtol"):
            raise SceneError("unknown tolerance", f"tolerance.{key}")
        if not isinstance(tol[key], (int, float)) or tol[key] <= 0:
            raise SceneError("must be a positive number", f"tolerance.{key}")
    seed = doc.get("seed", 0)
    if not isinstance(seed, int) or seed < 0:
        raise SceneError("must be a non-negative integer", "seed")

    return Scene(
        dimension=n,
        points=points,
        triangle=tuple(tri),
        P=P,
        params=params,
        norm=ns,
        backend=backend,
        eps=float(tol.get("eps", 1e-9)),
        residual_tol=float(tol.get("residual", 1e-10)),
        metric_rtol=float(tol.get("metric_rtol", 1e-8)),
        seed=seed,
        source=source,
    )


def load_scene(path, backend: str | None = None, norm: str | None = None) -> Scene:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise SceneError(f"invalid JSON: {err.msg} (line {err.lineno}, column {err.colno})",
                         str(path)) from None
    try:
        return scene_from_doc(doc, str(path), backend, norm)
    except SceneError as err:
        raise SceneError(err.detail, f"{path}: {err.where}" if err.where else str(path)) from None


def write_atomic(path, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
