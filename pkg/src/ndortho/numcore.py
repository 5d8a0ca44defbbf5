"""Scalar backends, vector arithmetic, norms and orthogonality predicates.

Points and vectors are plain tuples of scalars. A tuple whose coordinates
are all ``int``/``Fraction`` is handled exactly; anything containing a float
is handled by a :class:`FloatBackend` with a relative tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

from . import kernels

Scalar = Union[Fraction, float]
Vector = tuple
Point = tuple


class GeometryError(ValueError):
    """A geometric precondition failed (degenerate input, not equidistant...)."""


class IrrationalNormError(ValueError):
    """An exact norm was requested but its value is irrational."""


class ExactBackend:
    """Arbitrary-precision rationals; comparisons are exact."""

    name = "exact"
    exact = True
    eps = 0

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, Rational)):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        if isinstance(x, float):
            return Fraction(x)
        raise TypeError(f"cannot use {x!r} as an exact scalar")

    def is_zero(self, x, scale=1) -> bool:
        return x == 0

    def eq(self, a, b) -> bool:
        return a == b

    def __repr__(self):
        return "ExactBackend()"


@dataclass(frozen=True)
class FloatBackend:
    """Binary64 arithmetic; ``x`` counts as zero when ``|x| <= eps * max(1, scale)``."""

    eps: float = 1e-9
    name = "float"
    exact = False

    def coerce(self, x) -> float:
        return float(x)

    def is_zero(self, x, scale=1.0) -> bool:
        return abs(x) <= self.eps * max(1.0, abs(scale))

    def eq(self, a, b) -> bool:
        return abs(a - b) <= self.eps * max(1.0, abs(a), abs(b))


EXACT = ExactBackend()
FLOAT = FloatBackend()

Backend = Union[ExactBackend, FloatBackend]


def backend_of(*vectors: Sequence) -> Backend:
    """EXACT if every coordinate is rational, otherwise the default FLOAT."""
    for v in vectors:
        for x in v:
            if isinstance(x, float):
                return FLOAT
    return EXACT


def vec(coords: Iterable, backend: Backend = EXACT) -> Vector:
    return tuple(backend.coerce(x) for x in coords)


def fmt(v) -> str:
    """Readable point text for messages: (1/2, 0, -3)."""
    return "(" + ", ".join(str(x) for x in v) + ")"


def to_float(v: Sequence) -> tuple:
    return tuple(float(x) for x in v)


def _check_dims(u, v):
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")


def add(u: Vector, v: Vector) -> Vector:
    _check_dims(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    _check_dims(u, v)
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def neg(v: Vector) -> Vector:
    return tuple(-a for a in v)


def combo(coeffs: Sequence, vectors: Sequence[Vector]) -> Vector:
    """Linear combination sum(c_i * v_i)."""
    if len(coeffs) != len(vectors) or not vectors:
        raise ValueError("need one coefficient per vector")
    n = len(vectors[0])
    out = [0] * n
    for c, v in zip(coeffs, vectors):
        _check_dims(vectors[0], v)
        if c == 0:
            continue
        for i in range(n):
            out[i] += c * v[i]
    return tuple(out)


def vsum(vectors: Sequence[Vector]) -> Vector:
    return combo([1] * len(vectors), vectors)


def midpoint(u: Point, v: Point) -> Point:
    _check_dims(u, v)
    return tuple((a + b) / 2 for a, b in zip(u, v))


def dot(u: Vector, v: Vector):
    _check_dims(u, v)
    s = 0
    for a, b in zip(u, v):
        s += a * b
    return s


def norm_sq(v: Vector):
    s = 0
    for a in v:
        s += a * a
    return s


def max_abs(v: Vector):
    return max((abs(a) for a in v), default=0)


def is_zero_vector(v: Vector, backend: Backend | None = None, scale=1.0) -> bool:
    backend = backend or backend_of(v)
    return all(backend.is_zero(a, scale) for a in v)


def vec_eq(u: Vector, v: Vector, backend: Backend | None = None) -> bool:
    """Coordinatewise equality; float mode scales eps by the larger magnitude."""
    _check_dims(u, v)
    backend = backend or backend_of(u, v)
    if backend.exact:
        return tuple(u) == tuple(v)
    s = max(max_abs(u), max_abs(v), 1.0)
    return all(abs(a - b) <= backend.eps * s for a, b in zip(u, v))


@dataclass(frozen=True)
class NormSpec:
    """Euclidean norm or a p-norm with ``1 <= p <= inf``."""

    kind: str = "euclidean"
    p: Scalar | None = None

    def __post_init__(self):
        if self.kind == "euclidean":
            object.__setattr__(self, "p", Fraction(2))
        elif self.kind == "p":
            p = self.p
            if p is None:
                raise ValueError("p-norm needs an exponent")
            if isinstance(p, (int, Fraction)):
                p = Fraction(p)
            elif isinstance(p, float) and not math.isinf(p) and p.is_integer():
                p = Fraction(int(p))
            if p < 1:
                raise ValueError(f"p = {p} < 1 does not define a norm")
            object.__setattr__(self, "p", p)
        else:
            raise ValueError(f"unknown norm kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "NormSpec":
        """Parse ``euclidean`` or ``p:<value>`` (``p:inf`` for the max norm)."""
        text = text.strip().lower()
        if text in ("euclidean", "l2"):
            return cls()
        if text.startswith("p:"):
            value = text[2:].strip()
            if value in ("inf", "infinity", "oo"):
                return cls("p", math.inf)
            try:
                return cls("p", Fraction(value))
            except (ValueError, ZeroDivisionError):
                return cls("p", float(value))
        raise ValueError(f"cannot parse norm spec {text!r}")

    @property
    def is_euclidean(self) -> bool:
        return self.p == 2

    @property
    def is_infinite(self) -> bool:
        return isinstance(self.p, float) and math.isinf(self.p)

    @property
    def strictly_convex(self) -> bool:
        return not (self.p == 1 or self.is_infinite)

    @property
    def p_float(self) -> float:
        return float(self.p)

    def __str__(self):
        if self.kind == "euclidean":
            return "euclidean"
        return "p:inf" if self.is_infinite else f"p:{self.p}"


EUCLIDEAN = NormSpec()


def _iroot(m: int, k: int) -> int | None:
    """Integer k-th root of m >= 0 if m is a perfect k-th power."""
    if k == 2:
        r = math.isqrt(m)
    else:
        lo, hi = 0, 1 << (m.bit_length() // k + 1)
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if mid**k <= m:
                lo = mid
            else:
                hi = mid - 1
        r = lo
    return r if r**k == m else None


def _exact_root(x: Fraction, k: int) -> Fraction | None:
    """Rational k-th root of a non-negative rational, or None."""
    num, den = _iroot(x.numerator, k), _iroot(x.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def norm_power(v: Vector, ns: NormSpec = EUCLIDEAN):
    """A quantity that is monotone in ``norm(v, ns)`` and exact when possible.

    Euclidean: ``norm_sq``; p = 1 and p = inf: the norm itself; other integer
    p: ``sum |x|^p``. Non-integer p falls back to the float norm. Comparing
    these values decides equality of norms without taking roots.
    """
    exact = backend_of(v).exact
    if ns.is_euclidean:
        return norm_sq(v)
    if ns.is_infinite:
        return max_abs(v)
    if ns.p == 1:
        return sum((abs(a) for a in v), 0)
    if exact and isinstance(ns.p, Fraction) and ns.p.denominator == 1:
        k = int(ns.p)
        return sum((abs(a) ** k for a in v), 0)
    return kernels.pnorm(to_float(v), ns.p_float)


def norm(v: Vector, ns: NormSpec = EUCLIDEAN):
    """Norm of ``v`` under ``ns``.

    Exact input returns a Fraction when the value is rational and raises
    :class:`IrrationalNormError` otherwise (use :func:`norm_sq` /
    :func:`norm_power` for exact comparisons). Float input returns a float.
    """
    if len(v) == 0:
        raise ValueError("norm of an empty vector")
    if not backend_of(v).exact:
        return kernels.pnorm(to_float(v), ns.p_float)
    if ns.is_infinite or ns.p == 1:
        return norm_power(v, ns)
    if isinstance(ns.p, Fraction) and ns.p.denominator == 1:
        k = int(ns.p)
        root = _exact_root(Fraction(norm_power(v, ns)), k)
        if root is not None:
            return root
    raise IrrationalNormError(f"{str(ns)} norm of {fmt(v)} is not rational")


def float_norm(v: Vector, ns: NormSpec = EUCLIDEAN) -> float:
    return kernels.pnorm(to_float(v), ns.p_float)


def isosceles_orthogonal(u: Vector, v: Vector, ns: NormSpec = EUCLIDEAN,
                         backend: Backend | None = None) -> bool:
    """``u`` is isosceles-orthogonal to ``v``: ``|u - v| == |u + v|``."""
    _check_dims(u, v)
    backend = backend or backend_of(u, v)
    diff, summ = sub(u, v), add(u, v)
    if backend.exact and (ns.is_euclidean or ns.is_infinite or ns.p == 1
                          or (isinstance(ns.p, Fraction) and ns.p.denominator == 1)):
        return norm_power(diff, ns) == norm_power(summ, ns)
    a, b = float_norm(diff, ns), float_norm(summ, ns)
    tol = backend.eps if not backend.exact else FLOAT.eps
    return abs(a - b) <= tol * max(1.0, float_norm(u, ns) + float_norm(v, ns))


def distances_equal(X: Point, points: Sequence[Point], ns: NormSpec = EUCLIDEAN,
                    backend: Backend | None = None) -> bool:
    """X is at the same ``ns``-distance from every point in ``points``."""
    backend = backend or backend_of(X, *points)
    vals = [norm_power(sub(X, A), ns) for A in points]
    if backend.exact and not isinstance(vals[0], float):
        return all(val == vals[0] for val in vals)
    if ns.is_euclidean:
        vals = [math.sqrt(float(x)) for x in vals]
    else:
        vals = [float_norm(sub(X, A), ns) for A in points]
    s = max(max(vals), 1.0)
    eps = backend.eps if not backend.exact else FLOAT.eps
    return max(vals) - min(vals) <= eps * s
