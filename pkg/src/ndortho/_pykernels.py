"""Pure-Python float kernels for the equidistant-point search.

Mirrors ``_ckernels.pyx`` operation for operation so both produce the same
iterates; :mod:`ndortho.kernels` picks one at import time.
"""

import math

GOLD = (math.sqrt(5.0) - 1.0) / 2.0
GROW = 1.0 + GOLD
MAX_EXPAND = 80
MAX_GOLDEN = 200


def pnorm(v, p):
    """p-norm of a float sequence; ``p`` may be ``math.inf``."""
    if p == 2.0:
        s = 0.0
        for x in v:
            s += x * x
        return math.sqrt(s)
    if p == 1.0:
        s = 0.0
        for x in v:
            s += abs(x)
        return s
    m = 0.0
    for x in v:
        a = abs(x)
        if a > m:
            m = a
    if p == math.inf or m == 0.0:
        return m
    s = 0.0
    for x in v:
        s += (abs(x) / m) ** p
    return m * s ** (1.0 / p)


def _dist(x, a, p):
    return pnorm([xi - ai for xi, ai in zip(x, a)], p)


def residual(x, verts, p):
    """(d0 - d1)^2 + (d1 - d2)^2 with d_i the p-distance from x to vertex i."""
    d0 = _dist(x, verts[0], p)
    d1 = _dist(x, verts[1], p)
    d2 = _dist(x, verts[2], p)
    # explicit products: pow(x, 2) is not always correctly rounded
    return (d0 - d1) * (d0 - d1) + (d1 - d2) * (d1 - d2)


def _along(x, d, t):
    return [xi + t * di for xi, di in zip(x, d)]


def line_min(x, d, verts, p, h):
    """Bracket then golden-section minimise t -> residual(x + t d).

    Returns ``(t, f(t))`` for the best evaluated step; ``t == 0`` when no
    evaluated step improves on the start.
    """
    f0 = residual(x, verts, p)
    fp = residual(_along(x, d, h), verts, p)
    fm = residual(_along(x, d, -h), verts, p)
    best_t, best_f = 0.0, f0
    if fp < best_f:
        best_t, best_f = h, fp
    if fm < best_f:
        best_t, best_f = -h, fm

    if fp >= f0 and fm >= f0:
        lo, hi = -h, h
    else:
        s = h if fp < fm else -h
        t0, t1 = 0.0, s
        f1 = fp if s > 0 else fm
        t2 = t1 + GROW * (t1 - t0)
        f2 = residual(_along(x, d, t2), verts, p)
        k = 0
        while f2 < f1 and k < MAX_EXPAND:
            t0, t1, f1 = t1, t2, f2
            t2 = t1 + GROW * (t1 - t0)
            f2 = residual(_along(x, d, t2), verts, p)
            k += 1
        if f1 < best_f:
            best_t, best_f = t1, f1
        if f2 < best_f:
            best_t, best_f = t2, f2
        lo, hi = (t0, t2) if t0 < t2 else (t2, t0)

    a, b = lo, hi
    c = b - GOLD * (b - a)
    e = a + GOLD * (b - a)
    fc = residual(_along(x, d, c), verts, p)
    fe = residual(_along(x, d, e), verts, p)
    k = 0
    while k < MAX_GOLDEN and (b - a) > 1e-15 * (1.0 + abs(a) + abs(b)):
        if fc < fe:
            b, e, fe = e, c, fc
            c = b - GOLD * (b - a)
            fc = residual(_along(x, d, c), verts, p)
        else:
            a, c, fc = c, e, fe
            e = a + GOLD * (b - a)
            fe = residual(_along(x, d, e), verts, p)
        if fc < best_f:
            best_t, best_f = c, fc
        if fe < best_f:
            best_t, best_f = e, fe
        k += 1
    return best_t, best_f


def descend(x0, verts, p, dirs, tol, max_sweeps, h0):
    """Coordinate descent over ``dirs`` with golden-section line searches.

    A move is taken only if it lowers the residual, so the returned history
    (residual after each sweep, starting with the initial value) is
    non-increasing.
    """
    x = [float(v) for v in x0]
    f = residual(x, verts, p)
    history = [f]
    steps = [h0] * len(dirs)
    for _ in range(max_sweeps):
        if f <= tol:
            break
        f_start = f
        for j, d in enumerate(dirs):
            t, ft = line_min(x, d, verts, p, steps[j])
            if ft < f and t != 0.0:
                x = _along(x, d, t)
                f = ft
                steps[j] = max(abs(t), 1e-14 * h0)
            else:
                steps[j] = max(0.5 * steps[j], 1e-14 * h0)
        history.append(f)
        if f >= f_start and all(s <= 1e-13 * h0 for s in steps):
            break
    return x, f, history
