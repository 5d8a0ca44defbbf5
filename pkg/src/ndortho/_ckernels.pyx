# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled float kernels for the equidistant-point search.

Same algorithm and evaluation order as ``_pykernels.py``.
"""

from libc.math cimport fabs, pow, sqrt, INFINITY
from libc.stdlib cimport malloc, free

cdef double GOLD = (sqrt(5.0) - 1.0) / 2.0
cdef double GROW = 1.0 + (sqrt(5.0) - 1.0) / 2.0
cdef int MAX_EXPAND = 80
cdef int MAX_GOLDEN = 200


cdef double _pnorm(const double* v, Py_ssize_t n, double p) noexcept nogil:
    cdef Py_ssize_t i
    cdef double s = 0.0, m = 0.0, a
    if p == 2.0:
        for i in range(n):
            s += v[i] * v[i]
        return sqrt(s)
    if p == 1.0:
        for i in range(n):
            s += fabs(v[i])
        return s
    for i in range(n):
        a = fabs(v[i])
        if a > m:
            m = a
    if p == INFINITY or m == 0.0:
        return m
    for i in range(n):
        s += pow(fabs(v[i]) / m, p)
    return m * pow(s, 1.0 / p)


cdef struct Problem:
    Py_ssize_t n
    double p
    double* verts    # 3 x n
    double* x        # current point
    double* d        # current direction
    double* work     # scratch, 2n


cdef double _residual_at(Problem* pr, const double* y) noexcept nogil:
    cdef Py_ssize_t i, k, n = pr.n
    cdef double dist[3]
    cdef double* diff = pr.work + n
    for k in range(3):
        for i in range(n):
            diff[i] = y[i] - pr.verts[k * n + i]
        dist[k] = _pnorm(diff, n, pr.p)
    return (dist[0] - dist[1]) * (dist[0] - dist[1]) + (dist[1] - dist[2]) * (dist[1] - dist[2])


cdef double _f_along(Problem* pr, double t) noexcept nogil:
    cdef Py_ssize_t i
    for i in range(pr.n):
        pr.work[i] = pr.x[i] + t * pr.d[i]
    return _residual_at(pr, pr.work)


cdef void _line_min(Problem* pr, double h, double* t_out, double* f_out) noexcept nogil:
    cdef double f0, fp, fm, best_t, best_f, lo, hi, s, t0, t1, t2, f1, f2
    cdef double a, b, c, e, fc, fe
    cdef int k
    f0 = _residual_at(pr, pr.x)
    fp = _f_along(pr, h)
    fm = _f_along(pr, -h)
    best_t = 0.0
    best_f = f0
    if fp < best_f:
        best_t = h
        best_f = fp
    if fm < best_f:
        best_t = -h
        best_f = fm

    if fp >= f0 and fm >= f0:
        lo = -h
        hi = h
    else:
        s = h if fp < fm else -h
        t0 = 0.0
        t1 = s
        f1 = fp if s > 0 else fm
        t2 = t1 + GROW * (t1 - t0)
        f2 = _f_along(pr, t2)
        k = 0
        while f2 < f1 and k < MAX_EXPAND:
            t0 = t1
            t1 = t2
            f1 = f2
            t2 = t1 + GROW * (t1 - t0)
            f2 = _f_along(pr, t2)
            k += 1
        if f1 < best_f:
            best_t = t1
            best_f = f1
        if f2 < best_f:
            best_t = t2
            best_f = f2
        if t0 < t2:
            lo = t0
            hi = t2
        else:
            lo = t2
            hi = t0

    a = lo
    b = hi
    c = b - GOLD * (b - a)
    e = a + GOLD * (b - a)
    fc = _f_along(pr, c)
    fe = _f_along(pr, e)
    k = 0
    while k < MAX_GOLDEN and (b - a) > 1e-15 * (1.0 + fabs(a) + fabs(b)):
        if fc < fe:
            b = e
            e = c
            fe = fc
            c = b - GOLD * (b - a)
            fc = _f_along(pr, c)
        else:
            a = c
            c = e
            fc = fe
            e = a + GOLD * (b - a)
            fe = _f_along(pr, e)
        if fc < best_f:
            best_t = c
            best_f = fc
        if fe < best_f:
            best_t = e
            best_f = fe
        k += 1
    t_out[0] = best_t
    f_out[0] = best_f


def pnorm(v, double p):
    """p-norm of a float sequence; ``p`` may be ``math.inf``."""
    cdef Py_ssize_t i, n = len(v)
    cdef double* buf = <double*> malloc(max(n, 1) * sizeof(double))
    cdef double out
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            buf[i] = v[i]
        out = _pnorm(buf, n, p)
    finally:
        free(buf)
    return out


cdef Problem* _new_problem(x0, verts, double p) except NULL:
    cdef Py_ssize_t i, k, n = len(x0)
    cdef Problem* pr = <Problem*> malloc(sizeof(Problem))
    if pr == NULL:
        raise MemoryError()
    pr.n = n
    pr.p = p
    pr.verts = <double*> malloc(3 * n * sizeof(double))
    pr.x = <double*> malloc(n * sizeof(double))
    pr.d = <double*> malloc(n * sizeof(double))
    pr.work = <double*> malloc(2 * n * sizeof(double))
    if pr.verts == NULL or pr.x == NULL or pr.d == NULL or pr.work == NULL:
        _free_problem(pr)
        raise MemoryError()
    for k in range(3):
        row = verts[k]
        for i in range(n):
            pr.verts[k * n + i] = row[i]
    for i in range(n):
        pr.x[i] = x0[i]
    return pr


cdef void _free_problem(Problem* pr) noexcept:
    free(pr.verts)
    free(pr.x)
    free(pr.d)
    free(pr.work)
    free(pr)


def residual(x, verts, double p):
    """(d0 - d1)^2 + (d1 - d2)^2 with d_i the p-distance from x to vertex i."""
    cdef Problem* pr = _new_problem(x, verts, p)
    cdef double out
    try:
        out = _residual_at(pr, pr.x)
    finally:
        _free_problem(pr)
    return out


def line_min(x, d, verts, double p, double h):
    """Bracket then golden-section minimise t -> residual(x + t d)."""
    cdef Problem* pr = _new_problem(x, verts, p)
    cdef Py_ssize_t i
    cdef double t, f
    try:
        for i in range(pr.n):
            pr.d[i] = d[i]
        _line_min(pr, h, &t, &f)
    finally:
        _free_problem(pr)
    return t, f


def descend(x0, verts, double p, dirs, double tol, int max_sweeps, double h0):
    """Coordinate descent over ``dirs`` with golden-section line searches."""
    cdef Problem* pr = _new_problem(x0, verts, p)
    cdef Py_ssize_t i, j, n = pr.n, m = len(dirs)
    cdef double* dmat = <double*> malloc(max(m * n, 1) * sizeof(double))
    cdef double* steps = <double*> malloc(max(m, 1) * sizeof(double))
    cdef double f, f_start, t, ft, floor_step = 1e-14 * h0
    cdef int sweep
    cdef bint stalled
    history = []
    try:
        if dmat == NULL or steps == NULL:
            raise MemoryError()
        for j in range(m):
            row = dirs[j]
            for i in range(n):
                dmat[j * n + i] = row[i]
            steps[j] = h0
        f = _residual_at(pr, pr.x)
        history.append(f)
        for sweep in range(max_sweeps):
            if f <= tol:
                break
            f_start = f
            with nogil:
                for j in range(m):
                    for i in range(n):
                        pr.d[i] = dmat[j * n + i]
                    _line_min(pr, steps[j], &t, &ft)
                    if ft < f and t != 0.0:
                        for i in range(n):
                            pr.x[i] = pr.x[i] + t * pr.d[i]
                        f = ft
                        steps[j] = fabs(t) if fabs(t) > floor_step else floor_step
                    else:
                        steps[j] = 0.5 * steps[j] if 0.5 * steps[j] > floor_step else floor_step
            history.append(f)
            stalled = True
            for j in range(m):
                if steps[j] > 1e-13 * h0:
                    stalled = False
            if f >= f_start and stalled:
                break
        x = [pr.x[i] for i in range(n)]
    finally:
        free(dmat)
        free(steps)
        _free_problem(pr)
    return x, f, history
