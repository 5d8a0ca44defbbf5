import math
import random

import pytest

from ndortho import _pykernels, kernels

try:
    from ndortho import _ckernels
except ImportError:  # pragma: no cover - extension not built
    _ckernels = None

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")
PS = [1.0, 1.5, 2.0, 3.0, 4.0, math.inf]


def random_problem(rng, n=2):
    verts = [[rng.uniform(-5, 5) for _ in range(n)] for _ in range(3)]
    x0 = [rng.uniform(-5, 5) for _ in range(n)]
    dirs = [[1.0 if i == j else 0.0 for i in range(n)] for j in range(n)]
    return x0, verts, dirs


def test_selection_reports_implementation():
    assert kernels.IMPLEMENTATION in ("cython", "python")
    if _ckernels is not None:
        assert kernels.IMPLEMENTATION == "cython" or kernels.pnorm is _pykernels.pnorm


@pytest.mark.parametrize("p", PS)
def test_pnorm_values(p):
    assert _pykernels.pnorm([3.0, -4.0], p) == pytest.approx(
        {1.0: 7.0, 2.0: 5.0, math.inf: 4.0}.get(p, (3**p + 4**p) ** (1 / p)))
    assert _pykernels.pnorm([0.0, 0.0], p) == 0.0


def test_pnorm_no_overflow():
    assert _pykernels.pnorm([1e300, 1e300], 4.0) == pytest.approx(1e300 * 2**0.25)


def test_line_min_finds_axis_root():
    verts = [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]]
    # on the y axis the residual is (sqrt(1 + y^2) - |1 - y|)^2, zero at y = 0
    t, f = _pykernels.line_min([0.0, 0.5], [0.0, -1.0], verts, 2.0, 0.1)
    assert t == pytest.approx(0.5, abs=1e-6) and f < 1e-12


@needs_c
@pytest.mark.parametrize("p", PS)
def test_compiled_matches_python(p):
    rng = random.Random(int(10 * p) if math.isfinite(p) else 99)
    for _ in range(20):
        x0, verts, dirs = random_problem(rng, rng.choice([2, 3]))
        dirs = [[1.0 if i == j else 0.0 for i in range(len(x0))] for j in range(len(x0))]
        assert _ckernels.pnorm(x0, p) == _pykernels.pnorm(x0, p)
        assert _ckernels.residual(x0, verts, p) == _pykernels.residual(x0, verts, p)
        assert _ckernels.line_min(x0, dirs[0], verts, p, 0.5) == _pykernels.line_min(
            x0, dirs[0], verts, p, 0.5)
        a = _ckernels.descend(x0, verts, p, dirs, 1e-14, 50, 5.0)
        b = _pykernels.descend(x0, verts, p, dirs, 1e-14, 50, 5.0)
        assert list(a[0]) == list(b[0]) and a[1] == b[1] and list(a[2]) == list(b[2])


@pytest.mark.parametrize("p", PS)
def test_descend_monotone(p):
    rng = random.Random(7)
    x0, verts, dirs = random_problem(rng)
    x, f, hist = kernels.descend(x0, verts, p, dirs, 1e-14, 100, 5.0)
    assert all(b <= a for a, b in zip(hist, hist[1:]))
    assert f <= kernels.residual(x0, verts, p)
    assert f == kernels.residual(list(x), verts, p)
