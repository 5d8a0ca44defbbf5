from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from ndortho.affine import (
    AffineSubspace,
    Homothety,
    PointReflection,
    collinear,
    cross_ratio,
    homothety_apply,
    nullspace,
    point_reflect,
    rank,
    rref,
    subspace_contains,
    subspace_map,
)
from ndortho.numcore import FLOAT, EXACT, GeometryError, dot, vec
from ndortho.triangle import Triangle, circumlocus

from corpus import rationals, vectors

F = Fraction
nonzero = rationals.filter(lambda x: x != 0)


def line_points(*ts):
    """Points t * (1, 2, -1) + (3, 0, 1) on a fixed line."""
    return [vec((3 + t, 2 * t, 1 - t)) for t in ts]


class TestHomothety:
    def test_reflection_through_origin(self):
        assert homothety_apply(Homothety(vec((0, 0)), -1), vec((1, 2))) == (-1, -2)

    def test_worked_orthocenter(self):
        h = Homothety(vec((F(2, 3), F(2, 3), 0)), F(-2))
        assert homothety_apply(h, vec((1, 1, 1))) == (0, 0, -2)

    @given(vectors(3), nonzero)
    def test_center_fixed(self, C, lam):
        assert homothety_apply(Homothety(C, lam), C) == C

    @given(vectors(3), vectors(3))
    def test_ratio_one_identity(self, C, X):
        assert homothety_apply(Homothety(C, F(1)), X) == X

    def test_zero_ratio_rejected(self):
        with pytest.raises(ValueError):
            Homothety(vec((0, 0)), 0)

    @given(vectors(3), vectors(3), nonzero, nonzero)
    def test_composition(self, P, X, lam, mu):
        h, g = Homothety(P, lam), Homothety(P, mu)
        assert h(g(X)) == Homothety(P, lam * mu)(X)
        assert g.then(h)(X) == h(g(X))

    @given(vectors(2), vectors(2), nonzero)
    def test_inverse(self, C, X, lam):
        h = Homothety(C, lam)
        assert h.inverse()(h(X)) == X


class TestPointReflect:
    def test_medial_to_antitriangle(self):
        assert point_reflect(vec((1, 1, 0)), vec((1, 1, 1))) == (1, 1, -1)

    def test_fixed_and_origin(self):
        X = vec((3, 4))
        assert point_reflect(X, X) == X
        assert point_reflect(vec((0, 0)), X) == (-3, -4)

    @given(vectors(3), vectors(3))
    def test_involution(self, C, X):
        assert point_reflect(C, point_reflect(C, X)) == X
        assert PointReflection(C)(X) == PointReflection(C).as_homothety()(X)


class TestSubspace:
    def test_line_membership(self):
        S = AffineSubspace(vec((1, 1, 0)), (vec((0, 0, 1)),))
        assert subspace_contains(S, vec((1, 1, 7)))
        assert not subspace_contains(S, vec((1, 2, 0)))
        assert S.contains(S.base)

    def test_circumlocus_membership(self):
        S = circumlocus(Triangle(vec((0, 0, 0)), vec((2, 0, 0)), vec((0, 2, 0))))
        assert subspace_contains(S, vec((1, 1, -3)))

    def test_dependent_basis_rejected(self):
        with pytest.raises(GeometryError):
            AffineSubspace(vec((0, 0, 0)), (vec((1, 2, 3)), vec((2, 4, 6))))

    def test_float_membership(self):
        S = AffineSubspace((1.0, 1.0, 0.0), ((0.0, 0.0, 1.0),), FLOAT)
        assert subspace_contains(S, (1.0 + 1e-12, 1.0, 5.0))
        assert not subspace_contains(S, (1.001, 1.0, 5.0))

    def test_map_scales_basis(self):
        S = AffineSubspace(vec((1, 1, 0)), (vec((0, 0, 1)),))
        T = subspace_map(Homothety(vec((F(2, 3), F(2, 3), 0)), F(-2)), S)
        assert T.base == (0, 0, 0) and T.basis == ((0, 0, -2),)

    def test_map_identity(self):
        S = AffineSubspace(vec((1, 2, 3)), (vec((1, 0, 1)),))
        T = subspace_map(Homothety(vec((5, 5, 5)), F(1)), S)
        assert T == S

    @given(vectors(4), vectors(4), vectors(4), rationals, rationals, nonzero)
    def test_map_preserves_membership(self, base, d1, C, a, b, lam):
        d2 = (d1[1], -d1[0], d1[3], d1[2])
        assume(rank([d1, d2]) == 2)
        S = AffineSubspace(base, (d1, d2))
        h = Homothety(C, lam)
        assert subspace_contains(subspace_map(h, S), h(S.point((a, b))))

    def test_point_length_mismatch(self):
        S = AffineSubspace(vec((0, 0)), (vec((1, 0)),))
        with pytest.raises(ValueError):
            S.point((1, 2))


class TestLinearAlgebra:
    def test_rank_and_rref(self):
        rows = [vec((1, 2, 3)), vec((2, 4, 6)), vec((0, 1, 1))]
        assert rank(rows) == 2
        R, piv = rref(rows, EXACT)
        assert piv == [0, 1]

    @given(vectors(5), vectors(5))
    def test_nullspace_orthogonal(self, u, v):
        assume(rank([u, v]) == 2)
        N = nullspace([u, v])
        assert len(N) == 3
        assert rank(N) == 3
        assert all(dot(w, u) == 0 and dot(w, v) == 0 for w in N)


class TestCollinear:
    def test_euler_line(self):
        assert collinear([vec((1, 1, 1)), vec((F(2, 3), F(2, 3), 0)), vec((0, 0, -2))])

    def test_triangle(self):
        assert not collinear([vec((0, 0)), vec((1, 0)), vec((0, 1))])

    def test_repeated(self):
        X = vec((1, 2))
        assert collinear([X, X, X])

    def test_too_few(self):
        with pytest.raises(ValueError):
            collinear([vec((0, 0)), vec((1, 1))])

    def test_float_scale_invariant(self):
        assert collinear([(0.0, 0.0), (1e8, 1e8), (3e8, 3e8 * (1 + 1e-13))], FLOAT)
        assert not collinear([(0.0, 0.0), (1e-8, 0.0), (0.0, 1e-8)], FLOAT)


class TestCrossRatio:
    def test_harmonic_pattern(self):
        P, Q, G, H = line_points(0, F(1, 2), F(1, 3), 1)
        assert cross_ratio(P, Q, G, H) == -1

    def test_generic(self):
        assert cross_ratio(*line_points(0, 2, 1, 3)) == F(-1, 3)

    def test_other_harmonic_quadruple(self):
        # (0, 2/3; 1/2, 2) evaluates to -2, so use (0, 2/3; 1/2, 1)
        assert cross_ratio(*line_points(0, F(2, 3), F(1, 2), 2)) == -2
        assert cross_ratio(*line_points(0, F(2, 3), F(1, 2), 1)) == -1

    def test_repeated_rejected(self):
        with pytest.raises(GeometryError):
            cross_ratio(*line_points(0, 1, 1, 2))

    def test_non_collinear_rejected(self):
        with pytest.raises(GeometryError):
            cross_ratio(vec((0, 0)), vec((1, 0)), vec((2, 0)), vec((0, 1)))

    @given(st.lists(rationals, min_size=4, max_size=4, unique=True), vectors(3), nonzero)
    def test_homothety_invariant(self, ts, C, lam):
        pts = line_points(*ts)
        h = Homothety(C, lam)
        assert cross_ratio(*pts) == cross_ratio(*(h(X) for X in pts))
