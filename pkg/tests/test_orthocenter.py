import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from ndortho.affine import Homothety, cross_ratio, point_reflect, subspace_contains
from ndortho.numcore import GeometryError, dot, midpoint, norm_sq, sub, vec
from ndortho.orthocenter import (
    antitriangle,
    classical_orthocenter,
    concurrence,
    configure,
    euler_check,
    feuerbach_homothety_holds,
    feuerbach_points_hold,
    feuerbach_sphere,
    harmonic_range_check,
    inplane_altitude_holds,
    orthocenter_at,
    orthocenter_set,
    reassociation_holds,
    reflected_spheres,
    sample_sphere,
    symmetry_center_holds,
)
from ndortho.triangle import Sphere, Triangle, centroid, circumcenter_inplane, circumlocus, midpoints

from corpus import random_locus_point, random_triangle, triangle_with_P

F = Fraction
WORKED = Triangle(vec((0, 0, 0)), vec((2, 0, 0)), vec((0, 2, 0)))
P_W = vec((1, 1, 1))
UNIT = Triangle(vec((0, 0)), vec((1, 0)), vec((0, 1)))


class TestOrthocenter:
    def test_worked(self):
        assert orthocenter_at(WORKED, P_W) == (0, 0, -2)

    def test_right_angle_vertex(self):
        O, _ = circumcenter_inplane(UNIT)
        assert orthocenter_at(UNIT, O) == (0, 0)
        assert classical_orthocenter(UNIT) == (0, 0)

    def test_equilateral_collapses(self):
        s = math.sqrt(3) / 2
        t = Triangle((1.0, 0.0), (-0.5, s), (-0.5, -s))
        O, _ = circumcenter_inplane(t)
        cfg = configure(t, O)
        for a, b in zip(cfg.H_P, cfg.G):
            assert abs(a - b) < 1e-12
        assert euler_check(t, O).degenerate

    def test_worked_classical(self):
        assert classical_orthocenter(WORKED) == (0, 0, 0)

    def test_rejects_off_locus(self):
        with pytest.raises(GeometryError):
            orthocenter_at(WORKED, vec((1, 2, 0)))

    @given(triangle_with_P())
    def test_altitudes_inplane(self, tp):
        t, _ = tp
        assert inplane_altitude_holds(t)


class TestAntitriangle:
    def test_worked(self):
        assert antitriangle(WORKED, P_W) == ((1, 1, -1), (-1, 1, -1), (1, -1, -1))

    @given(triangle_with_P())
    def test_reflection_of_P_in_midpoints(self, tp):
        t, P = tp
        B = antitriangle(t, P)
        M = midpoints(t)
        assert B == tuple(point_reflect(M[i], P) for i in range(3))
        Q = configure(t, P).Q_P
        assert B == tuple(point_reflect(Q, A) for A in t.vertices)

    def test_planar_congruent(self):
        t = Triangle(vec((0, 0)), vec((5, 0)), vec((1, 3)))
        O, _ = circumcenter_inplane(t)
        B = antitriangle(t, O)
        for (i, j) in ((0, 1), (0, 2), (1, 2)):
            assert norm_sq(sub(B[i], B[j])) == norm_sq(sub(t.vertices[i], t.vertices[j]))


class TestSpheres:
    def test_worked_reflected(self):
        for S in reflected_spheres(WORKED, P_W):
            assert S.r_sq == 3
            assert norm_sq(sub(S.center, (0, 0, -2))) == 3
            assert S.contains(classical_orthocenter(WORKED))

    @given(triangle_with_P())
    def test_reflected_through_side_vertices(self, tp):
        t, P = tp
        for i, S in enumerate(reflected_spheres(t, P)):
            assert all(S.contains(A) for A in t.others(i))

    def test_worked_feuerbach(self):
        S = feuerbach_sphere(WORKED, P_W)
        assert S.center == (F(1, 2), F(1, 2), F(-1, 2))
        assert S.r_sq == F(3, 4)
        assert norm_sq(sub(midpoints(WORKED)[0], S.center)) == F(3, 4)

    def test_all_radii(self):
        cfg = configure(WORKED, P_W)
        spheres = [cfg.sphere, cfg.feuerbach, cfg.sphere_H, *cfg.reflected]
        assert {S.r_sq for S in spheres} <= {cfg.r_sq, cfg.r_sq / 4}


@settings(max_examples=150, deadline=None)
@given(triangle_with_P())
def test_theorem_one_properties(tp):
    t, P = tp
    cfg = configure(t, P)
    O, _ = circumcenter_inplane(t)
    H = classical_orthocenter(t)
    assert concurrence(cfg, H) and concurrence(cfg, cfg.H_P)
    assert all(norm_sq(sub(B, cfg.H_P)) == cfg.r_sq for B in cfg.B)
    assert symmetry_center_holds(cfg)
    assert all(midpoint(A, B) == cfg.Q_P for A, B in zip(t.vertices, cfg.B))
    eu = euler_check(t, P)
    assert eu.holds
    assert cfg.H_P == tuple(3 * g - 2 * p for g, p in zip(cfg.G, P))
    assert feuerbach_points_hold(cfg)
    assert feuerbach_homothety_holds(cfg, count=4, seed=1)
    if not eu.degenerate:
        assert harmonic_range_check(t, P)
    if cfg.H_P not in t.vertices:
        # right angle at A_k puts H_P on A_k and the sub-triangles degenerate
        assert reassociation_holds(cfg)


class TestEuler:
    def test_worked(self):
        eu = euler_check(WORKED, P_W)
        G = centroid(WORKED)
        assert sub(G, P_W) == (F(-1, 3), F(-1, 3), -1)
        assert sub((0, 0, -2), G) == (F(-2, 3), F(-2, 3), -2)
        assert eu.holds and not eu.degenerate
        assert subspace_contains(eu.line, P_W)


class TestHarmonic:
    def test_worked(self):
        assert harmonic_range_check(WORKED, P_W)

    def test_squared_ratios(self):
        cfg = configure(WORKED, P_W)
        pg = norm_sq(sub(cfg.G, cfg.P))
        gq = norm_sq(sub(cfg.Q_P, cfg.G))
        ph = norm_sq(sub(cfg.H_P, cfg.P))
        hq = norm_sq(sub(cfg.Q_P, cfg.H_P))
        assert pg / gq == 4 and ph / hq == 4

    def test_perturbed_fails(self):
        cfg = configure(WORKED, P_W)
        # slide H_P along the Euler line so the four points stay collinear
        H = tuple(h + (h - p) / 10 for h, p in zip(cfg.H_P, cfg.P))
        assert cross_ratio(cfg.P, cfg.Q_P, cfg.G, H) != -1

    def test_centroid_rejected(self):
        s = math.sqrt(3) / 2
        t = Triangle((1.0, 0.0), (-0.5, s), (-0.5, -s))
        with pytest.raises(GeometryError):
            harmonic_range_check(t, circumcenter_inplane(t)[0])


class TestSampling:
    @given(triangle_with_P())
    def test_rational_points_on_sphere(self, tp):
        t, P = tp
        S = Sphere(P, norm_sq(sub(P, t.A0)))
        for X in sample_sphere(S, 8, t.A0, seed=3):
            assert norm_sq(sub(X, P)) == S.r_sq

    def test_homothety_midpoints_on_feuerbach(self):
        cfg = configure(WORKED, P_W)
        for X in sample_sphere(cfg.sphere, 16, WORKED.A0):
            assert cfg.feuerbach.contains(midpoint(cfg.H_P, X))
        for Y in sample_sphere(cfg.sphere_H, 16, cfg.B[0]):
            assert cfg.feuerbach.contains(midpoint(cfg.P, Y))

    def test_deterministic(self):
        cfg = configure(WORKED, P_W)
        assert sample_sphere(cfg.sphere, 5, WORKED.A0, 9) == sample_sphere(cfg.sphere, 5, WORKED.A0, 9)


class TestOrthocenterSet:
    def test_worked(self):
        Hs = orthocenter_set(WORKED)
        assert Hs.base == (0, 0, 0) and Hs.basis == ((0, 0, -2),)
        for s in range(-3, 4):
            assert subspace_contains(Hs, vec((0, 0, -2 * s)))

    def test_plane_is_classical(self):
        t = Triangle(vec((0, 0)), vec((5, 0)), vec((1, 3)))
        Hs = orthocenter_set(t)
        assert Hs.dim == 0 and Hs.base == classical_orthocenter(t)

    def test_pointwise(self):
        rng = random.Random(5)
        for n in (3, 4, 5):
            t = random_triangle(rng, n)
            S, Hs = circumlocus(t), orthocenter_set(t)
            h = Homothety(centroid(t), F(-2))
            for _ in range(10):
                P = random_locus_point(rng, t)
                assert orthocenter_at(t, P) == h(P)
                assert subspace_contains(Hs, orthocenter_at(t, P))
            assert Hs.dim == S.dim == n - 2


def test_planar_dot_altitude():
    t = Triangle(vec((0, 0)), vec((5, 0)), vec((1, 3)))
    H = classical_orthocenter(t)
    assert dot(sub(H, t.A0), sub(t.A2, t.A1)) == 0
