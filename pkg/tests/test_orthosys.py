import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings

from ndortho.affine import Homothety, homothety_apply, rank
from ndortho.numcore import GeometryError, NormSpec, norm, sub, vec
from ndortho.orthocenter import configure
from ndortho.orthosys import (
    PAIRINGS,
    NotOrthocentric,
    derived_point_sets,
    derived_systems,
    g_points_formula,
    homothety_image,
    is_orthocentric,
    opposite_orthogonality,
    tetrahedron_altitudes_concur,
    witness,
)
from ndortho.triangle import Triangle, centroid

from corpus import (
    instance_corpus,
    random_locus_point,
    random_point,
    random_triangle,
    rational,
    triangle_with_P,
)

F = Fraction
P1 = NormSpec("p", 1)
WORKED_SYS = [vec(p) for p in ((0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, -2))]
L1_SYS = [vec(p) for p in ((1, 0), (-1, 0), (0, 1), (0, 3))]
WORKED = Triangle(*WORKED_SYS[:3])


class TestIsOrthocentric:
    def test_worked(self):
        s = is_orthocentric(WORKED_SYS)
        assert s.P == (1, 1, 1) and s.r_sq == 3

    def test_right_triangle_duplicate(self):
        with pytest.raises(GeometryError, match="coincide"):
            is_orthocentric([vec(p) for p in ((0, 0), (1, 0), (0, 1), (0, 0))])

    def test_l1(self):
        s = is_orthocentric(L1_SYS, P1)
        assert s.P == (0, -1) and s.r_sq == 4
        assert norm(sub(s.P, L1_SYS[0]), P1) == 2

    def test_l1_is_not_euclidean_system(self):
        with pytest.raises(NotOrthocentric):
            is_orthocentric(L1_SYS)

    def test_collinear_first_three(self):
        with pytest.raises(GeometryError):
            is_orthocentric([vec(p) for p in ((0, 0), (1, 1), (2, 2), (0, 5))])

    def test_reports_distances(self):
        with pytest.raises(NotOrthocentric, match=r"\("):
            is_orthocentric([vec(p) for p in ((0, 0), (3, 0), (0, 1), (1, 1))])

    def test_wrong_count(self):
        with pytest.raises(ValueError):
            is_orthocentric(WORKED_SYS[:3])

    @settings(max_examples=60, deadline=None)
    @given(triangle_with_P())
    def test_permutation_symmetry(self, tp):
        t, P = tp
        pts = t.vertices + (configure(t, P).H_P,)
        assume(len(set(pts)) == 4)
        assume(all(rank([sub(b, a), sub(c, a)]) == 2 for a, b, c in itertools.combinations(pts, 3)))
        radii = set()
        for perm in itertools.permutations(range(4)):
            s = is_orthocentric([pts[i] for i in perm])
            radii.add(s.r_sq)
        assert len(radii) == 1


class TestDerived:
    def test_worked(self):
        systems = derived_systems(WORKED, vec((1, 1, 1)))
        assert set(systems) == {"ABH", "BP", "MP", "NH", "GG"}
        assert {k: s.r_sq for k, s in systems.items()} == {
            "ABH": 3, "BP": 3, "MP": F(3, 4), "NH": F(3, 4), "GG": F(1, 3)}

    @settings(max_examples=80, deadline=None)
    @given(triangle_with_P())
    def test_homothety_maps(self, tp):
        t, P = tp
        cfg = configure(t, P)
        sets = derived_point_sets(t, P)
        hm = Homothety(cfg.G, F(-1, 2))
        hq = Homothety(cfg.Q_P, F(-1, 3))
        assert tuple(homothety_apply(hm, X) for X in sets["ABH"]) == sets["MP"]
        assert tuple(homothety_apply(hq, X) for X in sets["ABH"]) == sets["GG"]
        assert sets["GG"][:3] == g_points_formula(t, P)

    def test_generic_all_validate(self):
        for t, P in instance_corpus(50, seed=2):
            if configure(t, P).H_P in t.vertices:
                continue
            systems = derived_systems(t, P)
            assert len(systems) == 5


class TestLemma:
    def test_identity(self):
        s = is_orthocentric(WORKED_SYS)
        assert homothety_image(s, Homothety(vec((4, 5, 6)), F(1))) == s

    def test_worked_scaled(self):
        s = is_orthocentric(WORKED_SYS)
        img = homothety_image(s, Homothety(vec((0, 0, 0)), F(-2)))
        assert img.r_sq == 12
        assert img.points == ((0, 0, 0), (-4, 0, 0), (0, -4, 0), (0, 0, 4))

    def test_reflection_preserves_radius(self):
        s = is_orthocentric(WORKED_SYS)
        assert homothety_image(s, Homothety(vec((1, 2, 3)), F(-1))).r_sq == s.r_sq

    def test_random(self):
        rng = random.Random(9)
        s = is_orthocentric(WORKED_SYS)
        for _ in range(200):
            lam = rational(rng)
            if lam == 0:
                continue
            img = homothety_image(s, Homothety(random_point(rng, 3), lam))
            assert img.r_sq == lam * lam * s.r_sq


class TestTheorem3:
    def test_worked(self):
        s = is_orthocentric(WORKED_SYS)
        checks = opposite_orthogonality(s)
        assert [c.pairing for c in checks] == list(PAIRINGS)
        first = checks[0]
        assert first.u == (2, 0, 0) and first.v == (0, -2, -2)
        assert first.dot == 0
        assert all(c.holds for c in checks)

    def test_l1(self):
        s = is_orthocentric(L1_SYS, P1)
        checks = opposite_orthogonality(s)
        assert checks[0].u == (-2, 0) and checks[0].v == (0, 2)
        assert norm(sub(checks[0].u, checks[0].v), P1) == 4
        assert all(c.isosceles and c.diff_matches and c.sum_matches for c in checks)

    @settings(max_examples=80, deadline=None)
    @given(triangle_with_P())
    def test_random_exact(self, tp):
        t, P = tp
        for pts in derived_point_sets(t, P).values():
            try:
                s = is_orthocentric(pts)
            except GeometryError:
                continue
            assert all(c.holds and c.dot == 0 for c in opposite_orthogonality(s))


class TestTetrahedron:
    def test_worked(self):
        assert tetrahedron_altitudes_concur(WORKED_SYS) == (0, 0, 0)

    def test_regular(self):
        pts = [vec(p) for p in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))]
        X = tetrahedron_altitudes_concur(pts)
        assert X == (0, 0, 0)

    def test_generic_fails(self):
        rng = random.Random(3)
        misses = 0
        for _ in range(100):
            pts = [random_point(rng, 3) for _ in range(4)]
            if rank([sub(p, pts[0]) for p in pts[1:]]) < 3:
                continue
            misses += tetrahedron_altitudes_concur(pts) is None
        assert misses >= 95

    def test_coplanar(self):
        with pytest.raises(GeometryError):
            tetrahedron_altitudes_concur([vec(p) for p in ((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0))])

    def test_planar_ambient(self):
        with pytest.raises(GeometryError):
            tetrahedron_altitudes_concur([vec(p) for p in ((0, 0), (1, 0), (0, 1), (1, 1))])

    def test_higher_dimension(self):
        rng = random.Random(6)
        found = 0
        for _ in range(20):
            t = random_triangle(rng, 5)
            P = random_locus_point(rng, t)
            pts = t.vertices + (configure(t, P).H_P,)
            if rank([sub(p, pts[0]) for p in pts[1:]]) == 3:
                assert tetrahedron_altitudes_concur(pts) is not None
                found += 1
        assert found >= 15

    def test_float(self):
        pts = [tuple(float(x) for x in p) for p in WORKED_SYS]
        X = tetrahedron_altitudes_concur(pts)
        assert X is not None and max(abs(x) for x in X) < 1e-9


def test_witness_and_centroid():
    assert witness(WORKED_SYS) == (1, 1, 1)
    assert centroid(WORKED) == (F(2, 3), F(2, 3), 0)
