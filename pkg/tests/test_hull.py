import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from geompoly.hull import UnsupportedDimension, hull_volume, shoelace_area
from geompoly.rootsys import cartan_matrix, parse_label, weyl_orbit


def qhull(points):
    return ConvexHull(np.array([[float(x) for x in p] for p in points])).volume


coords = st.fractions(-6, 6, max_denominator=3)


class TestBasics:
    def test_square(self):
        assert hull_volume([(0, 0), (1, 0), (0, 1), (1, 1)]).volume == 1

    def test_simplex(self):
        assert hull_volume([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]).volume == Fraction(1, 6)

    def test_hexagon_matches_shoelace(self):
        pts = list(weyl_orbit(cartan_matrix("A", 2), (1, 1)))
        v = hull_volume(pts).volume
        assert v == shoelace_area(pts) == 9

    def test_degenerate(self):
        res = hull_volume([(0, 0), (1, 1), (2, 2)])
        assert (res.volume, res.dim) == (0, 1)
        assert hull_volume([(3, 3, 3)]).volume == 0

    def test_interval(self):
        assert hull_volume([(Fraction(-3, 2),), (Fraction(3, 2),), (0,)]).volume == 3

    def test_errors(self):
        with pytest.raises(ValueError):
            hull_volume([])
        with pytest.raises(UnsupportedDimension):
            hull_volume([(0,) * 5, (1,) * 5])
        with pytest.raises(ValueError):
            hull_volume([(0, 0), (1, 0, 0)])


class TestOracles:
    @given(st.lists(st.tuples(coords, coords), min_size=3, max_size=25))
    @settings(max_examples=80, deadline=None)
    def test_shoelace_2d(self, pts):
        assert hull_volume(pts).volume == shoelace_area(pts)

    @given(st.lists(st.tuples(coords, coords, coords), min_size=4, max_size=30))
    @settings(max_examples=60, deadline=None)
    def test_qhull_3d(self, pts):
        res = hull_volume(pts)
        if res.dim == 3:
            assert float(res.volume) == pytest.approx(qhull(pts), rel=1e-9)
        else:
            assert res.volume == 0

    @pytest.mark.parametrize("seed", range(5))
    def test_qhull_4d(self, seed):
        rng = random.Random(seed)
        pts = [tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(4)) for _ in range(25)]
        assert float(hull_volume(pts).volume) == pytest.approx(qhull(pts), rel=1e-9)

    def test_cube_with_many_coplanar_points(self):
        pts = list(itertools.product(range(3), repeat=3))
        assert hull_volume(pts).volume == 8

    @pytest.mark.parametrize("label,lam,expected", [
        ("A2", (1, 1), 9), ("B2", (1, 1), 14), ("G2", (1, 2), 63),
        ("A3", (1, 2, 3), 464), ("B3", (1, 1, 1), 172), ("A4", (1, 1, 1, 1), 625),
    ])
    def test_permutohedra_against_qhull(self, label, lam, expected):
        pts = list(weyl_orbit(parse_label(label), lam))
        v = hull_volume(pts).volume
        assert v == expected
        assert float(v) == pytest.approx(qhull(pts), rel=1e-9)


class TestInvariance:
    @given(st.lists(st.tuples(coords, coords, coords), min_size=4, max_size=15),
           st.fractions(Fraction(1, 3), 4, max_denominator=3), st.randoms(use_true_random=False))
    @settings(max_examples=40, deadline=None)
    def test_scale_shuffle_translate(self, pts, t, rnd):
        base = hull_volume(pts).volume
        scaled = [tuple(t * x for x in p) for p in pts]
        assert hull_volume(scaled).volume == t ** 3 * base
        shuffled = list(pts)
        rnd.shuffle(shuffled)
        moved = [(x + 1, y - Fraction(1, 2), z + 7) for x, y, z in shuffled]
        assert hull_volume(moved).volume == base

    @given(st.lists(st.tuples(coords, coords, coords), min_size=4, max_size=12))
    @settings(max_examples=30, deadline=None)
    def test_interior_points_do_not_matter(self, pts):
        n = len(pts)
        centroid = tuple(sum(p[c] for p in pts) / n for c in range(3))
        mids = [tuple((a + b) / 2 for a, b in zip(pts[0], p)) for p in pts[1:]]
        assert hull_volume(pts + [centroid] + mids).volume == hull_volume(pts).volume
