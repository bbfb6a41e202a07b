from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geompoly.diffops import OperatorContext, dee, delta, in_D, in_Delta, verify_expansion
from geompoly.linalg import DimensionError, QMatrix
from geompoly.mpoly import MPoly, parse, partial
from geompoly.rootsys import cartan_matrix
from geompoly.volumes import volume_polynomial

from conftest import polys, rationals, square_matrices

A2 = cartan_matrix("A", 2).C


def squarefree_product(n):
    return MPoly.monomial((1,) * n)


class TestOperators:
    def test_delta(self):
        assert delta([[1, 0], [0, 1]], 1, parse("x1^2", 2)) == parse("-2*x1 + 1", 2)
        assert delta(A2, 2, MPoly.constant(2, 4)).is_zero()
        assert delta(A2, 1, parse("x1", 2)) == MPoly.constant(2, -2)

    def test_dee(self):
        assert dee(A2, 1, parse("x1^2", 2)) == parse("4*x1", 2)
        assert dee(A2, 2, parse("3*x1 - x2", 2)) == MPoly.constant(2, -5)
        assert dee(A2, 1, MPoly.constant(2, 9)).is_zero()

    def test_index_is_one_based(self):
        with pytest.raises(IndexError):
            dee(A2, 0, parse("x1", 2))
        with pytest.raises(IndexError):
            delta(A2, 3, parse("x1", 2))

    def test_shape_errors(self):
        with pytest.raises(DimensionError):
            OperatorContext([[1, 2, 3]])
        with pytest.raises(DimensionError):
            in_D(A2, MPoly.variable(3, 1))


class TestMembership:
    def test_constants(self):
        assert in_Delta(A2, MPoly.constant(2, 3)).verdict
        assert in_D(A2, MPoly.constant(2, 3)).verdict

    def test_a2_square(self):
        w = in_Delta(A2, parse("x1^2", 2))
        assert (w.verdict, w.failing_index, w.offending) == (False, 1, MPoly.constant(2, -4))
        w = in_D(A2, parse("x1^2", 2))
        assert (w.verdict, w.failing_index, w.offending) == (False, 1, MPoly.constant(2, 4))

    def test_volume_polynomial_is_member(self):
        V = volume_polynomial(cartan_matrix("A", 2))
        assert in_Delta(A2, V).verdict and in_D(A2, V).verdict

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_identity_squarefree(self, n):
        I = QMatrix.identity(n)
        assert in_D(I, squarefree_product(n)).verdict
        w = in_D(I, MPoly.monomial((2,) + (0,) * (n - 1)))
        assert (w.verdict, w.failing_index) == (False, 1)

    @given(square_matrices(1, 3), st.data())
    @settings(max_examples=60, deadline=None)
    def test_theorem_a_agreement(self, rows, data):
        n = len(rows)
        p = data.draw(polys(n, max_deg=4))
        a, b = in_Delta(rows, p), in_D(rows, p)
        assert a.verdict == b.verdict

    @given(square_matrices(1, 3), st.data())
    @settings(max_examples=40, deadline=None)
    def test_witness_is_reproducible(self, rows, data):
        p = data.draw(polys(len(rows), max_deg=4))
        w = in_D(rows, p)
        if not w.verdict:
            assert w.offending == partial(dee(rows, w.failing_index, p), w.failing_index)
            assert w.offending
            for i in range(1, w.failing_index):
                assert not partial(dee(rows, i, p), i)


class TestExpansion:
    def test_trivial_cases(self):
        assert verify_expansion(A2, 1, MPoly.constant(2, 5))
        assert verify_expansion(A2, 2, MPoly.zero(2))
        lin = parse("3*x1 - 1/2*x2", 2)
        assert delta(A2, 1, lin) == -dee(A2, 1, lin)
        assert verify_expansion(A2, 1, lin)

    @given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3),
           polys(3, max_deg=5), st.integers(1, 3))
    @settings(max_examples=60, deadline=None)
    def test_random(self, rows, p, i):
        assert verify_expansion(rows, i, p)

    def test_degree_five(self):
        p = parse("x1^5 - 2*x1^2*x2*x3^2 + 1/3*x3", 3)
        M = [[Fraction(1, 2), -1, 2], [0, 3, Fraction(-2, 3)], [1, 1, 1]]
        assert all(verify_expansion(M, i, p) for i in (1, 2, 3))
