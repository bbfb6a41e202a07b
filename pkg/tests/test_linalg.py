from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geompoly.linalg import (DimensionError, QMatrix, all_principal_minors_nonzero, determinant,
                             format_rational, nullspace, parse_rational, principal_minor, rank, solve)
from geompoly.rootsys import cartan_matrix

from conftest import rationals, square_matrices, sympy_matrix

CYCLIC3 = [[0, 1, 0], [0, 0, 1], [1, 0, 0]]


def laplace(rows):
    if not rows:
        return Fraction(1)
    return sum((-1) ** j * rows[0][j] * laplace([r[:j] + r[j + 1:] for r in rows[1:]])
               for j in range(len(rows)))


class TestRationals:
    def test_parse(self):
        assert parse_rational("3/6") == Fraction(1, 2)
        assert parse_rational(-4) == -4
        assert parse_rational(" -2/3 ") == Fraction(-2, 3)

    @pytest.mark.parametrize("bad", ["1/0", "abc", "1.5", ""])
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_rational(bad)

    def test_format(self):
        assert format_rational(Fraction(4, 2)) == "2"
        assert format_rational(Fraction(-1, 3)) == "-1/3"


class TestQMatrix:
    def test_json_round_trip(self):
        M = QMatrix([[1, Fraction(-1, 2)], [0, 3]])
        assert QMatrix.from_json(M.to_json()) == M
        assert M.to_json() == {"n": 2, "rows": [["1", "-1/2"], ["0", "3"]]}

    def test_hashable_and_immutable(self):
        assert hash(QMatrix.identity(3)) == hash(QMatrix.identity(3))
        assert QMatrix([[1, 2], [3, 4]]).transpose() == QMatrix([[1, 3], [2, 4]])

    def test_ragged_rejected(self):
        with pytest.raises(DimensionError):
            QMatrix([[1, 2], [3]])


class TestDeterminant:
    def test_examples(self):
        assert determinant([[2, -1], [-1, 2]]) == 3
        assert determinant(QMatrix.identity(4)) == 1
        assert determinant([[1, 1], [2, 2]]) == 0

    def test_non_square(self):
        with pytest.raises(DimensionError):
            determinant([[1, 2, 3]])

    @given(square_matrices(1, 5))
    @settings(max_examples=80, deadline=None)
    def test_matches_cofactor_expansion(self, rows):
        assert determinant(rows) == laplace([list(r) for r in rows])

    @given(square_matrices(1, 4), st.data())
    @settings(max_examples=40, deadline=None)
    def test_row_swap_flips_sign(self, rows, data):
        n = len(rows)
        if n < 2:
            return
        i, j = data.draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
        swapped = list(rows)
        swapped[i], swapped[j] = swapped[j], swapped[i]
        assert determinant(swapped) == -determinant(rows)


class TestMinors:
    def test_examples(self):
        A2 = cartan_matrix("A", 2).C
        assert principal_minor(A2, [1, 2]) == 3
        assert principal_minor(A2, []) == 1
        assert principal_minor(CYCLIC3, [1]) == 0
        assert principal_minor(CYCLIC3, [1, 2, 3]) == 1

    def test_all_nonzero(self):
        assert all_principal_minors_nonzero(cartan_matrix("G", 2).C) == (True, None)
        assert all_principal_minors_nonzero(CYCLIC3) == (False, (1,))
        assert all_principal_minors_nonzero(QMatrix.identity(5)) == (True, None)

    def test_witness_is_smallest(self):
        M = [[1, 0, 0], [0, 1, 1], [0, 1, 1]]
        assert all_principal_minors_nonzero(M) == (False, (2, 3))

    def test_bad_index(self):
        with pytest.raises(IndexError):
            principal_minor(QMatrix.identity(2), [3])


class TestRankNullspace:
    def test_examples(self):
        assert nullspace(QMatrix.identity(3)) == []
        assert nullspace(QMatrix.zeros(2, 3)) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        assert nullspace([[1, 1], [2, 2]]) == [[-1, 1]]
        assert rank(QMatrix.identity(5)) == 5
        assert rank(QMatrix.zeros(3, 4)) == 0
        assert rank([[1, 1], [2, 2]]) == 1

    def test_sparse_input(self):
        rows = [{0: Fraction(1), 2: Fraction(-1)}, {1: Fraction(2)}]
        assert rank((rows, 3)) == 2
        assert nullspace((rows, 3)) == [[1, 0, 1]]

    @given(st.integers(1, 5), st.integers(1, 6), st.data())
    @settings(max_examples=80, deadline=None)
    def test_against_sympy(self, m, n, data):
        rows = data.draw(st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=m, max_size=m))
        S = sympy_matrix(rows)
        assert rank(rows) == S.rank()
        ns = nullspace(rows)
        assert len(ns) == n - S.rank()
        for v in ns:
            assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
        if ns:
            assert rank(ns) == len(ns)

    @given(st.integers(1, 4), st.integers(1, 5), st.data())
    @settings(max_examples=60, deadline=None)
    def test_low_rank_products(self, k, n, data):
        # products of thin factors have rank at most k, exercising the non-certified path
        A = data.draw(st.lists(st.lists(rationals, min_size=k, max_size=k), min_size=n, max_size=n))
        B = data.draw(st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=k, max_size=k))
        P = [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(n)] for i in range(n)]
        assert rank(P) == sympy_matrix(P).rank()

    @given(square_matrices(1, 4), st.data())
    @settings(max_examples=60, deadline=None)
    def test_solve(self, rows, data):
        n = len(rows)
        x = data.draw(st.lists(rationals, min_size=n, max_size=n))
        b = [sum(a * xi for a, xi in zip(r, x)) for r in rows]
        y = solve(rows, b)
        assert y is not None
        assert [sum(a * yi for a, yi in zip(r, y)) for r in rows] == b

    def test_solve_inconsistent(self):
        assert solve([[1, 1], [2, 2]], [1, 3]) is None
