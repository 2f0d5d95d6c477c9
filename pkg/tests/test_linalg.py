from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.matrices import DomainMatrix

from qhkit.linalg import (
    GF, QQ, ZZ, GroundRing, LinalgError, Matrix, cokernel_invariants, column_space,
    complement_basis, determinant, inverse, is_saturated, kernel_basis, rank, rref, saturation,
    smith_form, solve, sparse_kernel,
)

small = st.integers(min_value=-6, max_value=6)


def int_matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(lambda m: st.integers(1, max_cols).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)))


def sympy_divisors(rows):
    S = smith_normal_form(sympy.Matrix(rows), domain=sympy.ZZ)
    return [abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0]


class TestGroundRing:
    def test_parse(self):
        assert GroundRing.parse("ZZ") == ZZ
        assert GroundRing.parse("GF(7)") == GF(7)
        assert GroundRing.parse(" QQ ") == QQ

    def test_rejects_composite_characteristic(self):
        with pytest.raises(LinalgError):
            GF(6)

    def test_convert(self):
        assert QQ.convert("1/3") == Fraction(1, 3)
        assert GF(5).convert(Fraction(1, 2)) == 3
        with pytest.raises(LinalgError):
            ZZ.convert("1/2")

    def test_units(self):
        assert ZZ.is_unit(-1) and not ZZ.is_unit(2)
        assert GF(3).inv(2) == 2


class TestSmith:
    @settings(max_examples=60, deadline=None)
    @given(int_matrices())
    def test_divisors_match_sympy(self, rows):
        A = Matrix(ZZ, rows)
        assert [abs(d) for d in smith_form(A).d] == sympy_divisors(rows)

    @settings(max_examples=60, deadline=None)
    @given(int_matrices())
    def test_transform_is_diagonal(self, rows):
        A = Matrix(ZZ, rows)
        sd = smith_form(A, want_inverse=True)
        D = sd.U @ A @ sd.V
        for i in range(D.nrows):
            for j in range(D.ncols):
                want = sd.d[i] if i == j and i < len(sd.d) else 0
                assert D.rows[i][j] == want
        assert sd.U @ sd.Uinv == Matrix.identity(ZZ, A.nrows)
        for a, b in zip(sd.d, sd.d[1:]):
            assert b % a == 0

    def test_cokernel_of_two(self):
        assert cokernel_invariants(Matrix(ZZ, [[2, 0], [0, 0]])) == (1, (2,))


class TestRank:
    @settings(max_examples=50, deadline=None)
    @given(int_matrices())
    def test_rank_over_qq(self, rows):
        assert rank(Matrix(QQ, rows)) == sympy.Matrix(rows).rank()

    @settings(max_examples=50, deadline=None)
    @given(int_matrices(), st.sampled_from([2, 3, 5]))
    def test_rank_over_gf(self, rows, p):
        dm = DomainMatrix([[sympy.GF(p)(x) for x in r] for r in rows],
                          (len(rows), len(rows[0])), sympy.GF(p))
        assert rank(Matrix(GF(p), rows)) == dm.rank()

    @settings(max_examples=50, deadline=None)
    @given(int_matrices(), st.sampled_from([ZZ, QQ, GF(3)]))
    def test_kernel(self, rows, ring):
        A = Matrix(ring, rows)
        K = kernel_basis(A)
        assert (A @ K).is_zero()
        assert K.ncols == A.ncols - rank(A)
        if ring == ZZ and K.ncols:
            assert is_saturated(K)

    def test_rref(self):
        R, piv = rref(Matrix(QQ, [[2, 4], [1, 3]]))
        assert R == Matrix.identity(QQ, 2)


class TestSolve:
    @settings(max_examples=50, deadline=None)
    @given(int_matrices(), st.lists(small, min_size=5, max_size=5))
    def test_solution_checks(self, rows, x):
        A = Matrix(ZZ, rows)
        xv = Matrix(ZZ, [[v] for v in x[:A.ncols]])
        b = A @ xv
        y = solve(A, b)
        assert y is not None and A @ y == b

    def test_integral_obstruction(self):
        assert solve(Matrix(ZZ, [[2]]), Matrix(ZZ, [[1]])) is None
        assert solve(Matrix(QQ, [[2]]), Matrix(QQ, [[1]])) == Matrix(QQ, [[Fraction(1, 2)]])

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 4).flatmap(lambda n: st.lists(
        st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
    def test_determinant_and_inverse(self, rows):
        A = Matrix(QQ, rows)
        d = determinant(A)
        assert d == sympy.Matrix(rows).det()
        if d:
            assert A @ inverse(A) == Matrix.identity(QQ, len(rows))


class TestLattices:
    def test_saturation(self):
        S = Matrix(ZZ, [[2], [4]])
        sat = saturation(S)
        assert is_saturated(sat)
        assert not is_saturated(S)
        assert solve(sat, Matrix(ZZ, [[1], [2]])) is not None

    def test_complement(self):
        S = Matrix(ZZ, [[1], [2], [3]])
        C = complement_basis(S)
        assert abs(determinant(S.hstack(C))) == 1

    def test_column_space_hermite(self):
        S = Matrix(ZZ, [[2, 4], [0, 0]])
        assert column_space(S).ncols == 1

    def test_sparse_kernel(self):
        K = sparse_kernel(ZZ, [{0: 1, 1: -1}], 3)
        assert K.ncols == 2
        for v in K.columns():
            assert v[0] == v[1]
