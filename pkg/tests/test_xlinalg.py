from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hessform.xlinalg import (
    NotSymmetricError,
    RationalMatrix,
    ShapeError,
    SingularMatrixError,
    charpoly,
    determinant,
    inverse,
    matrix_power_poly,
    nullspace,
    rank,
    signature,
)

entries = st.fractions(min_value=-5, max_value=5, max_denominator=3)


@st.composite
def square(draw, n=None):
    n = n or draw(st.integers(1, 4))
    return RationalMatrix([[draw(entries) for _ in range(n)] for _ in range(n)])


@st.composite
def rect(draw):
    r, c = draw(st.integers(1, 4)), draw(st.integers(1, 5))
    return RationalMatrix([[draw(st.integers(-3, 3)) for _ in range(c)] for _ in range(r)])


@st.composite
def symmetric(draw, n):
    vals = {(i, j): draw(entries) for i in range(n) for j in range(i, n)}
    return RationalMatrix([[vals[min(i, j), max(i, j)] for j in range(n)] for i in range(n)])


QUARTIC_HESSIAN_111 = RationalMatrix([[2, 5, 5], [5, 2, 5], [5, 5, 2]])


class TestDeterminant:
    def test_examples(self):
        assert determinant(RationalMatrix.identity(3)) == 1
        assert determinant(QUARTIC_HESSIAN_111) == 108
        assert determinant([[1, 2, 3], [4, 5, 6], [1, 2, 3]]) == 0

    def test_pivoting(self):
        assert determinant([[0, 1], [1, 0]]) == -1
        assert determinant([[0, 0, 1], [0, 1, 0], [1, 0, 0]]) == -1

    def test_non_square(self):
        with pytest.raises(ShapeError):
            determinant([[1, 2, 3]])

    @settings(max_examples=60)
    @given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), square(n))))
    def test_multiplicative(self, ab):
        a, b = ab
        assert determinant(a @ b) == determinant(a) * determinant(b)


class TestInverse:
    def test_examples(self):
        eye = RationalMatrix.identity(3)
        assert inverse(eye) == eye
        minus = RationalMatrix.diagonal([-1, -1, -1])
        assert inverse(minus) == minus

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            inverse([[1, 2], [2, 4]])

    @given(square(4))
    def test_product_is_identity(self, m):
        assume(determinant(m) != 0)
        assert m @ inverse(m) == RationalMatrix.identity(4)


class TestNullspace:
    def test_examples(self):
        assert nullspace(RationalMatrix.zeros(2, 2)) == [[1, 0], [0, 1]]
        assert nullspace(RationalMatrix.identity(3)) == []

    def test_no_rows(self):
        assert len(nullspace(RationalMatrix([]), ncols=3)) == 3

    @given(rect())
    def test_kernel_property(self, m):
        basis = nullspace(m)
        for v in basis:
            assert all(c == 0 for c in m @ v)
        assert rank(m) + len(basis) == m.ncols
        if basis:
            assert rank(RationalMatrix(basis)) == len(basis)


class TestSignature:
    def test_examples(self):
        assert tuple(signature(QUARTIC_HESSIAN_111)) == (1, 2, 0)
        assert tuple(signature(RationalMatrix.diagonal([2, 0, -5]))) == (1, 1, 1)
        r4 = RationalMatrix([[-2, 0, 0, 0], [0, -2, 0, 0], [0, 0, 2, -4], [0, 0, -4, 6]])
        assert tuple(signature(r4)) == (1, 3, 0)

    def test_zero_matrix(self):
        assert tuple(signature(RationalMatrix.zeros(3, 3))) == (0, 0, 3)

    def test_not_symmetric(self):
        with pytest.raises(NotSymmetricError):
            signature([[1, 2], [3, 4]])

    @settings(max_examples=60)
    @given(st.integers(1, 4).flatmap(lambda n: st.tuples(symmetric(n), square(n))))
    def test_sylvester(self, mc):
        m, c = mc
        assume(determinant(c) != 0)
        s = signature(m)
        assert sum(s) == m.nrows
        assert signature(c.T @ m @ c) == s


class TestCharpoly:
    def test_two_by_two(self):
        assert charpoly([[1, 2], [3, 4]]) == [Fraction(-2), Fraction(-5), Fraction(1)]

    @given(st.integers(2, 4).flatmap(square))
    def test_cayley_hamilton(self, m):
        assert matrix_power_poly(charpoly(m), m) == RationalMatrix.zeros(m.nrows, m.nrows)

    @given(st.integers(1, 4).flatmap(square))
    def test_constant_term(self, m):
        n = m.nrows
        assert charpoly(m)[0] == (-1) ** n * determinant(m)


class TestMatrix:
    def test_shape_errors(self):
        with pytest.raises(ShapeError):
            RationalMatrix([[1, 2], [3]])
        with pytest.raises(ShapeError):
            RationalMatrix([[1, 2]]) @ RationalMatrix([[1, 2]])

    def test_quadratic_form(self):
        assert QUARTIC_HESSIAN_111.quadratic_form((1, 0, 0)) == 2
        assert QUARTIC_HESSIAN_111.quadratic_form((1, 0, 0), (0, 1, 0)) == 5
