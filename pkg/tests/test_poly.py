from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hessform.poly import (
    ArityMismatchError,
    EpsForm,
    Form,
    FormSyntaxError,
    UnknownVariableError,
    derivative,
    evaluate,
    format_form,
    infer_arity,
    linear_substitute,
    monomials,
    parse_form,
)
from hessform.xlinalg import RationalMatrix

coeffs = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def forms(draw, arity=3, max_degree=3, homogeneous=None):
    if homogeneous is not None:
        exps = monomials(arity, homogeneous)
    else:
        exps = [m for d in range(max_degree + 1) for m in monomials(arity, d)]
    chosen = draw(st.lists(st.sampled_from(exps), max_size=6, unique=True))
    return Form(arity, {e: draw(coeffs) for e in chosen})


@st.composite
def matrices(draw, n=3):
    return RationalMatrix([[draw(st.integers(-2, 2)) for _ in range(n)] for _ in range(n)])


class TestParse:
    def test_quartic(self):
        f = parse_form("x*y*z*(x+y+z)", 3)
        assert dict(f.terms) == {(2, 1, 1): 1, (1, 2, 1): 1, (1, 1, 2): 1}

    def test_zero(self):
        f = parse_form("0", 3)
        assert f.is_zero and len(f) == 0

    def test_maschke(self):
        f = parse_form("x^6+y^6+z^6-10*(x^3*y^3+y^3*z^3+z^3*x^3)", 3)
        assert sorted(f.terms.values()) == [-10, -10, -10, 1, 1, 1]

    def test_rationals_and_unary_minus(self):
        assert parse_form("-3/4*x^2 + -(y)", 2) == Form(2, {(2, 0): Fraction(-3, 4), (0, 1): -1})

    def test_indexed_variables(self):
        f = parse_form("x0*x3 - x2^2", 4)
        assert f.arity == 4 and f.coefficient((1, 0, 0, 1)) == 1

    def test_infer_arity(self):
        assert infer_arity("x*z") == 3
        assert infer_arity("x0 + x4") == 5

    @pytest.mark.parametrize(
        "text, message",
        [("x +* y", "unexpected"), ("(x + y", r"expected '\)'"), ("x^-1", "exponent"), ("x^(2)", "exponent"), ("", "empty"), ("x^1/2", "exponent")],
    )
    def test_syntax_errors(self, text, message):
        with pytest.raises(FormSyntaxError, match=message):
            parse_form(text, 3)

    def test_error_position(self):
        with pytest.raises(FormSyntaxError) as info:
            parse_form("x + y $ z", 3)
        assert info.value.position == 6

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariableError):
            parse_form("w + x", 3)
        with pytest.raises(UnknownVariableError):
            parse_form("z", 2)
        with pytest.raises(UnknownVariableError):
            parse_form("x + x0", 4)

    def test_implicit_multiplication_rejected(self):
        with pytest.raises(FormSyntaxError):
            parse_form("2x", 1)

    def test_canonical_print(self):
        assert str(parse_form("x*y*z*(x+y+z)", 3)) == "x^2*y*z + x*y^2*z + x*y*z^2"
        assert str(parse_form("y - x^2 + 1/2", 2)) == "-x^2 + y + 1/2"

    @given(forms())
    def test_round_trip(self, f):
        assert parse_form(format_form(f), 3) == f

    @given(forms(arity=5))
    def test_round_trip_indexed(self, f):
        assert parse_form(format_form(f), 5) == f


class TestAlgebra:
    def test_examples(self):
        x, y, z = (Form.variable(3, i) for i in range(3))
        assert (x + y) * (x - y) == x * x - y * y
        assert (x + z) ** 3 == parse_form("x^3 + 3*x^2*z + 3*x*z^2 + z^3", 3)
        f = parse_form("x*y + 2", 3)
        assert (f - f).is_zero

    def test_arity_mismatch(self):
        with pytest.raises(ArityMismatchError):
            Form.variable(2, 0) + Form.variable(3, 0)

    def test_degree_and_homogeneity(self):
        assert Form.zero(2).degree == -1
        assert parse_form("x^2 + y", 2).degree == 2
        assert not parse_form("x^2 + y", 2).is_homogeneous
        assert parse_form("x^2 + x*y", 2).is_homogeneous

    @given(forms(), forms(), forms())
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
        assert a - a == Form.zero(3)

    @given(forms(max_degree=2), st.integers(0, 4))
    def test_power(self, a, k):
        expected = Form.constant(3, 1)
        for _ in range(k):
            expected = expected * a
        assert a ** k == expected


class TestCalculus:
    def test_third_partial(self):
        f = parse_form("x*y*z*(x+y+z)", 3)
        assert derivative(f, (0, 1, 2)) == parse_form("2*x + 2*y + 2*z", 3)

    def test_constant(self):
        assert derivative(Form.constant(3, 7), (1,)).is_zero

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            derivative(Form.variable(2, 0), (2,))

    @given(forms(max_degree=4), st.integers(0, 2), st.integers(0, 2))
    def test_partials_commute(self, f, i, j):
        assert derivative(derivative(f, (i,)), (j,)) == derivative(derivative(f, (j,)), (i,))

    @settings(max_examples=30)
    @given(st.integers(2, 8), st.data())
    def test_euler_identity(self, d, data):
        f = data.draw(forms(homogeneous=d))
        x = [Form.variable(3, i) for i in range(3)]
        euler = sum((x[i] * derivative(f, (i,)) for i in range(3)), Form.zero(3))
        assert euler - f * d == Form.zero(3)


class TestEvaluate:
    def test_values(self):
        assert evaluate(parse_form("x*y*z*(x+y+z)", 3), (1, 1, 1)) == 3
        assert evaluate(parse_form("(x0^2+x1^2-x2^2-x3^2)*x3", 4), (0, 0, 2, -1)) == 5
        assert evaluate(parse_form("x^3 + y*z^2", 3), (0, 0, 0)) == 0

    def test_float(self):
        v = evaluate(parse_form("x^2 - y", 2), (0.5, 0.25))
        assert isinstance(v, float) and v == 0.0

    def test_length_mismatch(self):
        with pytest.raises(ArityMismatchError):
            evaluate(Form.variable(3, 0), (1, 2))

    @given(forms(homogeneous=4), coeffs, st.tuples(coeffs, coeffs, coeffs))
    def test_homogeneity(self, f, lam, p):
        assert evaluate(f, tuple(lam * c for c in p)) == lam ** 4 * evaluate(f, p)


class TestSubstitution:
    def test_swap(self):
        f = parse_form("x^2 - y^2", 2)
        assert linear_substitute(f, [[0, 1], [1, 0]]) == parse_form("y^2 - x^2", 2)

    def test_identity(self):
        f = parse_form("x^3 + 2*x*y*z", 3)
        assert linear_substitute(f, RationalMatrix.identity(3)) == f

    def test_closure_family_shape(self):
        c, b = Fraction(2), Fraction(5)
        a = [[1, 0, 0], [0, 1, 0], [1, 0, c * b / 3]]
        assert linear_substitute(parse_form("z^3", 3), a) == Form(3, {(1, 0, 0): 1, (0, 0, 1): c * b / 3}) ** 3

    def test_dimension_mismatch(self):
        with pytest.raises(ArityMismatchError):
            linear_substitute(Form.variable(3, 0), [[1, 0], [0, 1]])

    @settings(max_examples=40)
    @given(forms(), forms(), matrices())
    def test_respects_products(self, f, g, a):
        assert linear_substitute(f * g, a) == linear_substitute(f, a) * linear_substitute(g, a)

    @settings(max_examples=30)
    @given(forms(), matrices(), matrices())
    def test_composition(self, f, a, b):
        assert linear_substitute(linear_substitute(f, a), b) == linear_substitute(f, a @ b)


class TestEpsForm:
    @given(forms(), forms(), forms(), forms())
    def test_truncated_product(self, a, b, c, d):
        prod = EpsForm(a, b) * EpsForm(c, d)
        assert prod.base == a * c
        assert prod.eps_part == a * d + b * c

    @given(forms(), forms())
    def test_pure_eps_squares_to_zero(self, b, d):
        z = Form.zero(3)
        assert (EpsForm(z, b) * EpsForm(z, d)).eps_part.is_zero

    def test_derivative_and_scalars(self):
        e = EpsForm(parse_form("x^3", 3), parse_form("y^3", 3))
        de = e.derivative((1,))
        assert de.base.is_zero and de.eps_part == parse_form("3*y^2", 3)
        assert (e * 2).base == parse_form("2*x^3", 3)
        assert (3 - e).eps_part == parse_form("-y^3", 3)

    def test_arity_mismatch(self):
        with pytest.raises(ArityMismatchError):
            EpsForm(Form.zero(2), Form.zero(3))
