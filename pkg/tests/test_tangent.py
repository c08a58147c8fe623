import random
from fractions import Fraction

import pytest

from hessform.poly import Form, derivative, parse_form
from hessform.sampling import random_form
from hessform import tangent as tg

P = parse_form


class TestTOperator:
    def test_annihilates_low_degree_and_alpha(self):
        rng = random.Random(0)
        for d in (4, 5, 6, 7):
            alpha = random_form(rng, 2, d)
            for h in (Form.constant(2, 1), P("x", 2), P("y", 2), derivative(alpha, (0,)), derivative(alpha, (1,)), alpha):
                assert tg.t_operator(alpha, h).is_zero

    def test_witness_on_y_cubed(self):
        t = tg.t_operator(tg.witness_alpha(4), P("y^3", 2))
        assert t == P("y^3", 2) * (-16 * 9 * 4 * 6)
        assert tg.u_operator(4, P("y^3", 2)) == P("6*y^3", 2)

    def test_linear_in_h(self):
        rng = random.Random(1)
        alpha = random_form(rng, 2, 5)
        h1, h2 = random_form(rng, 2, 4), random_form(rng, 2, 4)
        assert tg.t_operator(alpha, h1 + h2 * 3) == tg.t_operator(alpha, h1) + tg.t_operator(alpha, h2) * 3

    def test_arity_checks(self):
        with pytest.raises(ValueError):
            tg.t_operator(P("x^4", 3), P("x", 2))
        with pytest.raises(ValueError):
            tg.t_operator(P("x^4", 2), P("x", 3))


class TestVariation:
    def test_example(self):
        res = tg.first_variation_clebsch(tg.witness_alpha(4), P("y^3*z", 3))
        assert res.variation == P("-82944*y^3*z", 3)
        assert res.routes_agree

    def test_trivial_directions(self):
        alpha = P("x^4 + 2*x*y^3", 2)
        assert tg.first_variation_clebsch(alpha, P("z^4", 3)).variation.is_zero
        assert tg.first_variation_clebsch(alpha, alpha.extend(3)).variation.is_zero

    def test_routes_agree_random(self):
        rng = random.Random(2)
        for d in (4, 5):
            for _ in range(3):
                alpha = random_form(rng, 2, d)
                g = random_form(rng, 3, d, density=0.5)
                res = tg.first_variation_clebsch(alpha, g)
                assert res.variation.is_zero or res.variation.degree == 4 * (d - 3)

    def test_z_grading(self):
        rng = random.Random(3)
        alpha = random_form(rng, 2, 5)
        h = random_form(rng, 2, 3)
        g = h.extend(3) * Form.variable(3, 2) ** 2
        expected = tg.t_operator(alpha, h).extend(3) * Form.variable(3, 2) * 2
        assert tg.variation_bracket(alpha, g) == expected

    def test_input_checks(self):
        with pytest.raises(ValueError):
            tg.first_variation_clebsch(P("x^3", 2), P("z^3", 3))
        with pytest.raises(ValueError):
            tg.first_variation_clebsch(P("x^4", 2), P("z^5", 3))


class TestKernels:
    def test_degree_two_is_trivial(self):
        assert tg.kernel_of_t(tg.witness_alpha(5), 2).dimension == 0

    def test_d4_degree3(self):
        kb = tg.kernel_of_t(tg.witness_alpha(4), 3)
        assert set(kb.basis) == {P("x^2*y", 2), P("x*y^2", 2)}

    @pytest.mark.parametrize("d", [4, 5, 6, 7])
    def test_top_degree(self, d):
        (h,) = tg.kernel_of_t(tg.witness_alpha(d), d).basis
        assert h == Form(2, {(d - 2, 2): 1})

    def test_low_degrees(self):
        alpha = tg.witness_alpha(6)
        assert tg.kernel_of_t(alpha, 0).dimension == 1
        assert tg.kernel_of_t(alpha, 1).dimension == 2

    def test_negative_degree(self):
        with pytest.raises(ValueError):
            tg.kernel_of_t(tg.witness_alpha(4), -1)


class TestSpectrum:
    def test_d4_values(self):
        s = tg.monomial_spectrum(4)
        assert s.eigenvalues[(2, 1)] == s.eigenvalues[(1, 2)] == s.eigenvalues[(2, 2)] == 0
        assert s.eigenvalues[(0, 3)] == 6
        assert s.discriminants[3] == -8

    def test_d5_degree_two(self):
        s = tg.monomial_spectrum(5)
        assert [s.eigenvalues[k] for k in ((2, 0), (1, 1), (0, 2))] == [2, -2, 6]

    @pytest.mark.parametrize("d", range(4, 10))
    def test_zero_set(self, d):
        s = tg.monomial_spectrum(d)
        assert s.passed
        assert s.to_dict()["zero_set_matches"]

    def test_rejects_small_degree(self):
        with pytest.raises(ValueError):
            tg.monomial_spectrum(3)

    def test_spectrum_matches_u(self):
        d = 6
        for i, j in ((3, 1), (2, 3), (0, 5)):
            m = Form(2, {(i, j): 1})
            assert tg.u_operator(d, m) == m * tg.spectrum_value(d, i, j)


class TestZariski:
    def test_witness_d4(self):
        rep = tg.zariski_tangent_compare(tg.witness_alpha(4), verify_routes=True)
        assert rep.explicit_rank == rep.kernel_dimension == 10 and rep.equal
        assert rep.strata == {0: 5, 1: 2, 2: 0, 3: 2, 4: 1}

    def test_witness_d5(self):
        rep = tg.zariski_tangent_compare(tg.witness_alpha(5))
        assert rep.equal and rep.kernel_dimension == 11

    def test_degenerate_alpha(self):
        rep = tg.zariski_tangent_compare(P("x^4", 2))
        assert rep.degenerate and not rep.equal
        assert rep.to_dict()["degenerate"]


class TestClosure:
    def test_cubic_example(self):
        rep = tg.closure_limit_expand(Form.zero(2), 3, d=3)
        assert rep.coefficients == [P("3*x^2*z", 3), P("3*x*z^2", 3), P("z^3", 3)]
        assert rep.passed

    def test_b_zero(self):
        alpha = P("x^3*y - y^4", 2)
        rep = tg.closure_limit_expand(alpha, 0)
        assert rep.coefficients[0] == alpha.extend(3)
        assert all(c.is_zero for c in rep.coefficients[1:])

    def test_quartic_example(self):
        rep = tg.closure_limit_expand(P("y^4", 2), 4)
        assert rep.coefficients[0] == P("y^4 + 4*x^3*z", 3) and rep.passed

    def test_rational_b(self):
        rep = tg.closure_limit_expand(P("x^5 + y^5", 2), Fraction(-2, 3))
        assert rep.passed

    def test_zero_alpha_needs_degree(self):
        with pytest.raises(ValueError):
            tg.closure_limit_expand(Form.zero(2), 1)
        with pytest.raises(ValueError):
            tg.closure_limit_expand(P("x^3", 2), 1, d=4)
