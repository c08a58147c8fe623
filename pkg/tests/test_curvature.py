import random
from fractions import Fraction

import pytest

from hessform.curvature import (
    DegenerateMetricError,
    IllConditionedError,
    NotTangentError,
    PlaneSpec,
    christoffel_first,
    coordinate_plane_curvatures_on_M,
    curvature_tensor_at,
    fd_curvature_oracle,
    flatness_certificate,
    log_metric_product_check,
    metric_at,
    sectional_curvature,
    sectional_curvature_on_M,
    tangent_basis,
    tangent_gram,
    theorem_curv_check,
    theorem_curv_value,
    warp_scaling_check,
)
from hessform.covariants import hessian_det
from hessform.poly import evaluate, parse_form
from hessform.sampling import random_form, random_point

P = parse_form
QUARTIC = P("x*y*z*(x+y+z)", 3)
CUBIC_G = P("(x^2-y^2-z^2)*z", 3)


def test_metric_at_111():
    m = metric_at(QUARTIC, (1, 1, 1))
    assert m.g.rows[0] == (Fraction(-2, 12), Fraction(-5, 12), Fraction(-5, 12))
    assert tuple(m.signature) == (2, 1, 0)  # negated Hessian
    assert m.nondegenerate


def test_christoffel_single_variable():
    assert christoffel_first(P("x^3", 1), (Fraction(7),)) == [[[Fraction(-1, 2)]]]


def test_christoffel_symmetric():
    gam = christoffel_first(QUARTIC, (1, 2, 3))
    assert gam[0][1][2] == gam[2][0][1] == gam[1][2][0]


def test_tensor_symmetries_random():
    rng = random.Random(8)
    for n, d in ((3, 3), (3, 4), (4, 3)):
        f = random_form(rng, n, d)
        t = curvature_tensor_at(f, random_point(rng, n, (-3, 3)))
        assert t.symmetry_violations() == []


def test_degenerate_metric():
    with pytest.raises(DegenerateMetricError):
        curvature_tensor_at(P("x^3 + y^3", 3), (1, 1, 1))


def test_quartic_curvature_values():
    assert sectional_curvature_on_M(QUARTIC, (1, 1, 1)) == 1
    assert theorem_curv_value(QUARTIC, (1, 1, 1)) == 1
    u, v = tangent_basis(QUARTIC, (1, 1, 1))
    assert sectional_curvature(QUARTIC, (1, 1, 1), (u, v)) == Fraction(5, 3)


def test_cubic_g_at_0_2_minus1():
    assert sectional_curvature_on_M(CUBIC_G, (0, 2, -1)) == 54
    assert theorem_curv_value(CUBIC_G, (0, 2, -1)) == 54


def test_quadratic_constant_curvature():
    f = P("x^2 - y^2 - z^2", 3)
    for p in [(3, 1, 1), (2, Fraction(1, 2), -1), (5, 3, 2)]:
        assert sectional_curvature_on_M(f, p) == -1


def test_theorem_curv_check_random():
    rng = random.Random(21)
    for d in (3, 4, 5):
        f = random_form(rng, 3, d, bound=4)
        h = hessian_det(f)
        pts = []
        while len(pts) < 4:
            p = random_point(rng, 3, (-2, 2))
            if evaluate(f, p) != 0 and evaluate(h, p) != 0:
                pts.append(p)
        rep = theorem_curv_check(f, pts)
        assert rep.passed


def test_not_tangent():
    with pytest.raises(NotTangentError):
        sectional_curvature_on_M(QUARTIC, (1, 1, 1), PlaneSpec((1, 0, 0), (0, 1, 0)))


def test_on_m_needs_plane_beyond_ternary():
    with pytest.raises(ValueError):
        sectional_curvature_on_M(P("(x0^2+x1^2-x2^2-x3^2)*x3", 4), (0, 0, 2, -1))


def test_flatness():
    assert flatness_certificate(P("x^5 - 3*x^2*y^3 + y^5", 2), 5, seed=1).flat
    assert flatness_certificate(P("x^4 - y^4 - z^4", 3), 5, seed=1).flat
    verdict = flatness_certificate(QUARTIC, 5, seed=1, points=[(1, 1, 1)])
    assert not verdict.flat and verdict.witness == (1, 1, 1)
    assert "nonzero" in verdict.note


def test_flatness_gives_up_on_degenerate_forms():
    with pytest.raises(DegenerateMetricError):
        flatness_certificate(P("x^3", 3), 3, seed=0, max_tries=5)


def test_warp_scaling():
    assert warp_scaling_check(QUARTIC, (1, 1, 1)).passed
    rep = warp_scaling_check(CUBIC_G, (Fraction(3, 2), 2, Fraction(-1, 2)))
    assert rep.f_value == 1 and rep.passed


def test_fd_oracle():
    assert fd_curvature_oracle(QUARTIC, (1.0, 1.0, 1.0)) < 1e-5
    assert fd_curvature_oracle(P("x^2 - y^2 - z^2", 3), (2.0, 1.0, 0.5)) < 1e-8
    with pytest.raises(IllConditionedError):
        fd_curvature_oracle(P("x^3 + y^3 + z^3", 3), (1.0, 0.0, 1.0))


def test_log_metric():
    rep = log_metric_product_check(QUARTIC, [(1, 1, 1), (1, 2, 3)])
    assert rep.passed and rep.max_deviation < 1e-8
    with pytest.raises(ValueError):
        log_metric_product_check(QUARTIC, [(1, 1, -1)])


def test_tangent_gram_and_planes():
    gram = tangent_gram(QUARTIC, (1, 1, 1))
    assert gram.shape == (2, 2) and gram.det() != 0
    planes = coordinate_plane_curvatures_on_M(P("(x0^2+x1^2-x2^2-x3^2)*x3", 4), (0, 0, 2, -1))
    assert len(planes) == 3
