import csv
import io
import json

import pytest

from hessform.cones import classify_point, cone_comparison, curvature_scan, sample_cone
from hessform.poly import parse_form

QUARTIC = parse_form("x*y*z*(x+y+z)", 3)
CUBIC_R4 = parse_form("(x0^2+x1^2-x2^2-x3^2)*x3", 4)


def test_classify():
    c = classify_point(QUARTIC, (1, 1, 1))
    assert c.f_value == 3 and tuple(c.hessian_signature) == (1, 2, 0)
    assert c.in_positive_cone and c.in_index_cone
    assert not classify_point(QUARTIC, (1, 1, -1)).in_positive_cone
    r4 = classify_point(CUBIC_R4, (0, 0, 2, -1))
    assert tuple(r4.hessian_signature) == (1, 3, 0) and r4.in_index_cone


def test_classify_errors():
    with pytest.raises(ValueError):
        classify_point(QUARTIC, (0, 0, 0))
    with pytest.raises(ValueError):
        classify_point(QUARTIC, (1, 1))
    with pytest.raises(ValueError):
        classify_point(parse_form("x + y", 2), (1, 1))


def test_sampling_is_seeded():
    a = sample_cone(QUARTIC, "index", 10, seed=7)
    b = sample_cone(QUARTIC, "index", 10, seed=7)
    assert a.points == b.points and len(a.points) == 10
    assert all(classify_point(QUARTIC, p).in_index_cone for p in a.points)
    assert 0 < a.acceptance_rate <= 1


def test_sampling_respects_box():
    s = sample_cone(QUARTIC, "positive", 20, seed=1, box=(0, 1))
    assert all(0 <= c <= 1 for p in s.points for c in p)


def test_empty_cone():
    s = sample_cone(parse_form("-(x^4+y^4+z^4)", 3), "positive", 5, seed=0, max_draws=50)
    assert s.points == [] and s.draws == 50 and s.acceptance_rate == 0


def test_sampling_errors():
    with pytest.raises(ValueError):
        sample_cone(QUARTIC, "index", 0)
    with pytest.raises(ValueError):
        sample_cone(QUARTIC, "negative", 5)


def test_comparison():
    pts = sample_cone(QUARTIC, "positive", 50, seed=3).points
    assert cone_comparison(QUARTIC, pts).equal
    cmp = cone_comparison(CUBIC_R4, [(2, 0, 0, 1), (0, 0, 2, -1), (1, 1, 1, -1)])
    assert cmp.discrepancies == [(2, 0, 0, 1)] and cmp.checked == 2


def test_scan_and_serialization():
    pts = sample_cone(QUARTIC, "index", 8, seed=2).points
    table = curvature_scan(QUARTIC, pts)
    assert len(table.rows) == 8 and table.k_min > 0
    assert table.sign_counts() == {"positive": 8, "zero": 0, "negative": 0, "mixed": 0}
    rows = list(csv.reader(io.StringIO(table.to_csv())))
    assert rows[0] == ["point", "f", "sig_pos", "sig_neg", "sig_zero", "K_M_exact", "K_M_float"]
    assert len(rows) == 9 and rows[1][2:5] == ["1", "2", "0"]
    data = json.loads(table.to_json())
    assert data["mode"] == "K_M" and len(data["rows"]) == 8


def test_full_tensor_scan():
    pts = sample_cone(CUBIC_R4, "index", 3, seed=0).points
    table = curvature_scan(CUBIC_R4, pts, "full-tensor")
    assert len(table.rows) + len(table.skipped) == 3
    assert all(r.k_min <= r.k_max for r in table.rows)


def test_scan_mode_errors():
    with pytest.raises(ValueError):
        curvature_scan(CUBIC_R4, [(0, 0, 2, -1)], "K_M")
    with pytest.raises(ValueError):
        curvature_scan(QUARTIC, [], "other")
