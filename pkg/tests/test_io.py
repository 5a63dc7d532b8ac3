"""String forms and JSON file formats: round trips and error reporting."""

import json
from fractions import Fraction

import pytest

from curvlab.exact import MultiPoly
from curvlab.io import (
    FormatError,
    dump_metric,
    dump_model,
    load_metric,
    load_model,
    parse_poly,
    poly_to_str,
    rat_to_str,
    str_to_rat,
)
from curvlab.metrics import metric_g_3s, metric_g_f
from curvlab.modelspace import model_V3s, models_equal


def test_rational_string_round_trip():
    for x in (Fraction(0), Fraction(5), Fraction(-7, 3), Fraction(22, 4)):
        assert str_to_rat(rat_to_str(x)) == x
    assert rat_to_str(Fraction(3)) == "3"
    assert rat_to_str(Fraction(-1, 2)) == "-1/2"
    assert str_to_rat(" 3 / 6 ") == Fraction(1, 2)
    for bad in ("", "1/0", "x", "1.5", "1//2"):
        with pytest.raises(FormatError):
            str_to_rat(bad)


def test_parse_poly_basics():
    xs = ("x1", "x2")
    p = parse_poly("x1*x1 + x2^2 - 1/2*x1*x2 + 3", xs)
    assert p.eval([Fraction(2), Fraction(1)]) == 4 + 1 - 1 + 3
    assert parse_poly("x1**3", xs) == MultiPoly.var("x1", xs) ** 3
    assert parse_poly("-x1", xs) == -MultiPoly.var("x1", xs)
    assert parse_poly("0", xs).is_zero()


def test_parse_poly_errors():
    xs = ("x1", "x2")
    for bad in ("x3", "x1 +", "* x1", "x1 x2", "x1^(2)", "x1^1/2", "x1 & x2"):
        with pytest.raises(FormatError):
            parse_poly(bad, xs)


def test_poly_string_round_trip():
    xs = ("u1", "u2", "t1")
    p = parse_poly("-2*u1*t1 + 1/2*u2^3 - u1 + 4", xs)
    assert parse_poly(poly_to_str(p), xs) == p
    assert poly_to_str(MultiPoly.constant(0, xs)) == "0"


def test_model_round_trip():
    for s in (2, 3):
        m = model_V3s(s)
        text = dump_model(m)
        m2 = load_model(text)
        assert models_equal(m, m2, compare_aux=True)


def test_model_load_symmetry_closure_and_conflicts():
    doc = {
        "dim": 4,
        "metric": {"1,1": "1", "2,2": "1", "3,3": "1", "4,4": "1"},
        "curvature": {"1,2,2,1": "3"},
    }
    m = load_model(doc)
    assert m.curv[0][1][1][0] == 3
    assert m.curv[1][0][1][0] == -3
    assert m.curv[1][0][0][1] == 3  # pair-swapped image installed

    doc_bad = dict(doc)
    doc_bad["curvature"] = {"1,2,2,1": "3", "2,1,2,1": "3"}
    with pytest.raises(FormatError):
        load_model(doc_bad)
    with pytest.raises(FormatError):
        load_model({"dim": 2, "metric": {"1,3": "1"}})
    with pytest.raises(FormatError):
        load_model({"dim": 2, "metric": {"1": "1"}})
    with pytest.raises(FormatError):
        load_model("{not json")


def test_metric_round_trip():
    g = metric_g_3s(2)
    g2 = load_metric(dump_metric(g))
    assert g2.coords == g.coords
    assert g2.components == g.components
    f = parse_poly("x1^2 + x2^2", ("x1", "x2"))
    gf = metric_g_f(2, f)
    gf2 = load_metric(dump_metric(gf))
    assert gf2.components == gf.components


def test_metric_file_loading(tmp_path):
    g = metric_g_3s(2)
    path = tmp_path / "metric.json"
    path.write_text(dump_metric(g))
    g2 = load_metric(str(path))
    assert g2.components == g.components
    doc = json.loads(dump_metric(g))
    assert load_metric(doc).components == g.components
