"""Polynomial metrics and pointwise curvature.

The central oracle: for graph metrics, the 2-jet computation must agree
entry-for-entry with the independent Gauss-equation product model built
from the exact gradient and Hessian of the potential.
"""

import random
from fractions import Fraction

import pytest

from curvlab.exact import Matrix, MultiPoly
from curvlab.metrics import (
    BadVariablesError,
    DegenerateAtPointError,
    christoffel,
    curvature_at,
    metric_g_3s,
    metric_g_F,
    metric_g_f,
    metric_jets,
)
from curvlab.modelspace import hypersurface_model, models_equal, validate_model
from curvlab.reproduce import expected_three_block_curvature
from curvlab.verify import sample_points


def rand_potential(rng, xs, max_terms=4):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        expo = tuple(rng.randint(0, 3) for _ in xs)
        terms[expo] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return MultiPoly(xs, terms)


def test_metric_jets_values_and_degeneracy():
    g = metric_g_3s(2)
    origin = [Fraction(0)] * 6
    g0, g1, g2 = metric_jets(g, origin)
    assert g0 == Matrix(
        [
            [0, 0, 0, 0, 1, 0],
            [0, 0, 0, 0, 0, 1],
            [0, 0, -1, 0, 0, 0],
            [0, 0, 0, -1, 0, 0],
            [1, 0, 0, 0, 0, 0],
            [0, 1, 0, 0, 0, 0],
        ]
    )
    # d g_11 / d t1 = -2 u1 = 0 at the origin, second partial is -2
    assert g1[2][0][0] == 0
    assert g2[0][2][0][0] == -2
    # a metric that degenerates along a coordinate axis
    from curvlab.metrics import PolynomialMetric

    a = MultiPoly.var("a", ("a", "b"))
    one = MultiPoly.constant(1, ("a", "b"))
    zero = MultiPoly.constant(0, ("a", "b"))
    bad = PolynomialMetric(("a", "b"), [[a, zero], [zero, one]])
    with pytest.raises(DegenerateAtPointError):
        metric_jets(bad, [0, 1])
    g0, _, _ = metric_jets(bad, [2, 1])
    assert g0 == Matrix([[2, 0], [0, 1]])


def test_christoffel_symmetry():
    g = metric_g_3s(2)
    rng = random.Random(31)
    for _ in range(5):
        p = [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(6)]
        first, second = christoffel(g, p)
        for i in range(6):
            for j in range(6):
                for k in range(6):
                    assert first[i][j][k] == first[j][i][k]
                    assert second[k][i][j] == second[k][j][i]


def test_three_block_curvature_closed_form():
    # convention lock: the two stated entry families and nothing else
    for s in (2, 3):
        g = metric_g_3s(s)
        for p in sample_points(g, 5, 310 + s):
            model = curvature_at(g, p)
            assert validate_model(model) is None
            expected = expected_three_block_curvature(s, p)
            assert model.curv == expected.curv


def test_three_block_defining_entries():
    g = metric_g_3s(2)
    p = [Fraction(1), Fraction(2), Fraction(0), Fraction(1), Fraction(0), Fraction(0)]
    m = curvature_at(g, p)
    u2 = Fraction(1) + Fraction(4)
    assert m.curv[0][1][1][0] == u2
    assert m.curv[0][1][1][2] == 1  # R(du1, du2, du2, dt1)
    assert m.curv[1][0][0][3] == 1  # R(du2, du1, du1, dt2)
    assert m.curv[0][1][1][4] == 0  # no coupling into the dv block


def test_graph_metric_matches_gauss_product_oracle():
    rng = random.Random(32)
    for trial in range(12):
        p_dim = rng.choice([2, 2, 3])
        xs = tuple(f"x{i + 1}" for i in range(p_dim))
        f = rand_potential(rng, xs)
        g = metric_g_f(p_dim, f)
        pt = sample_points(g, 1, 700 + trial)[0]
        model = curvature_at(g, pt)
        grad = [f.diff(x).eval(pt[:p_dim]) for x in xs]
        hess = Matrix(
            [[f.diff(a).diff(b).eval(pt[:p_dim]) for b in xs] for a in xs]
        )
        oracle = hypersurface_model(hess, grad)
        assert models_equal(model, oracle)


def test_metric_g_F_reduces_and_validates():
    s = 2
    fs = [MultiPoly.var(f"u{i + 1}", (f"u{i + 1}",)) ** 2 for i in range(s)]
    g = metric_g_F(s, fs)
    zero_fs = metric_g_F(s, None)
    assert metric_g_3s(s).components == zero_fs.components
    p = sample_points(g, 1, 33)[0]
    assert validate_model(curvature_at(g, p)) is None
    with pytest.raises(BadVariablesError):
        metric_g_F(2, [MultiPoly.var("u2", ("u2",)), MultiPoly.var("u2", ("u2",))])


def test_metric_g_f_rejects_bad_variables():
    xs = ("x1", "x2")
    with pytest.raises(BadVariablesError):
        f = MultiPoly.var("y1", ("y1",))
        metric_g_f(2, f)
