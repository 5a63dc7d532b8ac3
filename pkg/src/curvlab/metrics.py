"""Coordinate metrics with polynomial components.

Curvature is computed pointwise from exact 2-jets (values of g, dg, ddg at
a rational point) rather than as symbolic tensor fields: the metric
inverse is a rational function, but at a point everything stays in exact
rational arithmetic.  The sign convention is R(X, Y) = [nabla_X, nabla_Y]
on coordinate fields with R(X, Y, Z, W) = g(R(X, Y)Z, W); the three-block
metric family is the normative test vector for it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exact import Matrix, MultiPoly, _rat, mat_det
from .modelspace import ModelSpace, STooSmallError

__all__ = [
    "PolynomialMetric",
    "DegenerateAtPointError",
    "BadVariablesError",
    "metric_jets",
    "christoffel",
    "curvature_at",
    "metric_g_f",
    "metric_g_3s",
    "metric_g_F",
]


class DegenerateAtPointError(ValueError):
    """The evaluated metric is singular at the queried point."""


class BadVariablesError(ValueError):
    """A defining polynomial uses variables outside the allowed set."""


class PolynomialMetric:
    """Symmetric matrix of multivariate polynomials over named coordinates."""

    __slots__ = ("dim", "coords", "components", "_d1", "_d2")

    def __init__(self, coords: Sequence[str], components):
        coords = tuple(coords)
        dim = len(coords)
        comps = []
        for i in range(dim):
            row = []
            for j in range(dim):
                p = components[i][j]
                if p.variables != coords:
                    p = p.lift(coords)
                row.append(p)
            comps.append(tuple(row))
        comps = tuple(comps)
        for i in range(dim):
            for j in range(i):
                if comps[i][j] != comps[j][i]:
                    raise ValueError(f"components not symmetric at ({i},{j})")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "_d1", None)
        object.__setattr__(self, "_d2", None)

    def __setattr__(self, name, value):
        raise AttributeError("PolynomialMetric is immutable")

    def _first_partials(self):
        # _d1[k][i][j] = d g_ij / d coord_k, computed once per metric
        if self._d1 is None:
            d1 = tuple(
                tuple(tuple(self.components[i][j].diff(ck) for j in range(self.dim)) for i in range(self.dim))
                for ck in self.coords
            )
            object.__setattr__(self, "_d1", d1)
        return self._d1

    def _second_partials(self):
        # _d2[l][k][i][j] = d^2 g_ij / d coord_l d coord_k
        if self._d2 is None:
            d1 = self._first_partials()
            d2 = tuple(
                tuple(
                    tuple(tuple(d1[k][i][j].diff(cl) for j in range(self.dim)) for i in range(self.dim))
                    for k in range(self.dim)
                )
                for cl in self.coords
            )
            object.__setattr__(self, "_d2", d2)
        return self._d2


def metric_jets(g: PolynomialMetric, point: Sequence):
    """Exact (g, dg, ddg) at a rational point.

    Returns (g0: Matrix, g1, g2) where g1[k][i][j] = d_k g_ij and
    g2[l][k][i][j] = d_l d_k g_ij.  Raises DegenerateAtPointError when
    g0 is singular.
    """
    point = [_rat(x) for x in point]
    if len(point) != g.dim:
        raise ValueError("point length must equal dimension")
    n = g.dim
    g0 = Matrix([[g.components[i][j].eval(point) for j in range(n)] for i in range(n)])
    if mat_det(g0) == 0:
        raise DegenerateAtPointError(f"metric degenerate at {point}")
    d1 = g._first_partials()
    d2 = g._second_partials()
    g1 = [
        [[d1[k][i][j].eval(point) for j in range(n)] for i in range(n)]
        for k in range(n)
    ]
    g2 = [
        [
            [[d2[l][k][i][j].eval(point) for j in range(n)] for i in range(n)]
            for k in range(n)
        ]
        for l in range(n)
    ]
    return g0, g1, g2


def christoffel(g: PolynomialMetric, point: Sequence):
    """Christoffel symbols of the first and second kind at a point.

    first[i][j][k] = (d_i g_jk + d_j g_ik - d_k g_ij) / 2
    second[m][i][j] = sum_k ginv[m][k] * first[i][j][k]
    """
    g0, g1, _ = metric_jets(g, point)
    n = g.dim
    half = Fraction(1, 2)
    first = [
        [
            [half * (g1[i][j][k] + g1[j][i][k] - g1[k][i][j]) for k in range(n)]
            for j in range(n)
        ]
        for i in range(n)
    ]
    ginv = g0.inverse()
    second = [
        [
            [
                sum((ginv[m][k] * first[i][j][k] for k in range(n) if ginv[m][k] and first[i][j][k]), Fraction(0))
                for j in range(n)
            ]
            for i in range(n)
        ]
        for m in range(n)
    ]
    return first, second


def curvature_at(g: PolynomialMetric, point: Sequence) -> ModelSpace:
    """Pointwise curvature model from the exact 2-jet of the metric.

    R_ijkl = (dd_ik g_jl + dd_jl g_ik - dd_il g_jk - dd_jk g_il) / 2
             + sum_m (Gamma^m_ik Gamma_jlm - Gamma^m_il Gamma_jkm)
    """
    g0, _, g2 = metric_jets(g, point)
    first, second = christoffel(g, point)
    n = g.dim
    half = Fraction(1, 2)
    curv = [[[[Fraction(0)] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                for l in range(n):
                    v = half * (
                        g2[i][k][j][l] + g2[j][l][i][k] - g2[i][l][j][k] - g2[j][k][i][l]
                    )
                    for m in range(n):
                        a = second[m][i][k]
                        if a:
                            b = first[j][l][m]
                            if b:
                                v += a * b
                        a = second[m][i][l]
                        if a:
                            b = first[j][k][m]
                            if b:
                                v -= a * b
                    curv[i][j][k][l] = v
                    curv[j][i][k][l] = -v
    return ModelSpace(g0, curv)


def metric_g_f(p_dim: int, f: MultiPoly) -> PolynomialMetric:
    """Neutral-signature graph-hypersurface metric from a potential f(x).

    Coordinates (x_1..x_p, y_1..y_p); g(dx_i, dx_j) = d_i f * d_j f,
    g(dx_i, dy_j) = delta_ij, g(dy, dy) = 0.
    """
    if p_dim < 2:
        raise ValueError("need p_dim >= 2")
    xs = tuple(f"x{i + 1}" for i in range(p_dim))
    ys = tuple(f"y{i + 1}" for i in range(p_dim))
    coords = xs + ys
    if any(v not in xs for v in f.variables if any(e[f.variables.index(v)] for e in f.terms)):
        raise BadVariablesError("f must use only x-variables")
    f = _restrict_then_lift(f, xs, coords)
    zero = MultiPoly.constant(0, coords)
    one = MultiPoly.constant(1, coords)
    partials = [f.diff(x) for x in xs]
    n = 2 * p_dim
    comps = [[zero] * n for _ in range(n)]
    for i in range(p_dim):
        for j in range(p_dim):
            comps[i][j] = partials[i] * partials[j]
        comps[i][p_dim + i] = comps[p_dim + i][i] = one
    return PolynomialMetric(coords, comps)


def metric_g_3s(s: int) -> PolynomialMetric:
    """The signature-(2s, s) three-block metric on coordinates (u, t, v).

    Nonzero components: g(du_i, du_i) = -2 * sum_k u_k t_k,
    g(du_i, dv_i) = 1, g(dt_i, dt_i) = -1.
    """
    return metric_g_F(s, None)


def metric_g_F(s: int, fs: Sequence[MultiPoly] | None) -> PolynomialMetric:
    """Generalized three-block metric with univariate potentials f_i(u_i).

    g(du_i, du_i) = -2*F(u) - 2*sum_k u_k t_k with F = f_1 + ... + f_s;
    all f_i = 0 recovers the base three-block metric.
    """
    if s < 2:
        raise STooSmallError("need s >= 2")
    us = tuple(f"u{i + 1}" for i in range(s))
    ts = tuple(f"t{i + 1}" for i in range(s))
    vs = tuple(f"v{i + 1}" for i in range(s))
    coords = us + ts + vs
    zero = MultiPoly.constant(0, coords)
    one = MultiPoly.constant(1, coords)
    ut_sum = zero
    for i in range(s):
        ut_sum = ut_sum + MultiPoly.var(us[i], coords) * MultiPoly.var(ts[i], coords)
    F = zero
    if fs is not None:
        if len(fs) != s:
            raise BadVariablesError("need one potential per block")
        for i, fi in enumerate(fs):
            if any(v != us[i] for v in fi.variables if any(e[fi.variables.index(v)] for e in fi.terms)):
                raise BadVariablesError(f"f_{i + 1} must be univariate in {us[i]}")
            F = F + _restrict_then_lift(fi, (us[i],), coords)
    uu = (F * (-2)) - ut_sum - ut_sum
    n = 3 * s
    comps = [[zero] * n for _ in range(n)]
    for i in range(s):
        comps[i][i] = uu
        comps[i][2 * s + i] = comps[2 * s + i][i] = one
        comps[s + i][s + i] = -one
    return PolynomialMetric(coords, comps)


def _restrict_then_lift(p: MultiPoly, allowed: tuple, coords: tuple) -> MultiPoly:
    """Re-express p over coords, dropping variables it does not really use."""
    used = [
        v
        for idx, v in enumerate(p.variables)
        if any(expo[idx] for expo in p.terms)
    ]
    keep = tuple(v for v in p.variables if v in used or v in allowed)
    terms = {}
    for expo, coeff in p.terms.items():
        new = tuple(e for v, e in zip(p.variables, expo) if v in keep)
        terms[new] = coeff
    return MultiPoly(keep, terms).lift(coords)
