"""Algebraic model spaces: a vector space with an inner product and an
algebraic curvature tensor.

The curvature is stored as a dense 4-index array with every symmetry image
materialized; ``validate_model`` re-checks the symmetries instead of
trusting constructors, so transcription errors in hand-entered tensors are
caught.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import (
    Matrix,
    NotSymmetricError,
    SingularError,
    _rat,
    mat_det,
    nullspace,
    signature,
)

__all__ = [
    "ModelSpace",
    "SelfAdjointMap",
    "CurvatureViolation",
    "NotSelfAdjointError",
    "STooSmallError",
    "validate_model",
    "curvature_operator",
    "build_R_phi",
    "classify_phi",
    "model_V3s",
    "hypersurface_model",
    "apply_isomorphism",
    "models_equal",
]


class NotSelfAdjointError(ValueError):
    """The supplied operator is not self-adjoint for the given metric."""


class STooSmallError(ValueError):
    """The three-block family needs s >= 2 (the construction uses i != j)."""


@dataclass(frozen=True)
class CurvatureViolation:
    """First failing check found by validate_model."""

    kind: str  # "pair-symmetry" | "antisymmetry" | "bianchi" | "degenerate-metric"
    indices: tuple
    values: tuple


class ModelSpace:
    """Triple (V, g, R): dimension, metric matrix and curvature 4-tensor.

    Immutable; ``curv[a][b][c][d]`` holds R(e_a, e_b, e_c, e_d).  An
    optional positive semi-definite auxiliary bilinear form may be
    attached (used by the three-block family).
    """

    __slots__ = ("dim", "metric", "curv", "aux_form", "_metric_inv", "_nonzeros")

    def __init__(self, metric: Matrix, curv, aux_form: Matrix | None = None):
        if not metric.is_symmetric():
            raise NotSymmetricError("metric must be symmetric")
        dim = metric.rows
        curv = tuple(
            tuple(tuple(tuple(_rat(curv[a][b][c][d]) for d in range(dim)) for c in range(dim)) for b in range(dim))
            for a in range(dim)
        )
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "metric", metric)
        object.__setattr__(self, "curv", curv)
        object.__setattr__(self, "aux_form", aux_form)
        object.__setattr__(self, "_metric_inv", None)
        object.__setattr__(self, "_nonzeros", None)

    def __setattr__(self, name, value):
        raise AttributeError("ModelSpace is immutable")

    @property
    def metric_inverse(self) -> Matrix:
        if self._metric_inv is None:
            object.__setattr__(self, "_metric_inv", self.metric.inverse())
        return self._metric_inv

    @property
    def curv_nonzeros(self) -> tuple:
        """Cached list of (a, b, c, d, value) with value != 0."""
        if self._nonzeros is None:
            nz = tuple(
                (a, b, c, d, v)
                for a, row_a in enumerate(self.curv)
                for b, row_b in enumerate(row_a)
                for c, row_c in enumerate(row_b)
                for d, v in enumerate(row_c)
                if v
            )
            object.__setattr__(self, "_nonzeros", nz)
        return self._nonzeros

    def curv_entry(self, x: Sequence, y: Sequence, z: Sequence, w: Sequence) -> Fraction:
        """R(x, y, z, w) for arbitrary rational vectors."""
        acc = Fraction(0)
        for a, b, c, d, v in self.curv_nonzeros:
            p = x[a] * y[b]
            if p:
                q = z[c] * w[d]
                if q:
                    acc += v * p * q
        return acc


@dataclass(frozen=True)
class SelfAdjointMap:
    """A linear map phi with g(phi x, y) = g(x, phi y), i.e. g*phi symmetric."""

    matrix: Matrix

    @staticmethod
    def check(g: Matrix, phi: Matrix) -> bool:
        return (g * phi).is_symmetric()


def validate_model(m: ModelSpace) -> CurvatureViolation | None:
    """Check metric nondegeneracy and all curvature symmetries.

    Returns None when everything holds, otherwise the first violation
    found (never raises for a bad tensor).
    """
    n_neg, n_zero, n_pos = signature(m.metric)
    if n_zero:
        return CurvatureViolation("degenerate-metric", (), (n_neg, n_zero, n_pos))
    R = m.curv
    n = m.dim
    rng = range(n)
    for a in rng:
        for b in rng:
            for c in rng:
                for d in rng:
                    v = R[a][b][c][d]
                    if R[b][a][c][d] != -v:
                        return CurvatureViolation(
                            "antisymmetry", (b, a, c, d), (R[b][a][c][d], v)
                        )
                    if R[a][b][d][c] != -v:
                        return CurvatureViolation(
                            "antisymmetry", (a, b, d, c), (R[a][b][d][c], v)
                        )
                    if R[c][d][a][b] != v:
                        return CurvatureViolation(
                            "pair-symmetry", (c, d, a, b), (R[c][d][a][b], v)
                        )
                    bianchi = v + R[b][c][a][d] + R[c][a][b][d]
                    if bianchi != 0:
                        return CurvatureViolation("bianchi", (a, b, c, d), (bianchi,))
    return None


def curvature_operator(m: ModelSpace, x: Sequence, y: Sequence) -> Matrix:
    """Matrix of z -> R(x, y)z, with g(R(x, y)z, w) = R(x, y, z, w)."""
    n = m.dim
    x = [_rat(v) for v in x]
    y = [_rat(v) for v in y]
    lowered = [[Fraction(0)] * n for _ in range(n)]  # lowered[c][w]
    for a, b, c, d, v in m.curv_nonzeros:
        p = x[a] * y[b]
        if p:
            lowered[c][d] += v * p
    ginv = m.metric_inverse
    # Op[d][c] = sum_w ginv[d][w] * lowered[c][w]
    return ginv * Matrix(lowered).transpose()


def build_R_phi(g: Matrix, phi: SelfAdjointMap, c) -> ModelSpace:
    """Rank-one style curvature tensor generated by a self-adjoint map.

    R(x, y, z, w) = c * (g(phi y, z) g(phi x, w) - g(phi x, z) g(phi y, w)).
    """
    if not SelfAdjointMap.check(g, phi.matrix):
        raise NotSelfAdjointError("g*phi is not symmetric")
    c = _rat(c)
    A = g * phi.matrix  # symmetric; A[i][j] = g(phi e_j, e_i)
    n = g.rows
    curv = [
        [
            [
                [c * (A[b][cc] * A[a][d] - A[a][cc] * A[b][d]) for d in range(n)]
                for cc in range(n)
            ]
            for b in range(n)
        ]
        for a in range(n)
    ]
    return ModelSpace(g, curv)


def classify_phi(g: Matrix, phi: SelfAdjointMap) -> str:
    """Classify a self-adjoint map as isometry, para-isometry,
    nilpotent-admissible, or other.

    Nilpotent-admissible means phi^2 = 0 with no spacelike vector in the
    kernel, i.e. g restricted to ker(phi) is negative semi-definite.
    """
    p = phi.matrix
    pgp = p.transpose() * g * p
    if pgp == g:
        return "isometry"
    if pgp == -g:
        return "para-isometry"
    if (p * p).is_zero():
        kernel = nullspace(p)
        k = len(kernel)
        if k == 0:
            return "nilpotent-admissible"
        gram = Matrix(
            [
                [
                    sum(
                        (kernel[i][a] * g[a][b] * kernel[j][b] for a in range(g.rows) for b in range(g.rows)),
                        Fraction(0),
                    )
                    for j in range(k)
                ]
                for i in range(k)
            ]
        )
        _, _, n_pos = signature(gram)
        if n_pos == 0:
            return "nilpotent-admissible"
    return "other"


def model_V3s(s: int) -> ModelSpace:
    """Canonical three-block model on basis (U_1..U_s, T_1..T_s, V_1..V_s).

    Nonzero metric entries: g(U_i, V_i) = 1 and g(T_i, T_i) = -1.  Nonzero
    curvature entries: the symmetry images of R(U_i, U_j, U_j, T_i) = 1
    for i != j.  Signature is (2s, 0, s) and the auxiliary form is the
    identity on the U block.
    """
    if s < 2:
        raise STooSmallError("need s >= 2")
    n = 3 * s
    u = lambda i: i
    t = lambda i: s + i
    v = lambda i: 2 * s + i
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(s):
        g[u(i)][v(i)] = g[v(i)][u(i)] = Fraction(1)
        g[t(i)][t(i)] = Fraction(-1)
    curv = _zero4(n)
    for i in range(s):
        for j in range(s):
            if i != j:
                _set_z2(curv, u(i), u(j), u(j), t(i), Fraction(1))
    aux = [[Fraction(0)] * n for _ in range(n)]
    for i in range(s):
        aux[u(i)][u(i)] = Fraction(1)
    return ModelSpace(Matrix(g), curv, aux_form=Matrix(aux))


def hypersurface_model(H: Matrix, grad: Sequence) -> ModelSpace:
    """Pointwise model of the graph-hypersurface metrics.

    Basis order (d/dx_1..d/dx_p, d/dy_1..d/dy_p).  The metric pairs the
    x and y blocks hyperbolically with g(dx_i, dx_j) = grad_i * grad_j,
    and the curvature is the Gauss-equation product of the second
    fundamental form L, whose only nonzero block is L(dx_i, dx_j) = H_ij.
    """
    if not H.is_symmetric():
        raise NotSymmetricError("Hessian must be symmetric")
    p = H.rows
    if len(grad) != p:
        raise ValueError("gradient length mismatch")
    grad = [_rat(v) for v in grad]
    n = 2 * p
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(p):
        for j in range(p):
            g[i][j] = grad[i] * grad[j]
        g[i][p + i] = g[p + i][i] = Fraction(1)
    L = [[Fraction(0)] * n for _ in range(n)]
    for i in range(p):
        for j in range(p):
            L[i][j] = H[i][j]
    curv = [
        [
            [
                [L[a][d] * L[b][c] - L[a][c] * L[b][d] for d in range(n)]
                for c in range(n)
            ]
            for b in range(n)
        ]
        for a in range(n)
    ]
    return ModelSpace(Matrix(g), curv)


def apply_isomorphism(m: ModelSpace, B: Matrix) -> ModelSpace:
    """Pull back the model through a nonsingular linear map.

    metric' = B^T g B and curv' is the four-fold contraction of curv with
    B; the auxiliary form, when present, is pulled back the same way.
    """
    if not B.is_square or B.rows != m.dim:
        raise ValueError("isomorphism must be dim x dim")
    if mat_det(B) == 0:
        raise SingularError("isomorphism matrix is singular")
    n = m.dim
    tensor = [[[[m.curv[a][b][c][d] for d in range(n)] for c in range(n)] for b in range(n)] for a in range(n)]
    for _axis in range(4):
        # contract the leading axis with B and rotate it to the back
        new = [
            [
                [
                    [
                        sum(
                            (B[a][ap] * tensor[a][b][c][d] for a in range(n) if B[a][ap] and tensor[a][b][c][d]),
                            Fraction(0),
                        )
                        for ap in range(n)
                    ]
                    for d in range(n)
                ]
                for c in range(n)
            ]
            for b in range(n)
        ]
        # new axes order: (b, c, d, a'); after 4 passes order is restored
        tensor = new
    metric = B.transpose() * m.metric * B
    aux = None
    if m.aux_form is not None:
        aux = B.transpose() * m.aux_form * B
    return ModelSpace(metric, tensor, aux_form=aux)


def models_equal(m1: ModelSpace, m2: ModelSpace, compare_aux: bool = False) -> bool:
    """Entry-for-entry equality of dimension, metric and curvature."""
    if m1.dim != m2.dim or m1.metric != m2.metric or m1.curv != m2.curv:
        return False
    if compare_aux and m1.aux_form != m2.aux_form:
        return False
    return True


def _zero4(n: int):
    return [[[[Fraction(0)] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]


def _set_z2(curv, a, b, c, d, value):
    """Install an entry together with its full symmetry orbit."""
    for (i, j, k, l), v in z2_orbit(a, b, c, d, value).items():
        curv[i][j][k][l] = v


def z2_orbit(a, b, c, d, value) -> dict:
    """All index images of one entry under pair swap and both antisymmetries."""
    out: dict = {}
    for (i, j, k, l), v in (
        ((a, b, c, d), value),
        ((c, d, a, b), value),
    ):
        out[(i, j, k, l)] = v
        out[(j, i, k, l)] = -v
        out[(i, j, l, k)] = -v
        out[(j, i, l, k)] = v
    return out
