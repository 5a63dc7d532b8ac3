"""Curvature operators on planes and exact Jordan-type profiles.

The skew-symmetric operator on an oriented 2-plane involves 1/sqrt(det G)
and is never materialized; all claims are restated on the pair (rank
sequence of the raw operator, rational normalized square).  The higher
order operator is evaluated Gram-covariantly, which removes
orthonormalization from the hot path; on an orthonormal frame it reduces
to the ordered double sum over basis pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import Matrix, UniPoly, char_poly, mat_rank, rational_roots
from .grassmann import PlaneFrame, causal_type, gram
from .modelspace import ModelSpace, curvature_operator

__all__ = [
    "PlaneOperators",
    "JordanProfile",
    "NotDefinitePlaneError",
    "KTooSmallError",
    "NoAuxFormError",
    "skew_curv",
    "theta",
    "ell",
    "jordan_profile",
    "profiles_equal",
]


class NotDefinitePlaneError(ValueError):
    """The plane is degenerate or mixed; the operators need a definite plane."""


class KTooSmallError(ValueError):
    """The higher order operator needs a plane of dimension at least 2."""


class NoAuxFormError(ValueError):
    """The model carries no auxiliary bilinear form."""


@dataclass(frozen=True)
class PlaneOperators:
    """R(x1, x2) together with the frame-independent normalized square.

    raw scales by det(B) under a frame change B; normalized_square =
    raw^2 / det(Gram) is an exact invariant of the unoriented plane.
    """

    raw: Matrix
    gram_det: Fraction
    normalized_square: Matrix


def skew_curv(m: ModelSpace, fr: PlaneFrame) -> PlaneOperators:
    """Curvature operator data of an oriented definite 2-plane."""
    if fr.k != 2:
        raise ValueError("skew_curv needs a 2-frame")
    if causal_type(m, fr) not in ("spacelike", "timelike"):
        raise NotDefinitePlaneError("plane must be spacelike or timelike")
    raw = curvature_operator(m, fr.vectors[0], fr.vectors[1])
    g_det = gram(m, fr).det()
    nsq = (raw * raw).scale(Fraction(1) / g_det)
    return PlaneOperators(raw=raw, gram_det=g_det, normalized_square=nsq)


def theta(m: ModelSpace, fr: PlaneFrame) -> Matrix:
    """Higher order curvature operator of a definite k-plane.

    Gram-covariant double contraction
    sum_{a,b,c,d} Ginv[a][c] Ginv[b][d] R(x_a, x_b) R(x_c, x_d);
    the result does not depend on the chosen frame.  Indices range
    independently (ordered-sum convention), so on an orthonormal pair
    each unordered term appears twice.
    """
    if fr.k < 2:
        raise KTooSmallError("theta needs k >= 2")
    if causal_type(m, fr) not in ("spacelike", "timelike"):
        raise NotDefinitePlaneError("plane must be spacelike or timelike")
    k = fr.k
    ginv = gram(m, fr).inverse()
    ops: list[list[Matrix | None]] = [[None] * k for _ in range(k)]
    zero = Matrix.zero(m.dim)
    for a in range(k):
        ops[a][a] = zero
        for b in range(a + 1, k):
            op = curvature_operator(m, fr.vectors[a], fr.vectors[b])
            ops[a][b] = op
            ops[b][a] = -op
    total = Matrix.zero(m.dim)
    for a in range(k):
        for b in range(k):
            if ops[a][b].is_zero():
                continue
            mixed = Matrix.zero(m.dim)
            for c in range(k):
                fac_ac = ginv[a][c]
                if not fac_ac:
                    continue
                for d in range(k):
                    fac = fac_ac * ginv[b][d]
                    if fac and not ops[c][d].is_zero():
                        mixed = mixed + ops[c][d].scale(fac)
            if not mixed.is_zero():
                total = total + ops[a][b] * mixed
    return total


def ell(m: ModelSpace, fr: PlaneFrame) -> int:
    """Rank of the auxiliary bilinear form restricted to the plane."""
    if m.aux_form is None:
        raise NoAuxFormError("model has no auxiliary form")
    if fr.ambient_dim != m.dim:
        raise ValueError("frame dimension mismatch")
    gx = [m.aux_form.apply(v) for v in fr.vectors]
    restricted = Matrix(
        [
            [
                sum((a * b for a, b in zip(fr.vectors[i], gx[j]) if a and b), Fraction(0))
                for j in range(fr.k)
            ]
            for i in range(fr.k)
        ]
    )
    return mat_rank(restricted)


@dataclass(frozen=True)
class JordanProfile:
    """Similarity-invariant fingerprint standing in for a Jordan normal form.

    Equality of profiles is necessary for similarity always, and
    sufficient whenever every elementary divisor comes from an eigenvalue
    that is rational or purely imaginary with rational square -- which
    covers every operator family in scope (nilpotent operators and the
    +-ic spectra of the isometry-generated tensors, via the rank data of
    the squared operator).
    """

    dim: int
    charpoly: UniPoly
    power_ranks: tuple
    eigen_ranks: tuple  # sorted ((eigenvalue, rank sequence), ...)
    square_eigen_ranks: tuple

    def sort_key(self) -> tuple:
        return (
            self.dim,
            self.charpoly.coeffs,
            self.power_ranks,
            self.eigen_ranks,
            self.square_eigen_ranks,
        )


def jordan_profile(a: Matrix) -> JordanProfile:
    """Characteristic polynomial plus rank sequences of powers and shifts."""
    if not a.is_square:
        raise ValueError("jordan_profile needs a square matrix")
    n = a.rows
    cp = char_poly(a)
    power_ranks = _power_ranks(a, n)
    eigen = []
    for lam in sorted(rational_roots(cp)):
        shifted = a - Matrix.identity(n).scale(lam)
        eigen.append((lam, _power_ranks(shifted, n)))
    a2 = a * a
    cp2 = char_poly(a2)
    square_eigen = []
    for lam in sorted(rational_roots(cp2)):
        shifted = a2 - Matrix.identity(n).scale(lam)
        square_eigen.append((lam, _power_ranks(shifted, n)))
    return JordanProfile(
        dim=n,
        charpoly=cp,
        power_ranks=power_ranks,
        eigen_ranks=tuple(eigen),
        square_eigen_ranks=tuple(square_eigen),
    )


def power_rank_sequence(a: Matrix) -> tuple:
    """Ranks of A^1 .. A^n for a square matrix A."""
    if not a.is_square:
        raise ValueError("power_rank_sequence needs a square matrix")
    return _power_ranks(a, a.rows)


def _power_ranks(a: Matrix, n: int) -> tuple:
    ranks: list[int] = []
    acc = Matrix.identity(n)
    for _ in range(n):
        if ranks and ranks[-1] == 0:
            ranks.append(0)  # once zero, all higher powers stay zero
            continue
        acc = acc * a
        ranks.append(mat_rank(acc))
    return tuple(ranks)


def profiles_equal(p1: JordanProfile, p2: JordanProfile) -> bool:
    return p1 == p2
