"""Rational frames spanning candidate k-planes, causal classification,
and seeded deterministic sampling of spacelike/timelike planes.

Planes are represented by frames, never by orthonormal bases:
orthonormalization needs square roots, which would break exact
arithmetic.  All downstream operator formulas are Gram-covariant.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exact import Matrix, _rat, congruence_diagonalize, mat_rank, solve
from .modelspace import ModelSpace

__all__ = [
    "PlaneFrame",
    "DimMismatchError",
    "DependentVectorsError",
    "KTooLargeError",
    "gram",
    "causal_type",
    "random_frame",
    "adapted_frames",
    "cayley_orthogonal",
    "same_plane",
]


class DimMismatchError(ValueError):
    """Frame and model live in different ambient dimensions."""


class DependentVectorsError(ValueError):
    """The vectors of a frame must be linearly independent."""


class KTooLargeError(ValueError):
    """Requested plane dimension exceeds the relevant index of the metric."""


class PlaneFrame:
    """Ordered list of k independent rational ambient vectors.

    The order of the vectors fixes the orientation of the spanned plane;
    reversing orientation = swapping two vectors.  Independence is
    checked metric-free on construction.
    """

    __slots__ = ("vectors", "ambient_dim", "k")

    def __init__(self, vectors: Sequence[Sequence]):
        vecs = tuple(tuple(_rat(x) for x in v) for v in vectors)
        if not vecs:
            raise ValueError("frame needs at least one vector")
        ambient = len(vecs[0])
        if any(len(v) != ambient for v in vecs):
            raise ValueError("vectors of different lengths")
        if mat_rank(Matrix(vecs)) != len(vecs):
            raise DependentVectorsError("frame vectors are linearly dependent")
        object.__setattr__(self, "vectors", vecs)
        object.__setattr__(self, "ambient_dim", ambient)
        object.__setattr__(self, "k", len(vecs))

    def __setattr__(self, name, value):
        raise AttributeError("PlaneFrame is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, PlaneFrame) and self.vectors == other.vectors

    def __hash__(self) -> int:
        return hash(self.vectors)

    def __repr__(self) -> str:
        return f"PlaneFrame({[list(map(str, v)) for v in self.vectors]})"

    def matrix(self) -> Matrix:
        """Vectors as columns of an ambient_dim x k matrix."""
        return Matrix(self.vectors).transpose()

    def transform(self, B: Matrix) -> "PlaneFrame":
        """New frame fr·B: vector j is sum_i B[i][j] * vector i."""
        if B.rows != self.k:
            raise ValueError("change-of-basis size mismatch")
        cols = self.matrix() * B
        return PlaneFrame([cols.column(j) for j in range(B.cols)])


def gram(m: ModelSpace, fr: PlaneFrame) -> Matrix:
    """Gram matrix G_ij = g(x_i, x_j) of the frame in the model metric."""
    if fr.ambient_dim != m.dim:
        raise DimMismatchError("frame dimension does not match model")
    gx = [m.metric.apply(v) for v in fr.vectors]
    return Matrix(
        [
            [
                sum((a * b for a, b in zip(fr.vectors[i], gx[j]) if a and b), Fraction(0))
                for j in range(fr.k)
            ]
            for i in range(fr.k)
        ]
    )


def causal_type(m: ModelSpace, fr: PlaneFrame) -> str:
    """spacelike / timelike / degenerate / mixed, by exact inertia."""
    from .exact import signature

    n_neg, n_zero, n_pos = signature(gram(m, fr))
    if n_zero:
        return "degenerate"
    if n_neg == 0:
        return "spacelike"
    if n_pos == 0:
        return "timelike"
    return "mixed"


def _adapted_columns(m: ModelSpace) -> tuple[list, list]:
    """Metric-adapted rational basis split into (positive, negative) columns."""
    diag, B = congruence_diagonalize(m.metric)
    pos = [B.column(i) for i, d in enumerate(diag) if d > 0]
    neg = [B.column(i) for i, d in enumerate(diag) if d < 0]
    return pos, neg


def random_frame(m: ModelSpace, k: int, want: str, seed: int) -> PlaneFrame:
    """Deterministic seeded sample of a definite k-plane.

    Takes k adapted-basis directions of the wanted sign, mixes in a
    random rational graph perturbation toward the opposite part, and
    halves the perturbation until the frame is exactly definite (the
    unperturbed frame is strictly definite, so this terminates).
    """
    if want not in ("spacelike", "timelike"):
        raise ValueError("want must be 'spacelike' or 'timelike'")
    pos, neg = _adapted_columns(m)
    same, other = (pos, neg) if want == "spacelike" else (neg, pos)
    if k > len(same):
        raise KTooLargeError(f"k={k} exceeds the {want} index {len(same)}")
    rng = random.Random(seed)
    chosen = rng.sample(range(len(same)), k)
    coeffs = [
        [Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for _ in other]
        for _ in range(k)
    ]
    scale = Fraction(1)
    while True:
        vectors = []
        for ci, idx in enumerate(chosen):
            v = list(same[idx])
            for oj, o in enumerate(other):
                c = coeffs[ci][oj] * scale
                if c:
                    v = [a + c * b for a, b in zip(v, o)]
            vectors.append(v)
        fr = PlaneFrame(vectors)
        if causal_type(m, fr) == want:
            return fr
        scale /= 2


def adapted_frames(m: ModelSpace, k: int, want: str, limit: int = 30) -> list[PlaneFrame]:
    """Deterministic battery: k-subsets of the adapted basis of the wanted sign."""
    pos, neg = _adapted_columns(m)
    cols = pos if want == "spacelike" else neg
    frames = []
    for combo in combinations(range(len(cols)), k):
        frames.append(PlaneFrame([cols[i] for i in combo]))
        if len(frames) >= limit:
            break
    return frames


def cayley_orthogonal(s: int, seed: int) -> Matrix:
    """Rational orthogonal matrix (I - S)(I + S)^-1 from random skew S."""
    if s < 1:
        raise ValueError("need s >= 1")
    rng = random.Random(seed)
    skew = [[Fraction(0)] * s for _ in range(s)]
    for i in range(s):
        for j in range(i + 1, s):
            c = Fraction(rng.randint(-4, 4), rng.randint(1, 4))
            skew[i][j] = c
            skew[j][i] = -c
    S = Matrix(skew)
    ident = Matrix.identity(s)
    # I + S is invertible for every skew S over the rationals
    return (ident - S) * (ident + S).inverse()


def same_plane(fr1: PlaneFrame, fr2: PlaneFrame) -> Matrix | None:
    """Change-of-basis B with fr2 = fr1·B when the spans coincide."""
    if fr1.k != fr2.k or fr1.ambient_dim != fr2.ambient_dim:
        raise DimMismatchError("frames must have equal k and ambient dimension")
    A = fr1.matrix()
    columns = []
    for v in fr2.vectors:
        x = solve(A, v)
        if x is None:
            return None
        columns.append(x)
    return Matrix.from_columns(columns)
