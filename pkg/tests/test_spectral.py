"""Curvature operators on planes and Jordan-type profiles."""

import random
from fractions import Fraction

import pytest

from curvlab.exact import Matrix, UniPoly, mat_rank
from curvlab.grassmann import PlaneFrame, random_frame
from curvlab.modelspace import SelfAdjointMap, build_R_phi, model_V3s
from curvlab.spectral import (
    KTooSmallError,
    NoAuxFormError,
    NotDefinitePlaneError,
    ell,
    jordan_profile,
    power_rank_sequence,
    profiles_equal,
    skew_curv,
    theta,
)


def basis_vec(n, i):
    return [Fraction(int(j == i)) for j in range(n)]


def rand_gl2(rng):
    while True:
        b = Matrix(
            [[Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(2)] for _ in range(2)]
        )
        if b.det() != 0:
            return b


def test_skew_curv_requires_definite_2_plane():
    m = model_V3s(2)
    u_frame = PlaneFrame([basis_vec(6, 0), basis_vec(6, 1)])
    with pytest.raises(NotDefinitePlaneError):
        skew_curv(m, u_frame)
    with pytest.raises(ValueError):
        skew_curv(m, PlaneFrame([basis_vec(6, 2)]))


def test_skew_curv_is_skew_adjoint():
    rng = random.Random(51)
    m = model_V3s(2)
    for i in range(20):
        want = rng.choice(["spacelike", "timelike"])
        fr = random_frame(m, 2, want, 5100 + i)
        raw = skew_curv(m, fr).raw
        assert (m.metric * raw).transpose() == -(m.metric * raw)


def test_normalized_square_is_frame_independent():
    rng = random.Random(52)
    m = model_V3s(2)
    for i in range(15):
        fr = random_frame(m, 2, "timelike", 5200 + i)
        b = rand_gl2(rng)
        fr2 = fr.transform(b)
        ops1 = skew_curv(m, fr)
        ops2 = skew_curv(m, fr2)
        assert ops1.normalized_square == ops2.normalized_square
        # raw scales by det(B)
        assert ops2.raw == ops1.raw.scale(b.det())


def test_theta_self_adjoint_and_frame_independent():
    rng = random.Random(53)
    m = model_V3s(2)
    for i in range(10):
        k = rng.choice([2, 3])
        fr = random_frame(m, k, "timelike", 5300 + i)
        th = theta(m, fr)
        assert (m.metric * th).is_symmetric()
        # invariance under an arbitrary change of spanning frame
        while True:
            b = Matrix(
                [
                    [Fraction(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(k)]
                    for _ in range(k)
                ]
            )
            if b.det() != 0:
                break
        assert theta(m, fr.transform(b)) == th
    with pytest.raises(KTooSmallError):
        theta(m, PlaneFrame([basis_vec(6, 2)]))


def test_theta_known_zero_and_nonzero_planes():
    s = 2
    m = model_V3s(s)
    n = m.dim
    t_plane = PlaneFrame([basis_vec(n, s), basis_vec(n, s + 1)])
    assert theta(m, t_plane).is_zero()
    zm1 = [Fraction(0)] * n
    zm1[0] = Fraction(1)
    zm1[2 * s] = Fraction(-1, 2)
    zm2 = [Fraction(0)] * n
    zm2[1] = Fraction(1)
    zm2[2 * s + 1] = Fraction(-1, 2)
    z_plane = PlaneFrame([zm1, zm2])
    assert mat_rank(theta(m, z_plane)) == 2


def test_ell_counts_aux_rank():
    s = 2
    m = model_V3s(s)
    n = m.dim
    t_plane = PlaneFrame([basis_vec(n, s), basis_vec(n, s + 1)])
    assert ell(m, t_plane) == 0
    u_mix = PlaneFrame([basis_vec(n, 0), basis_vec(n, s)])
    assert ell(m, u_mix) == 1
    g = Matrix.identity(4)
    flat = build_R_phi(g, SelfAdjointMap(Matrix.identity(4)), 1)
    with pytest.raises(NoAuxFormError):
        ell(flat, PlaneFrame([basis_vec(4, 0), basis_vec(4, 1)]))


def test_jordan_profile_distinguishes_nilpotent_orders():
    a = Matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    b = Matrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    pa, pb = jordan_profile(a), jordan_profile(b)
    assert pa.charpoly == pb.charpoly == UniPoly([0, 0, 0, 1])
    assert pa.power_ranks == (2, 1, 0)
    assert pb.power_ranks == (1, 0, 0)
    assert not profiles_equal(pa, pb)


def test_jordan_profile_similarity_invariance():
    rng = random.Random(54)
    a = Matrix([[2, 1, 0], [0, 2, 0], [0, 0, -1]])
    for _ in range(10):
        while True:
            p = Matrix(
                [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
            )
            if p.det() != 0:
                break
        conj = p * a * p.inverse()
        assert profiles_equal(jordan_profile(conj), jordan_profile(a))
    prof = jordan_profile(a)
    assert (Fraction(2), (2, 1, 1)) in prof.eigen_ranks


def test_power_rank_sequence():
    a = Matrix([[0, 1], [0, 0]])
    assert power_rank_sequence(a) == (1, 0)
    assert power_rank_sequence(Matrix.identity(3)) == (3, 3, 3)
    with pytest.raises(ValueError):
        power_rank_sequence(Matrix([[1, 2, 3]]))
