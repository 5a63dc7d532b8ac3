"""Model space layer: symmetry validation, curvature operators, the
canonical three-block model and model isomorphisms."""

import random
from fractions import Fraction

import pytest

from curvlab.exact import Matrix, SingularError, mat_rank, signature
from curvlab.modelspace import (
    ModelSpace,
    NotSelfAdjointError,
    STooSmallError,
    SelfAdjointMap,
    _set_z2,
    _zero4,
    apply_isomorphism,
    build_R_phi,
    classify_phi,
    curvature_operator,
    hypersurface_model,
    model_V3s,
    models_equal,
    validate_model,
    z2_orbit,
)


def basis_vec(n, i):
    return [Fraction(int(j == i)) for j in range(n)]


def rand_model(rng, n=4, entries=3):
    """Random valid model: symmetric metric + symmetry-closed entries of
    the sectional type R(a,b,b,a), which satisfy Bianchi automatically."""
    g = Matrix.diagonal([rng.choice([1, 1, 1, -1]) for _ in range(n)])
    curv = _zero4(n)
    for _ in range(entries):
        a, b = rng.sample(range(n), 2)
        _set_z2(curv, a, b, b, a, Fraction(rng.randint(-3, 3)))
    return ModelSpace(g, curv)


def test_z2_orbit_signs():
    orbit = z2_orbit(0, 1, 2, 3, Fraction(5))
    assert orbit[(0, 1, 2, 3)] == 5
    assert orbit[(1, 0, 2, 3)] == -5
    assert orbit[(0, 1, 3, 2)] == -5
    assert orbit[(2, 3, 0, 1)] == 5
    assert orbit[(3, 2, 0, 1)] == -5


def test_validate_model_accepts_valid_random_models():
    rng = random.Random(21)
    for _ in range(20):
        assert validate_model(rand_model(rng)) is None


def test_validate_model_flags_violations():
    n = 3
    curv = _zero4(n)
    curv[0][1][0][1] = Fraction(1)  # no symmetry images installed
    bad = ModelSpace(Matrix.identity(n), curv)
    v = validate_model(bad)
    assert v is not None  # some symmetry is broken; kind depends on scan order

    degen = ModelSpace(Matrix.diagonal([1, 0, 1]), _zero4(n))
    v = validate_model(degen)
    assert v is not None and v.kind == "degenerate-metric"

    # pair/antisymmetric but Bianchi-violating: R_{0123} alone
    curv = _zero4(4)
    for (a, b, c, d), val in z2_orbit(0, 1, 2, 3, Fraction(1)).items():
        curv[a][b][c][d] = val
    v = validate_model(ModelSpace(Matrix.identity(4), curv))
    assert v is not None and v.kind == "bianchi"


def test_curvature_operator_lowers_to_entries():
    rng = random.Random(22)
    for _ in range(15):
        m = rand_model(rng)
        n = m.dim
        x = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
        y = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
        op = curvature_operator(m, x, y)
        for c in range(n):
            z = basis_vec(n, c)
            gz = m.metric.apply(op.apply(z))
            for d in range(n):
                assert gz[d] == m.curv_entry(x, y, z, basis_vec(n, d))


def test_model_v3s_shape():
    for s in (2, 3):
        m = model_V3s(s)
        assert m.dim == 3 * s
        assert signature(m.metric) == (2 * s, 0, s)
        assert validate_model(m) is None
        assert m.aux_form is not None and mat_rank(m.aux_form) == s
        # defining entry and one symmetry image
        u1, u2, t1 = basis_vec(m.dim, 0), basis_vec(m.dim, 1), basis_vec(m.dim, s)
        assert m.curv_entry(u1, u2, u2, t1) == 1
        assert m.curv_entry(u2, u1, u2, t1) == -1
    with pytest.raises(STooSmallError):
        model_V3s(1)


def test_model_v3s_operator_on_u_plane():
    # R(U1, U2) sends U2 to a T-direction and kills the V block
    s = 2
    m = model_V3s(s)
    op = curvature_operator(m, basis_vec(6, 0), basis_vec(6, 1))
    assert op.apply(basis_vec(6, 4)) == (Fraction(0),) * 6  # V1
    assert op.apply(basis_vec(6, 5)) == (Fraction(0),) * 6  # V2
    img = op.apply(basis_vec(6, 1))  # U2
    assert any(img[s + i] for i in range(s))


def test_build_r_phi_and_classify():
    g = Matrix.identity(4)
    phi = SelfAdjointMap(Matrix.diagonal([1, 1, -1, -1]))
    assert classify_phi(g, phi) == "isometry"
    m = build_R_phi(g, phi, Fraction(1))
    assert validate_model(m) is None
    # R_phi(x,y,y,x) = c * (g(phi y,y) g(phi x,x) - g(phi x,y)^2)
    x, y = basis_vec(4, 0), basis_vec(4, 2)
    assert m.curv_entry(x, y, y, x) == -1

    shear = Matrix([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    with pytest.raises(NotSelfAdjointError):
        build_R_phi(g, SelfAdjointMap(shear), 1)


def test_classify_phi_variants():
    g = Matrix.identity(2)
    assert classify_phi(g, SelfAdjointMap(Matrix.identity(2).scale(-1))) == "isometry"
    assert classify_phi(Matrix.diagonal([1, -1]), SelfAdjointMap(Matrix([[0, 1], [1, 0]]))) == "para-isometry"
    g2 = Matrix.diagonal([1, -1])
    nil = Matrix([[1, 1], [-1, -1]])
    assert (nil * nil).is_zero()
    assert SelfAdjointMap.check(g2, nil)
    assert classify_phi(g2, SelfAdjointMap(nil)) == "nilpotent-admissible"
    assert classify_phi(Matrix.identity(2), SelfAdjointMap(Matrix.diagonal([2, 2]))) == "other"


def test_hypersurface_model_gauss_products():
    H = Matrix.diagonal([2, 3])
    m = hypersurface_model(H, [1, 0])
    assert validate_model(m) is None
    x1, x2 = basis_vec(4, 0), basis_vec(4, 1)
    # R(x1,x2,x2,x1) = L11*L22 - L12^2 = 6
    assert m.curv_entry(x1, x2, x2, x1) == 6
    # y-directions are flat
    y1 = basis_vec(4, 2)
    assert m.curv_entry(x1, y1, y1, x1) == 0


def test_apply_isomorphism_roundtrip_and_singular():
    rng = random.Random(23)
    m = model_V3s(2)
    # random invertible B: identity plus a strictly triangular perturbation
    n = m.dim
    pert = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            pert[i][j] = Fraction(rng.randint(-2, 2))
    B = Matrix.identity(n) + Matrix(pert)
    pulled = apply_isomorphism(m, B)
    assert validate_model(pulled) is None
    back = apply_isomorphism(pulled, B.inverse())
    assert models_equal(back, m, compare_aux=True)
    with pytest.raises(SingularError):
        apply_isomorphism(m, Matrix.zero(n))


def test_models_equal_detects_difference():
    m1 = model_V3s(2)
    m2 = ModelSpace(m1.metric, _zero4(6))
    assert not models_equal(m1, m2)
    assert models_equal(m1, model_V3s(2), compare_aux=True)
