"""Scripted reproductions of the headline claims.

Each function runs one bundle of exact checks (closed-form curvature
entries, normalization, verdicts with their named witness planes, operator
identities) and returns a JSON-compatible report dictionary with a
top-level ok flag.  Sampling substitutes for the universally quantified
statements; every counterexample plane is carried explicitly in the
battery, so failures are reproduced deterministically, not found by luck.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import Matrix, MultiPoly, mat_rank
from .grassmann import PlaneFrame, random_frame
from .metrics import curvature_at, metric_g_3s, metric_g_F, metric_g_f
from .modelspace import (
    ModelSpace,
    SelfAdjointMap,
    _set_z2,
    _zero4,
    hypersurface_model,
    model_V3s,
)
from .report import verdict_to_dict
from .spectral import ell, theta
from .verify import (
    check_ip,
    check_metric,
    check_stanilov,
    derived_seed,
    ip_profile,
    normalize_basis_3s,
    sample_points,
    v3s_ip_witness_frames,
    v3s_stanilov_witness_frames,
    v3s_stanilov_witness_ranks,
    verify_theorem_1_4,
)

__all__ = [
    "reproduce_lemma_4_1",
    "reproduce_lemma_4_3",
    "reproduce_lemma_4_4",
    "reproduce_lemma_4_5",
    "reproduce_thm_1_4",
    "reproduce_thm_1_6",
    "reproduce_thm_1_7",
    "REPRODUCTIONS",
]


def _check(name: str, ok: bool, **extra) -> dict:
    out = {"name": name, "ok": bool(ok)}
    out.update(extra)
    return out


def _finish(name: str, checks: list, notes=()) -> dict:
    return {
        "name": name,
        "ok": all(c["ok"] for c in checks),
        "checks": checks,
        "notes": list(notes),
    }


def expected_three_block_curvature(s: int, point) -> ModelSpace:
    """Closed-form pointwise curvature of the base three-block metric.

    The only nonzero entry families (up to symmetry) are
    R(du_i, du_j, du_j, du_i) = |u|^2 and R(du_i, du_j, du_j, dt_i) = 1
    for i != j, where u is the first coordinate block of the point.
    """
    n = 3 * s
    u2 = sum((Fraction(point[i]) ** 2 for i in range(s)), Fraction(0))
    curv = _zero4(n)
    for i in range(s):
        for j in range(s):
            if i != j:
                _set_z2(curv, i, j, j, i, u2)
                _set_z2(curv, i, j, j, s + i, Fraction(1))
    g = metric_g_3s(s)
    g0 = curvature_at(g, point).metric
    return ModelSpace(g0, curv)


def reproduce_lemma_4_1(s: int = 2, points: int = 20, seed: int = 0) -> dict:
    """Pointwise curvature of the base three-block metric equals its
    closed form at sampled rational points, entry for entry."""
    g = metric_g_3s(s)
    checks = []
    for idx, p in enumerate(sample_points(g, points, seed)):
        model = curvature_at(g, p)
        expected = expected_three_block_curvature(s, p)
        checks.append(
            _check(
                f"point-{idx}-closed-form",
                model.curv == expected.curv,
            )
        )
    return _finish(
        "lemma-4.1",
        checks,
        notes=(f"s={s}; {points} sampled points; exact entry-for-entry equality",),
    )


def reproduce_lemma_4_3(s: int = 2, points: int = 20, seed: int = 0) -> dict:
    """Curvature homogeneity of the three-block family: the normalized
    basis pulls every sampled tangent model back to the canonical model."""
    fs = [
        MultiPoly.var(f"u{i + 1}", (f"u{i + 1}",)) ** 2 for i in range(s)
    ]
    cases = [("base", metric_g_3s(s)), ("sum-of-squares-potential", metric_g_F(s, fs))]
    checks = []
    for label, g in cases:
        for idx, p in enumerate(sample_points(g, points, seed)):
            _, ok = normalize_basis_3s(g, p)
            checks.append(_check(f"{label}-point-{idx}-normalized", ok))
    return _finish(
        "lemma-4.3",
        checks,
        notes=(f"s={s}; {points} points per metric; pulled-back model compared entry-for-entry",),
    )


def reproduce_lemma_4_4(s: int = 2, samples: int = 100, seed: int = 0) -> dict:
    """Spacelike 2-planes share the rank-4 square-zero profile; timelike
    2-planes do not (zero-operator vs rank-4 witness pair)."""
    m = model_V3s(s)
    checks = []
    space = check_ip(m, "spacelike", samples, seed)
    ref_ranks = space.reference_profile.raw_power_ranks
    checks.append(
        _check(
            "spacelike-ip-holds-rank-4",
            space.holds and ref_ranks[:3] == (4, 2, 0),
            verdict=verdict_to_dict(space),
        )
    )
    wits = v3s_ip_witness_frames(s)
    time = check_ip(
        m, "timelike", samples, derived_seed(seed, 1), extra_frames=tuple(wits)
    )
    checks.append(
        _check("timelike-ip-fails", not time.holds, verdict=verdict_to_dict(time))
    )
    rank_zero = ip_profile(m, wits[0]).raw_power_ranks[0]
    rank_four = ip_profile(m, wits[1]).raw_power_ranks[0]
    checks.append(
        _check(
            "timelike-witness-ranks",
            (rank_zero, rank_four) == (0, 4),
            witness_ranks=[rank_zero, rank_four],
        )
    )
    return _finish("lemma-4.4", checks, notes=(f"s={s}; {samples} sampled frames per verdict",))


def reproduce_lemma_4_5(s: int = 2, samples: int = 100, seed: int = 0) -> dict:
    """Higher order operator verdicts on the canonical three-block model:
    spacelike holds for k <= s, timelike holds only at the top dimension,
    and the witness rank table is matched exactly."""
    m = model_V3s(s)
    checks = []
    for k in range(2, s + 1):
        v = check_stanilov(m, k, "spacelike", samples, derived_seed(seed, k))
        ranks = v.reference_profile.power_ranks
        checks.append(
            _check(
                f"k={k}-spacelike-holds-rank-{k}-square-zero",
                v.holds and ranks[0] == k and ranks[1] == 0,
                verdict=verdict_to_dict(v),
            )
        )
    top = check_stanilov(m, 2 * s, "timelike", samples, derived_seed(seed, 50))
    checks.append(
        _check("k=2s-timelike-holds", top.holds, verdict=verdict_to_dict(top))
    )
    rank_rule_ok = True
    for i in range(min(samples, 25)):
        fr = random_frame(m, 2 * s, "timelike", derived_seed(seed, 500 + i))
        th = theta(m, fr)
        l = ell(m, fr)
        expected = l if l >= 2 else 0
        if mat_rank(th) != expected:
            rank_rule_ok = False
            break
    checks.append(_check("k=2s-timelike-rank-equals-aux-rank", rank_rule_ok))
    for k in range(2, 2 * s):
        pi1, pi2 = v3s_stanilov_witness_frames(s, k)
        got = (mat_rank(theta(m, pi1)), mat_rank(theta(m, pi2)))
        want = v3s_stanilov_witness_ranks(s, k)
        checks.append(
            _check(
                f"k={k}-witness-rank-table",
                got == want,
                got=list(got),
                expected=list(want),
            )
        )
        v = check_stanilov(
            m, k, "timelike", samples, derived_seed(seed, 100 + k), extra_frames=(pi1, pi2)
        )
        checks.append(
            _check(f"k={k}-timelike-fails", not v.holds, verdict=verdict_to_dict(v))
        )
    return _finish("lemma-4.5", checks, notes=(f"s={s}; {samples} sampled frames per verdict",))


def reproduce_thm_1_4(samples: int = 50, seed: int = 0) -> dict:
    """Exact operator identity for isometry-generated curvature tensors,
    in Euclidean and Lorentz-type signatures."""
    euclid = Matrix.identity(5)
    lorentz = Matrix.diagonal([-1, 1, 1, 1, 1])
    phi_id = SelfAdjointMap(Matrix.identity(5))
    phi_neg = SelfAdjointMap(Matrix.identity(5).scale(Fraction(-1)))
    phi_mixed = SelfAdjointMap(Matrix.diagonal([-1, 1, 1, 1, 1]))
    cases = [
        ("euclidean-id", euclid, phi_id),
        ("euclidean-neg-id", euclid, phi_neg),
        ("lorentz-reflection", lorentz, phi_mixed),
    ]
    checks = []
    for label, g, phi in cases:
        for c in (Fraction(1), Fraction(3, 2)):
            for k in (2, 3):
                rep = verify_theorem_1_4(g, phi, c, k, "spacelike", samples, seed)
                checks.append(
                    _check(
                        f"{label}-c={c}-k={k}",
                        rep.ok,
                        identity_ok=rep.identity_ok,
                        square_identity_ok=rep.square_identity_ok,
                        stanilov_holds=rep.stanilov.holds,
                    )
                )
    return _finish(
        "thm-1.4",
        checks,
        notes=(
            f"{samples} sampled spacelike frames per case",
            "theta coefficient -2(k-1)c^2 under the ordered-sum convention",
        ),
    )


def _graph_witness_frame(p_dim: int, grad, dirs, sign: int) -> PlaneFrame:
    """Definite 2-frame over chosen x-directions of a graph metric.

    Vector a is dx_{dirs[a]} plus a y-correction chosen so the Gram
    matrix is exactly sign * identity.
    """
    n = 2 * p_dim
    vectors = []
    for a, da in enumerate(dirs):
        v = [Fraction(0)] * n
        v[da] = Fraction(1)
        for b, db in enumerate(dirs):
            target = Fraction(sign if a == b else 0)
            v[p_dim + db] += (target - grad[da] * grad[db]) / 2
        vectors.append(v)
    return PlaneFrame(vectors)


def reproduce_thm_1_6(samples: int = 30, seed: int = 0) -> dict:
    """Graph hypersurface metrics: nondegenerate Hessian gives a constant
    rank-2 nilpotent 2-plane profile, a rank-deficient Hessian breaks it,
    and the higher order operator vanishes identically."""
    checks = []
    # nondegenerate case, pointwise model with Hessian diag(2,2)
    m_good = hypersurface_model(Matrix.diagonal([2, 2]), [2, 2])
    for want in ("spacelike", "timelike"):
        v = check_ip(m_good, want, samples, derived_seed(seed, 0 if want == "spacelike" else 1))
        ranks = v.reference_profile.raw_power_ranks
        checks.append(
            _check(
                f"nondegenerate-{want}-ip-holds-rank-2",
                v.holds and ranks[:2] == (2, 0),
                verdict=verdict_to_dict(v),
            )
        )
    # rank-deficient case: potential x1^2 + x2^2 in three x-variables
    xs = ("x1", "x2")
    f = MultiPoly.var("x1", xs) ** 2 + MultiPoly.var("x2", xs) ** 2
    g_bad = metric_g_f(3, f)
    point = sample_points(g_bad, 1, derived_seed(seed, 2))[0]
    m_bad = curvature_at(g_bad, point)
    grad = [2 * point[0], 2 * point[1], Fraction(0)]
    for want, sign, tag in (("spacelike", 1, 3), ("timelike", -1, 4)):
        w_rank2 = _graph_witness_frame(3, grad, (0, 1), sign)
        w_rank0 = _graph_witness_frame(3, grad, (0, 2), sign)
        r2 = ip_profile(m_bad, w_rank2).raw_power_ranks[0]
        r0 = ip_profile(m_bad, w_rank0).raw_power_ranks[0]
        v = check_ip(
            m_bad,
            want,
            samples,
            derived_seed(seed, tag),
            extra_frames=(w_rank2, w_rank0),
        )
        checks.append(
            _check(
                f"rank-deficient-{want}-ip-fails",
                (not v.holds) and (r2, r0) == (2, 0),
                witness_ranks=[r2, r0],
                verdict=verdict_to_dict(v),
            )
        )
    # the higher order operator vanishes on every sampled definite k-plane
    for label, model, p_dim in (("nondegenerate", m_good, 2), ("rank-deficient", m_bad, 3)):
        all_zero = True
        for k in range(2, p_dim + 1):
            for want in ("spacelike", "timelike"):
                for i in range(max(5, samples // 3)):
                    fr = random_frame(model, k, want, derived_seed(seed, 1000 + 37 * k + i))
                    if not theta(model, fr).is_zero():
                        all_zero = False
                        break
        checks.append(_check(f"{label}-theta-vanishes", all_zero))
    return _finish(
        "thm-1.6",
        checks,
        notes=(f"{samples} sampled frames per verdict; rank-deficient case evaluated at one sampled point",),
    )


def reproduce_thm_1_7(s: int = 2, points: int = 3, samples: int = 20, seed: int = 0) -> dict:
    """Metric-level verdicts for the base three-block metric: spacelike
    properties hold at every sampled point, timelike ones fail with the
    witness planes carried through the normalization basis."""
    g = metric_g_3s(s)
    checks = []
    for idx, p in enumerate(sample_points(g, points, seed)):
        _, ok = normalize_basis_3s(g, p)
        checks.append(_check(f"point-{idx}-normalized", ok))

    def push_frames(frames):
        def fn(p, model):
            B, ok = normalize_basis_3s(g, p)
            if not ok:
                return []
            return [PlaneFrame([B.apply(v) for v in fr.vectors]) for fr in frames]

        return fn

    r = check_metric(g, "ip", "spacelike", points=points, planes_per_point=samples, seed=seed)
    ref = r.points[0].verdict.reference_profile.raw_power_ranks
    checks.append(
        _check(
            "metric-spacelike-ip-holds-rank-4",
            r.all_hold and ref[:3] == (4, 2, 0),
        )
    )
    r = check_metric(
        g,
        "ip",
        "timelike",
        points=points,
        planes_per_point=samples,
        seed=derived_seed(seed, 1),
        extra_frames_fn=push_frames(v3s_ip_witness_frames(s)),
    )
    checks.append(_check("metric-timelike-ip-fails", not r.all_hold))
    for k in range(2, s + 1):
        r = check_metric(
            g,
            "stanilov",
            "spacelike",
            k=k,
            points=points,
            planes_per_point=samples,
            seed=derived_seed(seed, 10 + k),
        )
        checks.append(_check(f"metric-k={k}-spacelike-stanilov-holds", r.all_hold))
    r = check_metric(
        g,
        "stanilov",
        "timelike",
        k=2 * s,
        points=points,
        planes_per_point=samples,
        seed=derived_seed(seed, 30),
    )
    checks.append(_check("metric-k=2s-timelike-stanilov-holds", r.all_hold))
    for k in range(2, 2 * s):
        r = check_metric(
            g,
            "stanilov",
            "timelike",
            k=k,
            points=points,
            planes_per_point=samples,
            seed=derived_seed(seed, 60 + k),
            extra_frames_fn=push_frames(list(v3s_stanilov_witness_frames(s, k))),
        )
        checks.append(_check(f"metric-k={k}-timelike-stanilov-fails", not r.all_hold))
    return _finish(
        "thm-1.7",
        checks,
        notes=(f"s={s}; {points} sampled points; {samples} planes per point",),
    )


REPRODUCTIONS = {
    "lemma-4.1": reproduce_lemma_4_1,
    "lemma-4.3": reproduce_lemma_4_3,
    "lemma-4.4": reproduce_lemma_4_4,
    "lemma-4.5": reproduce_lemma_4_5,
    "thm-1.4": reproduce_thm_1_4,
    "thm-1.6": reproduce_thm_1_6,
    "thm-1.7": reproduce_thm_1_7,
}
