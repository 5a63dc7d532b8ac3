"""High-level deciders: Ivanov-Petrova / Stanilov verdicts with witnesses,
the three-block curvature-homogeneity normalization, and sampled theorem
identity checks.

Verdicts are sampling-based: "holds over N samples plus a deterministic
battery", never a proof.  Failing verdicts always carry two concrete
frames whose profiles differ, and re-evaluating those witnesses
standalone reproduces the differing profiles.  All sampling is seeded and
schedule-independent: frames are generated up front from per-index
derived seeds, so the report is byte-for-byte identical for any worker
count.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .exact import Matrix, char_poly, signature
from .grassmann import PlaneFrame, adapted_frames, random_frame
from .metrics import DegenerateAtPointError, PolynomialMetric, curvature_at, metric_jets
from .modelspace import (
    ModelSpace,
    SelfAdjointMap,
    apply_isomorphism,
    build_R_phi,
    classify_phi,
    model_V3s,
    models_equal,
)
from .spectral import JordanProfile, jordan_profile, power_rank_sequence, skew_curv, theta

__all__ = [
    "IpProfile",
    "Verdict",
    "MetricPointReport",
    "MetricCheckReport",
    "NormalizationFailedError",
    "PhiNotAdmissibleError",
    "NotRiemannianError",
    "ip_profile",
    "stanilov_profile",
    "check_ip",
    "check_stanilov",
    "check_metric",
    "normalize_basis_3s",
    "verify_theorem_1_4",
    "verify_theorem_1_5_samples",
    "sample_points",
    "derived_seed",
    "v3s_ip_witness_frames",
    "v3s_stanilov_witness_frames",
    "v3s_stanilov_witness_ranks",
]


class NormalizationFailedError(ValueError):
    """The cancellation conditions have no solution; the metric is not in
    the three-block family."""


class PhiNotAdmissibleError(ValueError):
    """The identity check needs phi to be an isometry with phi^2 = Id."""


class NotRiemannianError(ValueError):
    """The sampler needs a positive definite metric."""


@dataclass(frozen=True)
class IpProfile:
    """Jordan-type fingerprint of the skew-symmetric operator on a 2-plane.

    The operator itself involves 1/sqrt(det G); the pair (rank sequence of
    the raw operator, profile of the rational normalized square)
    determines its Jordan type for every family in scope.
    """

    raw_power_ranks: tuple
    square: JordanProfile

    def sort_key(self) -> tuple:
        return (self.raw_power_ranks, self.square.sort_key())


@dataclass(frozen=True)
class Verdict:
    """Outcome of a sampled constancy check.

    holds=False carries exactly two witness (frame, profile) pairs whose
    profiles differ; holds=True means every sampled profile equals the
    reference.
    """

    property: str
    holds: bool
    reference_profile: object
    samples: int
    seed: int
    witnesses: tuple
    notes: tuple = ()


def derived_seed(seed: int, index: int) -> int:
    return seed * 1_000_003 + index


def ip_profile(m: ModelSpace, fr: PlaneFrame) -> IpProfile:
    ops = skew_curv(m, fr)
    return IpProfile(
        raw_power_ranks=power_rank_sequence(ops.raw),
        square=jordan_profile(ops.normalized_square),
    )


def stanilov_profile(m: ModelSpace, fr: PlaneFrame) -> JordanProfile:
    return jordan_profile(theta(m, fr))


def _map_ordered(fn: Callable, items: Sequence, workers: int) -> list:
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _sampled_frames(
    m: ModelSpace, k: int, want: str, n: int, seed: int, extra_frames: Sequence[PlaneFrame]
) -> list[PlaneFrame]:
    frames = list(extra_frames)
    frames.extend(adapted_frames(m, k, want))
    frames.extend(random_frame(m, k, want, derived_seed(seed, i)) for i in range(n))
    return frames


def _constancy_verdict(
    prop: str,
    frames: Sequence[PlaneFrame],
    profile_fn: Callable,
    seed: int,
    workers: int,
    notes: tuple = (),
) -> Verdict:
    profiles = _map_ordered(profile_fn, frames, workers)
    reference = profiles[0]
    witnesses: tuple = ()
    holds = True
    for fr, prof in zip(frames, profiles):
        if prof != reference:
            holds = False
            witnesses = ((frames[0], reference), (fr, prof))
            break
    return Verdict(
        property=prop,
        holds=holds,
        reference_profile=reference,
        samples=len(frames),
        seed=seed,
        witnesses=witnesses,
        notes=notes,
    )


def check_ip(
    m: ModelSpace,
    want: str,
    n: int = 50,
    seed: int = 0,
    extra_frames: Sequence[PlaneFrame] = (),
    workers: int = 1,
) -> Verdict:
    """Is the Jordan type of the skew-symmetric operator constant on
    sampled 2-planes of the wanted causal type?"""
    frames = _sampled_frames(m, 2, want, n, seed, extra_frames)
    return _constancy_verdict(
        f"{want}-Jordan-IP",
        frames,
        lambda fr: ip_profile(m, fr),
        seed,
        workers,
    )


def check_stanilov(
    m: ModelSpace,
    k: int,
    want: str,
    n: int = 50,
    seed: int = 0,
    extra_frames: Sequence[PlaneFrame] = (),
    workers: int = 1,
) -> Verdict:
    """Is the Jordan type of the higher order operator constant on sampled
    k-planes of the wanted causal type?"""
    if k < 2:
        raise ValueError("Stanilov check needs k >= 2")
    frames = _sampled_frames(m, k, want, n, seed, extra_frames)
    return _constancy_verdict(
        f"k={k} {want}-Jordan-Stanilov",
        frames,
        lambda fr: stanilov_profile(m, fr),
        seed,
        workers,
    )


def sample_points(g: PolynomialMetric, count: int, seed: int) -> list[tuple]:
    """Deterministic rational points, skipping metric-degenerate ones."""
    rng = random.Random(seed)
    points: list[tuple] = []
    attempts = 0
    while len(points) < count and attempts < 50 * count:
        attempts += 1
        p = tuple(
            Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(g.dim)
        )
        try:
            metric_jets(g, p)
        except DegenerateAtPointError:
            continue
        points.append(p)
    if len(points) < count:
        raise DegenerateAtPointError("could not find enough nondegenerate points")
    return points


@dataclass(frozen=True)
class MetricPointReport:
    point: tuple
    verdict: Verdict


@dataclass(frozen=True)
class MetricCheckReport:
    """Per-point verdicts plus an informational cross-point comparison.

    The pointwise definition allows the Jordan type to vary with the
    point, so cross_point_consistent does not affect all_hold.
    """

    property: str
    all_hold: bool
    cross_point_consistent: bool
    points: tuple  # of MetricPointReport
    seed: int
    notes: tuple = ()


def check_metric(
    g: PolynomialMetric,
    kind: str,
    want: str,
    k: int = 2,
    points: int = 3,
    planes_per_point: int = 20,
    seed: int = 0,
    workers: int = 1,
    extra_frames_fn: Callable | None = None,
) -> MetricCheckReport:
    """Run the model-level check at sampled rational points of a metric.

    extra_frames_fn(point, model) may supply point-specific battery
    frames (used to carry the named witness planes to the metric level).
    """
    if kind not in ("ip", "stanilov"):
        raise ValueError("kind must be 'ip' or 'stanilov'")
    pts = sample_points(g, points, seed)
    reports = []
    notes: list[str] = []
    for i, p in enumerate(pts):
        model = curvature_at(g, p)
        sub_seed = derived_seed(seed, 100 + i)
        extra = tuple(extra_frames_fn(p, model)) if extra_frames_fn else ()
        if kind == "ip":
            verdict = check_ip(
                model, want, planes_per_point, sub_seed, extra_frames=extra, workers=workers
            )
        else:
            verdict = check_stanilov(
                model, k, want, planes_per_point, sub_seed, extra_frames=extra, workers=workers
            )
        reports.append(MetricPointReport(point=p, verdict=verdict))
    all_hold = all(r.verdict.holds for r in reports)
    refs = [r.verdict.reference_profile for r in reports]
    cross = all_hold and all(r == refs[0] for r in refs)
    prop = f"{want}-Jordan-IP" if kind == "ip" else f"k={k} {want}-Jordan-Stanilov"
    return MetricCheckReport(
        property=f"metric {prop}",
        all_hold=all_hold,
        cross_point_consistent=cross,
        points=tuple(reports),
        seed=seed,
        notes=tuple(notes),
    )


def normalize_basis_3s(g: PolynomialMetric, point: Sequence) -> tuple[Matrix, bool]:
    """Curvature-homogeneity normalization for the three-block family.

    Builds the basis U_i = du_i + eps_i dt_i + rho_i dv_i,
    T_i = dt_i + eps_i dv_i, V_i = dv_i whose corrections cancel
    g(U_i, U_i) and R(U_i, U_j, U_j, U_i) exactly, and checks that the
    pulled-back pointwise model equals the canonical model entry for
    entry.
    """
    if g.dim % 3:
        raise ValueError("metric is not in the three-block family")
    s = g.dim // 3
    point = [Fraction(x) for x in point]
    model = curvature_at(g, point)
    # uu-block sectional entries; the corrections must satisfy
    # 2*eps_i + 2*eps_j + c_ij = 0 for all i != j
    c = [[model.curv[i][j][j][i] for j in range(s)] for i in range(s)]
    eps: list[Fraction] = []
    if s == 2:
        eps = [-c[0][1] / 4, -c[0][1] / 4]
    else:
        for i in range(s):
            j, k = [x for x in range(s) if x != i][:2]
            eps.append(-(c[i][j] + c[i][k] - c[j][k]) / 4)
        for i in range(s):
            for j in range(s):
                if i != j and 2 * eps[i] + 2 * eps[j] + c[i][j] != 0:
                    raise NormalizationFailedError(
                        f"uu-block entries are not of split form at ({i},{j})"
                    )
    g0 = model.metric
    rho = [eps[i] ** 2 / 2 - g0[i][i] / 2 for i in range(s)]
    n = 3 * s
    cols = []
    for i in range(s):
        col = [Fraction(0)] * n
        col[i] = Fraction(1)
        col[s + i] = eps[i]
        col[2 * s + i] = rho[i]
        cols.append(col)
    for i in range(s):
        col = [Fraction(0)] * n
        col[s + i] = Fraction(1)
        col[2 * s + i] = eps[i]
        cols.append(col)
    for i in range(s):
        col = [Fraction(0)] * n
        col[2 * s + i] = Fraction(1)
        cols.append(col)
    B = Matrix.from_columns(cols)
    pulled = apply_isomorphism(model, B)
    check = models_equal(pulled, model_V3s(s))
    return B, check


def _projection_onto(metric: Matrix, columns: Sequence[Sequence]) -> Matrix:
    """g-orthogonal projection onto the span of the given column vectors."""
    Y = Matrix.from_columns(columns)
    gram = Y.transpose() * metric * Y
    return Y * gram.inverse() * Y.transpose() * metric


@dataclass(frozen=True)
class Theorem14Report:
    ok: bool
    identity_ok: bool
    square_identity_ok: bool | None
    stanilov: Verdict
    samples: int
    notes: tuple


def verify_theorem_1_4(
    g: Matrix,
    phi: SelfAdjointMap,
    c,
    k: int,
    want: str = "spacelike",
    n: int = 50,
    seed: int = 0,
) -> Theorem14Report:
    """Exact identity check for isometry-generated curvature tensors.

    On every sampled definite k-frame of R = c*R_phi with phi an isometry
    and phi^2 = Id, asserts theta = -2(k-1)c^2 * P onto the phi-image of
    the plane (factor 2 from the ordered-sum convention), and for k = 2
    also normalized_square = -c^2 * P.
    """
    if classify_phi(g, phi) != "isometry" or (phi.matrix * phi.matrix) != Matrix.identity(g.rows):
        raise PhiNotAdmissibleError("need an isometry with phi^2 = Id")
    c = Fraction(c)
    model = build_R_phi(g, phi, c)
    identity_ok = True
    square_ok: bool | None = True if k == 2 else None
    factor = Fraction(-2 * (k - 1)) * c * c
    for i in range(n):
        fr = random_frame(model, k, want, derived_seed(seed, i))
        pushed = [phi.matrix.apply(v) for v in fr.vectors]
        proj = _projection_onto(g, pushed)
        if theta(model, fr) != proj.scale(factor):
            identity_ok = False
            break
        if k == 2 and skew_curv(model, fr).normalized_square != proj.scale(-c * c):
            square_ok = False
            break
    stan = check_stanilov(model, k, want, n, seed)
    notes = ("theta coefficient reported under the ordered-sum convention",)
    ok = identity_ok and (square_ok is not False) and stan.holds
    return Theorem14Report(
        ok=ok,
        identity_ok=identity_ok,
        square_identity_ok=square_ok,
        stanilov=stan,
        samples=n,
        notes=notes,
    )


@dataclass(frozen=True)
class Theorem15Report:
    theta_charpoly_constant: bool
    square_charpoly_constant: bool
    bridge_ok: bool
    coherent: bool
    samples: int
    notes: tuple


def verify_theorem_1_5_samples(m: ModelSpace, n: int = 50, seed: int = 0) -> Theorem15Report:
    """Riemannian 2-plane sampler for the Stanilov/IP eigenvalue bridge.

    Checks that char_poly(theta) is constant across samples iff
    char_poly(normalized_square) is, and that theta equals twice the
    normalized square on each sample.
    """
    n_neg, n_zero, _ = signature(m.metric)
    if n_neg or n_zero:
        raise NotRiemannianError("metric must be positive definite")
    theta_cps = []
    nsq_cps = []
    bridge_ok = True
    for i in range(n):
        fr = random_frame(m, 2, "spacelike", derived_seed(seed, i))
        th = theta(m, fr)
        nsq = skew_curv(m, fr).normalized_square
        if th != nsq.scale(2):
            bridge_ok = False
        theta_cps.append(char_poly(th))
        nsq_cps.append(char_poly(nsq))
    theta_const = all(cp == theta_cps[0] for cp in theta_cps)
    nsq_const = all(cp == nsq_cps[0] for cp in nsq_cps)
    notes = []
    if m.dim in (3, 7):
        notes.append(
            "dimensions 3 and 7 are excluded from the general statement; "
            "no claim is made here"
        )
    return Theorem15Report(
        theta_charpoly_constant=theta_const,
        square_charpoly_constant=nsq_const,
        bridge_ok=bridge_ok,
        coherent=theta_const == nsq_const,
        samples=n,
        notes=tuple(notes),
    )


def v3s_ip_witness_frames(s: int) -> list[PlaneFrame]:
    """The timelike witness pair (T_1, T_2) and (Z_1^-, Z_2^-)."""
    n = 3 * s

    def basis(i):
        return [Fraction(int(j == i)) for j in range(n)]

    def z_minus(i):
        return [
            Fraction(int(j == i)) - Fraction(1, 2) * int(j == 2 * s + i)
            for j in range(n)
        ]

    return [
        PlaneFrame([basis(s + 0), basis(s + 1)]),
        PlaneFrame([z_minus(0), z_minus(1)]),
    ]


def v3s_stanilov_witness_frames(s: int, k: int) -> tuple[PlaneFrame, PlaneFrame]:
    """The timelike rank-table witness pair for 2 <= k < 2s."""
    if not 2 <= k < 2 * s:
        raise ValueError("witness pair exists for 2 <= k < 2s")
    n = 3 * s

    def t_vec(i):
        return [Fraction(int(j == s + i)) for j in range(n)]

    def z_minus(i):
        return [
            Fraction(int(j == i)) - Fraction(1, 2) * int(j == 2 * s + i)
            for j in range(n)
        ]

    if k <= s:
        pi1 = [t_vec(i) for i in range(k)]
        pi2 = [t_vec(i) for i in range(k - 2)] + [z_minus(0), z_minus(1)]
    else:
        pi1 = [t_vec(i) for i in range(s)] + [z_minus(i) for i in range(k - s)]
        pi2 = [t_vec(i) for i in range(s - 1)] + [z_minus(i) for i in range(k + 1 - s)]
    return PlaneFrame(pi1), PlaneFrame(pi2)


def v3s_stanilov_witness_ranks(s: int, k: int) -> tuple[int, int]:
    """Displayed rank table for the witness pair."""
    if 2 <= k <= s + 1:
        return (0, 2)
    return (k - s, k + 1 - s)
