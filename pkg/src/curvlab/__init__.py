"""curvlab: exact-arithmetic lab for pseudo-Riemannian curvature spectral
geometry.

Builds model spaces and polynomial coordinate metrics, computes the
skew-symmetric and higher order curvature operators on sampled
spacelike/timelike planes, and decides (with witnesses) whether the
Ivanov-Petrova and k-Stanilov conditions hold.
"""

from .exact import (
    Matrix,
    MultiPoly,
    Rat,
    UniPoly,
    char_poly,
    mat_inverse,
    mat_rank,
    rational_roots,
    signature,
)
from .grassmann import PlaneFrame, causal_type, cayley_orthogonal, gram, random_frame, same_plane
from .metrics import (
    PolynomialMetric,
    christoffel,
    curvature_at,
    metric_g_3s,
    metric_g_F,
    metric_g_f,
    metric_jets,
)
from .modelspace import (
    ModelSpace,
    SelfAdjointMap,
    apply_isomorphism,
    build_R_phi,
    classify_phi,
    curvature_operator,
    hypersurface_model,
    model_V3s,
    validate_model,
)
from .spectral import JordanProfile, ell, jordan_profile, profiles_equal, skew_curv, theta

__version__ = "0.1.0"
