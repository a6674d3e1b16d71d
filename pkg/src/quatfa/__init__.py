"""Finite-dimensional quaternionic functional analysis.

Quaternion arithmetic, H-bimodules and their real parts, Hilbertian bimodule
norms, the three forms of quaternionic Hilbert space with converters between
them, and H-B*-algebras with their representations and Gelfand transform.
"""

from .errors import (
    AlgebraClosureError,
    BimoduleValidationError,
    InvalidGeneratorError,
    InvalidRepresentationError,
    InvalidSubspaceError,
    NoSeparatorError,
    NotCommutativeError,
    NotIntertwiningError,
    QuatfaError,
    RankDeficiencyError,
    UnsupportedNormError,
)
from .hbstar import (
    AlgebraElement,
    HStarAlgebra,
    bstar_norm,
    complexify_algebra,
    decompose,
    gelfand_transform,
    gn_representation,
    is_normal_algebra,
    jk_embedding,
    real_representation,
)
from .hhilbert import (
    DualElementYr,
    HilbertHBimodule,
    HTensorElement,
    RightHModule,
    TwoSidedInner,
    collapse_two_sided,
    cone_membership,
    delta_iso,
    dual_norms,
    epsilon_norm,
    from_pi,
    gram_schmidt,
    hil_norm,
    induce_left_mult,
    intertwine_left_structures,
    opposite,
    phi_isometry_check,
    riesz_represent,
    two_sided_from_bimodule,
)
from .hmodule import (
    BoundedHMap,
    HBimodule,
    HVector,
    complexify,
    make_hthlr,
    make_hthr,
    polarize,
    psi_inverse,
    psi_restrict,
    quaternionize,
    re_project,
    reassemble,
    structure_iso,
)
from .hnormed import (
    HNorm,
    check_norm_equivalence,
    dual_module,
    functional_norm,
    functional_tilde,
    hahn_banach_extend,
    op_norm,
    separate_point,
    sub_bimodule,
)
from .quat_core import BasisElement, DualFunctional, Quaternion, conj, embed_complex, inv, mul, norm, to_m4

__version__ = "0.1.0"
