"""Geometric predicates of finite-dimensional normed spaces.

Spaces are immutable :class:`SpaceSpec` values (p-norms, polytope gauges,
two capsule gauges, and induced operator-norm spaces); on top of them the
package decides Birkhoff orthogonality and its strong and approximate
variants, norm parallelism, attainment sets, semi-rotund and exposed
points, and runs randomized suites that replay the structure theorems
behind those notions.
"""
from .errors import (
    ConstructionFailed,
    DimensionMismatch,
    InternalInconsistency,
    NormGeoError,
    ParseError,
    UndefinedInput,
    UnsupportedSpace,
)
from .instances import (
    aligned_rank_one,
    corner_semirotund_point,
    flat_attainment_pair,
    idempotent_disjoint_ranges,
    independent_parallel_pair,
    nilpotent_collapse_chain,
    replicating_pair,
    truncated_shift,
    two_component_attainment_pair,
)
from .operators import (
    LinearOperator,
    NormAttainmentSet,
    OperatorNormResult,
    ScanReport,
    apply,
    attainment_set,
    op_space,
    operator_from_dict,
    operator_norm,
    rank_one,
    semi_rotund_witness,
    strong_orth_scan,
    witness_birkhoff_pointwise,
    witness_parallel_pointwise,
)
from .relations import (
    SublevelInterval,
    Verdict,
    is_approx_birkhoff,
    is_approx_parallel,
    is_birkhoff,
    is_exposed_point,
    is_hyperspace_approx_orth,
    is_parallel,
    is_semi_rotund_point,
    is_strong_birkhoff,
    line_min,
    orthogonality_certificate,
    parallel_eps_certificate,
    sublevel_interval,
    subspace_min,
)
from .spaces import (
    SpaceSpec,
    batch_norm,
    cylcap3,
    dir_deriv,
    dir_deriv_detailed,
    dual_norm_eval,
    extreme_points,
    has_extreme_enumeration,
    lp,
    norm_eval,
    norming_functional,
    polyhedral,
    space_from_dict,
    space_tolerance,
    sphere_sample,
    stadium2,
)
from .suites import (
    SuiteReport,
    check_idempotent_ranges,
    check_monotone_transfer,
    check_nilpotent_nonparallel,
    check_orthogonality_split,
    check_parallel_attainment,
    check_strict_convexity_parallelism,
    gen_idempotent_pair,
    gen_nilpotent,
    gen_operator,
    reproduce_catalog,
)
from .tolerances import (
    ATTAIN_TOL,
    DEFAULT_SEED,
    DEP_RATIO,
    EQ_TOL,
    SAMPLE_TOL,
    SB_WIDTH,
)

__version__ = "0.1.0"

__all__ = [
    "ATTAIN_TOL",
    "ConstructionFailed",
    "DEFAULT_SEED",
    "DEP_RATIO",
    "DimensionMismatch",
    "EQ_TOL",
    "InternalInconsistency",
    "LinearOperator",
    "NormAttainmentSet",
    "NormGeoError",
    "OperatorNormResult",
    "ParseError",
    "SAMPLE_TOL",
    "SB_WIDTH",
    "ScanReport",
    "SpaceSpec",
    "SublevelInterval",
    "SuiteReport",
    "UndefinedInput",
    "UnsupportedSpace",
    "Verdict",
    "aligned_rank_one",
    "apply",
    "attainment_set",
    "batch_norm",
    "check_idempotent_ranges",
    "check_monotone_transfer",
    "check_nilpotent_nonparallel",
    "check_orthogonality_split",
    "check_parallel_attainment",
    "check_strict_convexity_parallelism",
    "corner_semirotund_point",
    "cylcap3",
    "dir_deriv",
    "dir_deriv_detailed",
    "dual_norm_eval",
    "extreme_points",
    "flat_attainment_pair",
    "gen_idempotent_pair",
    "gen_nilpotent",
    "gen_operator",
    "has_extreme_enumeration",
    "idempotent_disjoint_ranges",
    "independent_parallel_pair",
    "is_approx_birkhoff",
    "is_approx_parallel",
    "is_birkhoff",
    "is_exposed_point",
    "is_hyperspace_approx_orth",
    "is_parallel",
    "is_semi_rotund_point",
    "is_strong_birkhoff",
    "line_min",
    "lp",
    "nilpotent_collapse_chain",
    "norm_eval",
    "norming_functional",
    "op_space",
    "operator_from_dict",
    "operator_norm",
    "orthogonality_certificate",
    "parallel_eps_certificate",
    "polyhedral",
    "rank_one",
    "replicating_pair",
    "reproduce_catalog",
    "semi_rotund_witness",
    "space_from_dict",
    "space_tolerance",
    "sphere_sample",
    "stadium2",
    "strong_orth_scan",
    "sublevel_interval",
    "subspace_min",
    "truncated_shift",
    "two_component_attainment_pair",
    "witness_birkhoff_pointwise",
    "witness_parallel_pointwise",
]
