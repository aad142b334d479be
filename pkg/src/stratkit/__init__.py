"""stratkit: subspace deviation metrics and sampled stratification regularity checks."""

__version__ = "0.1.0"

from .subspaces import (  # noqa: F401
    DimensionMismatchError,
    Subspace,
    ZeroSubspaceError,
    orthonormalize,
    principal_sines,
    project,
)
from .grassmann import (  # noqa: F401
    NonTransverseError,
    ProjectiveLine,
    dist_D,
    dist_d,
    dist_delta,
    dist_projective,
    dist_vec,
    graph_subspace,
    intersect,
    intersection_distance_bound,
    lambda_angle,
    projection_lipschitz_bound,
    vertical_separation_bound,
    vertical_subspace,
)
from .exprlang import (  # noqa: F401
    Dual,
    ExprEvalError,
    ExprSyntaxError,
    eval_dual,
    eval_expr,
    format_expr,
    parse,
)
from .strata import (  # noqa: F401
    RankDeficiencyError,
    SampleSchedule,
    Stratification,
    StratifiedMap,
    Stratum,
    UnreachableBasePointError,
    frontier_check,
    graph_stratification,
    image_stratification,
    sample_near,
    tangent_at,
)
from .regularity import (  # noqa: F401
    IntersectionDimensionError,
    RegularityVerdict,
    ShellStat,
    Thresholds,
    secant_vertical_identity,
    theorem_suite_projection,
    theorem_suite_transversal,
    verdier_stats,
    verdier_verdict,
    wbl_verdict,
    whitney_b_stats,
    whitney_b_verdict,
    wl_ratio_stats,
    wl_verdict,
)
