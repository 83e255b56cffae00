"""Predictable task-plan optimization for open-TSP tasks under a Boltzmann observer.

Plans are permutations of targets visited from a fixed start.  A noisy-rational
observer who has seen the first t targets infers the rest; this package
computes that inference probability exactly and via an l-best truncation,
optimizes plans for it, and validates the model with simulated observers.
"""

__version__ = "0.1.0"

from .errors import (
    DegenerateLayout,
    DegenerateVariance,
    EmptyCostList,
    GenerationStalled,
    HorizonExceeded,
    InvalidArgument,
    InvalidPlan,
    InvalidPrefix,
    NonFiniteCost,
    TpredError,
)
from .geometry import (
    BBox,
    Layout,
    MIN_SEPARATION,
    Plan,
    Point2,
    PrefixSplit,
    UNIT_SQUARE,
    enumerate_plans,
    path_cost,
    prefix_cost,
    remainder_cost,
    validate_layout,
)
from .observer import (
    DEFAULT_BETA,
    Rationality,
    RemainderDistribution,
    boltzmann_distribution,
    enumerate_remainders,
    posterior_over_remainders,
    t_predictability_exact,
)
from .lbest import LBestResult, entering_edge_bound, lbest_remainders, t_predictability_approx
from .planner import (
    PlannerSpec,
    PredictabilityMatrix,
    k_predictability_matrix,
    plan_optimal,
    plan_t_predictable,
)
from .generation import (
    GeneratorConfig,
    filter_distinguishable,
    filter_no_confounds,
    generate_layouts,
    rank_by_info_gain,
)
from .evaluation import (
    EvalRecord,
    evaluate,
    levenshtein,
    pearson_correlation,
    sample_observer,
)
from .io import read_layout_file, write_layout_file, write_results_table, write_sweep_table

__all__ = [
    "BBox",
    "DEFAULT_BETA",
    "DegenerateLayout",
    "DegenerateVariance",
    "EmptyCostList",
    "EvalRecord",
    "GenerationStalled",
    "GeneratorConfig",
    "HorizonExceeded",
    "InvalidArgument",
    "InvalidPlan",
    "InvalidPrefix",
    "LBestResult",
    "Layout",
    "MIN_SEPARATION",
    "NonFiniteCost",
    "Plan",
    "PlannerSpec",
    "Point2",
    "PredictabilityMatrix",
    "PrefixSplit",
    "Rationality",
    "RemainderDistribution",
    "TpredError",
    "UNIT_SQUARE",
    "boltzmann_distribution",
    "entering_edge_bound",
    "enumerate_plans",
    "enumerate_remainders",
    "evaluate",
    "filter_distinguishable",
    "filter_no_confounds",
    "generate_layouts",
    "k_predictability_matrix",
    "lbest_remainders",
    "levenshtein",
    "path_cost",
    "pearson_correlation",
    "plan_optimal",
    "plan_t_predictable",
    "posterior_over_remainders",
    "prefix_cost",
    "rank_by_info_gain",
    "read_layout_file",
    "remainder_cost",
    "sample_observer",
    "t_predictability_approx",
    "t_predictability_exact",
    "validate_layout",
    "write_layout_file",
    "write_results_table",
    "write_sweep_table",
]
