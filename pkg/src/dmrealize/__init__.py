"""Distance matrices of weighted generalized Petersen and Kneser graphs."""

from .characterize import (
    ConditionResult,
    FrameCertificate,
    TheoremScopeError,
    Verdict,
    check_condition_a,
    check_condition_b,
    check_condition_c,
    check_condition_d,
    classify,
    realize,
    verify_realization,
)
from .graph import (
    FamilySpec,
    WeightedGraph,
    generate_generalized_petersen,
    generate_kneser,
    generate_odd_graph,
    girth,
    gp_girth_precondition,
)
from .isomorphism import are_isomorphic
from .metric import (
    DistanceMatrix,
    all_pairs_distances,
    geodesics,
    is_indecomposable,
    profile,
    useful_edges,
    usefulness_indecomposability_consistency,
)

__version__ = "0.1.0"
