"""Minimum topic-connected overlay toolkit.

Model, verify, construct and optimize overlay edge sets so that every
topic's subscriber group induces a connected subgraph.
"""

from .charsys import (
    EdgeCodec,
    characteristic_system,
    lift_hs_solution,
    reduce_tco_to_hs,
)
from .core import (
    CapExceeded,
    DominationReduction,
    FormatError,
    Instance,
    Overlay,
    PreconditionError,
    SolveReport,
    ValidationReport,
    emit_instance,
    emit_solution,
    is_topic_connected,
    parse_instance,
    parse_solution,
    preprocess_dominated,
    reattach,
    upper_bound_spanning,
    validate_solution,
)
from .hitting import (
    HsInstance,
    HsSolution,
    hits_all,
    hs_branch_exact,
    hs_greedy_frequency,
    hs_greedy_setwise,
    hs_reduce_rules,
)
from .reductions import (
    Graph,
    HsTcoMeta,
    VcTcoMeta,
    extract_hs_solution,
    extract_vc_solution,
    gen_from_hs,
    gen_from_vc,
    gen_random,
)
from .solvers import (
    greedy_component_merge,
    small_topic_threshold,
    solve_approx_hs,
    solve_auto,
    solve_exact_enum,
    solve_exact_hs,
    solve_star_disjoint,
    solve_trivial_pairs,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "DominationReduction",
    "EdgeCodec",
    "FormatError",
    "Graph",
    "HsInstance",
    "HsSolution",
    "HsTcoMeta",
    "Instance",
    "Overlay",
    "PreconditionError",
    "SolveReport",
    "ValidationReport",
    "VcTcoMeta",
    "characteristic_system",
    "emit_instance",
    "emit_solution",
    "extract_hs_solution",
    "extract_vc_solution",
    "gen_from_hs",
    "gen_from_vc",
    "gen_random",
    "greedy_component_merge",
    "hits_all",
    "hs_branch_exact",
    "hs_greedy_frequency",
    "hs_greedy_setwise",
    "hs_reduce_rules",
    "is_topic_connected",
    "lift_hs_solution",
    "parse_instance",
    "parse_solution",
    "preprocess_dominated",
    "reattach",
    "reduce_tco_to_hs",
    "small_topic_threshold",
    "solve_approx_hs",
    "solve_auto",
    "solve_exact_enum",
    "solve_exact_hs",
    "solve_star_disjoint",
    "solve_trivial_pairs",
    "upper_bound_spanning",
    "validate_solution",
]
