"""Exact solver for weighted limit games.

Given a weighted two-player arena and a DFA over its vertex colors, the
package computes, for every vertex, the optimal limit value (the least
bound Player 0 can guarantee on the weight between consecutive accepted
color prefixes, enforced infinitely often), optimal finite-state
strategies for both players, and the qualitative winning regions; plus
the one-shot reachability variant.  An independent threshold-search
oracle and replayable strategy duels verify the results.
"""

from .core import (
    INFINITY,
    Arena,
    Dfa,
    EdgeSpec,
    FiniteStateStrategy,
    InputError,
    InternalInvariantError,
    Lasso,
    MemoryStructure,
    VertexSpec,
    dfa_run,
    is_finite,
    lasso_violations,
    rank_add,
    rank_text,
    strategy_violations,
    validate_arena,
    validate_dfa,
)
from .formats import (
    export_dot,
    parse_arena,
    parse_dfa,
    parse_strategy,
    serialize_arena,
    serialize_dfa,
    serialize_strategy,
)
from .limit import (
    LimitSolution,
    RankHierarchy,
    build_hierarchy,
    classify_p1,
    extract_limit_strategy_p0,
    extract_limit_strategy_p1,
    limit_fixpoint,
    limit_step,
    strategy_value,
    winning_regions,
)
from .oracle import (
    GenParams,
    buchi_solve,
    eval_limit_value,
    eval_reach_value,
    gen_random_instance,
    gen_sized_instance,
    oracle_limit_value,
    oracle_reach_value,
    simulate_duel,
    threshold_buchi_wins,
)
from .product import (
    ProductArena,
    build_product,
    compose_strategy,
    extend_lasso,
    extend_play,
    memory_from_dfa,
)
from .reach import (
    ReachSolution,
    complete_ranking,
    extract_reach_strategies,
    optimal_successor,
    reach_fixpoint,
    reach_step,
)
from .selfcheck import check_instance

__version__ = "0.1.0"

__all__ = [
    "INFINITY",
    "Arena",
    "Dfa",
    "EdgeSpec",
    "FiniteStateStrategy",
    "GenParams",
    "InputError",
    "InternalInvariantError",
    "Lasso",
    "LimitSolution",
    "MemoryStructure",
    "ProductArena",
    "RankHierarchy",
    "ReachSolution",
    "VertexSpec",
    "buchi_solve",
    "build_hierarchy",
    "build_product",
    "check_instance",
    "classify_p1",
    "complete_ranking",
    "compose_strategy",
    "dfa_run",
    "eval_limit_value",
    "eval_reach_value",
    "export_dot",
    "extend_lasso",
    "extend_play",
    "extract_limit_strategy_p0",
    "extract_limit_strategy_p1",
    "extract_reach_strategies",
    "gen_random_instance",
    "gen_sized_instance",
    "is_finite",
    "lasso_violations",
    "limit_fixpoint",
    "limit_step",
    "memory_from_dfa",
    "optimal_successor",
    "oracle_limit_value",
    "oracle_reach_value",
    "parse_arena",
    "parse_dfa",
    "parse_strategy",
    "rank_add",
    "rank_text",
    "reach_fixpoint",
    "reach_step",
    "serialize_arena",
    "serialize_dfa",
    "serialize_strategy",
    "simulate_duel",
    "strategy_value",
    "strategy_violations",
    "threshold_buchi_wins",
    "validate_arena",
    "validate_dfa",
    "winning_regions",
]
