"""Minimax, negamax, alpha-beta and transposition-table search on explicit
game trees, with a brute-force witness checker for depth-limited results."""

from .alphabeta import (
    Window,
    alphabeta_failhard,
    alphabeta_failsoft,
    is_ab_result,
    is_negamax_ab_result,
    is_partial_negamax_ab_result,
    pnm,
)
from .harness import (
    Call,
    GeneratorConfig,
    Violation,
    find_counterexample,
    find_ttm_counterexample,
    fuzz,
    gen_tree,
    replay,
    shrink,
)
from .reference import (
    ContractError,
    NotTurnBasedError,
    minimax_alg,
    minimax_depth,
    minimax_spec,
    negamax_alg,
    negamax_depth,
    negamax_spec,
)
from .table import Flag, TableEntry, TranspositionTable, perturb_table
from .tree import (
    BoundError,
    Color,
    Node,
    ParseError,
    height,
    is_turn_based,
    leaf,
    make_node,
    node_count,
    parse,
    serialize,
    structurally_equal,
    truncate,
)
from .ttsearch import HybridOptions, negamax_ttm, negamax_ttw, negamax_ttw_hybrid
from .witness import (
    GUARD_EXCEEDED,
    WitnessReport,
    check_negamax_tt_result,
    check_valid_table,
    check_valid_table_entry,
    count_aon_expansions,
    enumerate_aon_expansions,
    is_aon_expansion,
    witness_value_set,
)

__version__ = "0.1.0"
