"""Multi-copy minimum-error state discrimination in bit, qubit, and polygon
theories."""

from .classical import (
    BitStrategyResult,
    PartialResultError,
    bit_exact_3_k,
    bit_optimum_n_le_k,
    bit_upper_bound_g,
    brute_force_bit_oracle,
    g_exact,
    superbound_l,
)
from .gpt import (
    GptMeasurement,
    PolygonTheory,
    StrategyTree,
    StrategyValue,
    bit_theory,
    evaluate_strategy,
    hexagon_ad1_strategy,
    hexagon_fix_strategy,
    pairwise_distinguishable_triples,
    perfectly_distinguishable_pair,
    polygon,
    search_fix_strategy,
    square_nad_strategy,
)
from .lp import LinearProgram, LpSolution, global_program, optimize_over_subsets, sep_program, solve_lp
from .qstates import (
    AdaptiveQubitStrategy,
    GramMatrix,
    Povm,
    PureEnsemble,
    average_state,
    basic_decoding_bound,
    cgu_ensemble,
    double_trine_ad1,
    double_trine_adaptive,
    fidelity_lower_bound,
    gram,
    gram_success,
    gu_lower_bound_h,
    h_exact,
    helstrom,
    min_error_qubit,
    pgm,
    pgm_success,
    pure_upper_bound,
    tetrahedron,
    trine,
    trine_closed_form,
)

__version__ = "0.1.0"
