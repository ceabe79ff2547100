"""Exact core imputations of matching and b-matching games.

All analysis runs over exact rationals: worths, duality gaps, core
membership and payment questions are decided by equality tests, never
by tolerances.
"""

from .games import (
    CapExceeded,
    Coalition,
    Edge,
    GameInstance,
    connected_coalitions,
    induce_subgame,
    make_game,
    validate_game,
)
from .gamelp import DualSolution, build_dual_lp, build_primal_lp, solve_dual, verify_duality
from .simplex import LinearProgram, LPSolution, solve_lp, solve_over_optimal_face
from .matchings import (
    MatchingVector,
    birkhoff_decompose,
    brute_force_optima,
    check_half_integral,
    classify_edge,
    classify_vertex,
    fractional_optimum,
)
from .analysis import (
    Imputation,
    antipodal_imputations,
    always_fairly_paid,
    check_concurrency,
    core_imputation_from_dual,
    degeneracy_report,
    is_core_imputation,
    meet_join,
    paid_sometimes,
    worth,
)
from .bmatching import (
    CoalitionSystem,
    SplitScheme,
    coalition_system,
    con_imputation_from_dual,
    core_membership_via_system,
    gen_imputation_from_dual,
    in_dual_image,
    in_dual_image_con,
    in_dual_image_gen,
    in_dual_image_uncon,
    uncon_imputation_from_dual,
    uniform_dual_from_imputation,
    uniform_imputation_from_dual,
)
from .gamefile import parse_game, render_game
from .rationals import Rational, compare, format_rational, parse_rational

__all__ = [name for name in dir() if not name.startswith("_")]
