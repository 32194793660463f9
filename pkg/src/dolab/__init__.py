"""dolab: a desk-scale verification laboratory for double-oracle game dynamics.

Exact-rational game model (DAG-structured two-player stochastic games with
observations), best-response oracles, equilibrium solvers, iterative dynamics
with pluggable tiebreaking, five counterexample game families, and a CLI
harness that machine-checks their iteration-count schedules.
"""

from .best_response import (
    BestResponseResult,
    best_response,
    count_best_responses,
    is_best_response,
)
from .dynamics import (
    ExplicitSchedule,
    LastAddedMetaNash,
    RunTrace,
    Schedule,
    TiebreakPolicy,
    run_alpha_double_oracle,
    run_best_response_dynamics,
    run_double_oracle,
    run_fictitious_play,
)
from .equilibrium import (
    EquilibriumResult,
    UniquenessCertificate,
    enumerate_nash_bimatrix,
    is_unique_zero_sum_equilibrium,
    nash_gap,
    solve_zero_sum,
    verify_equilibrium,
)
from .families import (
    FAMILIES,
    bigger_number_matrix,
    bigger_number_posg,
    decode_policy,
    encode_policy,
    encode_policy_for,
    guess_the_string,
    guess_the_string_matrix,
    incrementing_matrix,
    incrementing_posg,
    init_for_theorem,
    make_game,
    matching_pennies_chain,
    schedule_for_theorem,
    state_count,
    weak_bigger_number_matrix,
    weak_bigger_number_posg,
)
from .posg import (
    MixedPolicy,
    NormalFormGame,
    Posg,
    PurePolicy,
    build_posg,
    delta,
    evaluate_mixed,
    evaluate_profile,
    induced_normal_form,
    is_fully_observable,
    is_tree_form,
    mixed,
    normal_form,
    policy_count,
    policy_from_index,
    policy_index,
    posg_from_normal_form,
    reachable_observation_sequences,
    reduce_dominated,
    reduce_strictly_dominated,
)

__version__ = "0.1.0"
