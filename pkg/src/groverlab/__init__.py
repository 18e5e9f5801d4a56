"""groverlab: analytics, simulation, and cost bounds for amplitude-amplification search.

The package is organized by layer:

    analytics   closed-form amplitudes, success probabilities, iteration
                counts, optimal stopping, limit constants
    simulator   exact statevector iteration for arbitrary table sizes,
                diffusion operators, the collapsed 2-D fast path, and a
                binary snapshot format
    search      known-count, restart-optimal, and unknown-count strategies
                with full lookup accounting
    counting    Fourier period estimation of the number of marked entries
    bounds      query lower bounds and the inequalities behind them
    cli         command-line front end (analyze, search, count, bounds,
                reproduce-paper)
"""

from .analytics import (
    AmplitudePair,
    ProblemShape,
    StoppingPlan,
    amplitudes,
    averaged_success,
    optimal_iterations,
    optimal_stopping,
    shape,
    success_probability,
    trig_sum,
    z_constant,
)
from .bounds import (
    BoundReport,
    compare_grover_to_bound,
    lower_bound_multi,
    lower_bound_unique,
    proposition_checks,
    queries_for_majority,
)
from .config import TOLERANCES, Tolerances
from .counting import (
    CountingEstimate,
    JRegister,
    build_j_register,
    count_with_regime,
    dft,
    estimate_t,
    inverse_dft,
    joint_state_crosscheck,
    next_power_of_two,
    spectrum,
)
from .rng import as_generator, derive_seed, make_rng
from .search import (
    SearchOutcome,
    UnknownTConfig,
    average_success_check,
    search_known_t,
    search_restart_optimal,
    search_unknown_t,
)
from .simulator import (
    DiffusionOperator,
    OracleSpec,
    StateVector,
    apply_diffusion,
    apply_phase_flip,
    collapsed_simulate,
    grover_iterate,
    load_statevector,
    measure,
    save_statevector,
    success_curve,
    uniform_state,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudePair",
    "BoundReport",
    "CountingEstimate",
    "DiffusionOperator",
    "JRegister",
    "OracleSpec",
    "ProblemShape",
    "SearchOutcome",
    "StateVector",
    "StoppingPlan",
    "Tolerances",
    "TOLERANCES",
    "UnknownTConfig",
    "amplitudes",
    "apply_diffusion",
    "apply_phase_flip",
    "as_generator",
    "average_success_check",
    "averaged_success",
    "build_j_register",
    "collapsed_simulate",
    "compare_grover_to_bound",
    "count_with_regime",
    "derive_seed",
    "dft",
    "estimate_t",
    "grover_iterate",
    "inverse_dft",
    "joint_state_crosscheck",
    "load_statevector",
    "lower_bound_multi",
    "lower_bound_unique",
    "make_rng",
    "measure",
    "next_power_of_two",
    "optimal_iterations",
    "optimal_stopping",
    "proposition_checks",
    "queries_for_majority",
    "save_statevector",
    "search_known_t",
    "search_restart_optimal",
    "search_unknown_t",
    "shape",
    "spectrum",
    "success_curve",
    "success_probability",
    "trig_sum",
    "uniform_state",
    "z_constant",
]
