"""steinlab: exact identities, predictions, and Monte Carlo for random
multiplicative sums and their Dirichlet-polynomial time averages."""

from .sieve import (
    MAX_SIEVE_LIMIT,
    CapacityError,
    CountTable,
    FactorSieve,
    build_sieve,
    count_table,
    e_count,
    factorize,
)
from .sathe import (
    PhiEvaluator,
    SathePrediction,
    delta_eps,
    l2_exponent_y,
    log_gamma,
    phi,
    phi_evaluator,
    sathe_predict,
)
from .moments import (
    BudgetExceededError,
    EnergyResult,
    HomogeneousMoment,
    energy_brute,
    energy_fast,
    fourth_moment_homog_all,
    fourth_moment_homog_brute,
    fourth_moment_homog_identity,
    helson_upper_bound,
    l4_asymptotic_fit,
    pair_budget,
    projection_beta_l2,
    ratio_4_2,
)
from .chaos import (
    ChaosSample,
    MomentEstimate,
    ProjectionCheck,
    ProjectionRow,
    SamplerConfig,
    draw_sample,
    estimate_moment,
    projection_coeff_check,
    tail_probability,
)
from .dirichlet import (
    DirichletGrid,
    dirichlet_sum,
    large_values_fraction,
    make_grid,
    time_average_moment,
)
from .exponents import (
    HELSON_REFERENCE,
    THEOREM_BOUND,
    ExponentReport,
    exponent_report,
    lower_bound_exponent,
    optimal_y,
    theorem_constant,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_SIEVE_LIMIT",
    "CapacityError",
    "CountTable",
    "FactorSieve",
    "build_sieve",
    "count_table",
    "e_count",
    "factorize",
    "PhiEvaluator",
    "SathePrediction",
    "delta_eps",
    "l2_exponent_y",
    "log_gamma",
    "phi",
    "phi_evaluator",
    "sathe_predict",
    "BudgetExceededError",
    "EnergyResult",
    "HomogeneousMoment",
    "energy_brute",
    "energy_fast",
    "fourth_moment_homog_all",
    "fourth_moment_homog_brute",
    "fourth_moment_homog_identity",
    "helson_upper_bound",
    "l4_asymptotic_fit",
    "pair_budget",
    "projection_beta_l2",
    "ratio_4_2",
    "ChaosSample",
    "MomentEstimate",
    "ProjectionCheck",
    "ProjectionRow",
    "SamplerConfig",
    "draw_sample",
    "estimate_moment",
    "projection_coeff_check",
    "tail_probability",
    "DirichletGrid",
    "dirichlet_sum",
    "large_values_fraction",
    "make_grid",
    "time_average_moment",
    "HELSON_REFERENCE",
    "THEOREM_BOUND",
    "ExponentReport",
    "exponent_report",
    "lower_bound_exponent",
    "optimal_y",
    "theorem_constant",
]
