"""Cyclic pursuit of N bugs constrained to the unit circle."""

__version__ = "0.1.0"

from .analytic import (
    DegenerateConfiguration,
    classify_3,
    classify_4,
    exact_cycle_probability,
    four_bug_probability_by_quadrature,
    stability_probability_3,
)
from .dynamics import (
    BugConfiguration,
    SimParams,
    default_dt,
    direction,
    directions,
    from_angles,
    gap_rates,
    gaps,
    step,
    wrap_angle,
)
from .monte_carlo import (
    PowerLawFit,
    ProbabilityEstimate,
    SweepRow,
    default_alphas,
    estimate_cycle_probability,
    fit_power_law,
    fit_power_law_arrays,
    sample_initial,
    stability_experiment,
    sweep,
    trial_rng,
)
from .order_param import OrderParameterSample, order_parameter, psi_slope, track
from .steady_state import (
    Outcome,
    TrialResult,
    all_same_direction,
    classify_now,
    is_groups,
    run_full,
    run_to_classification,
    winding_number,
    within_open_semicircle,
)
