"""Empirical EFHT upper-bound estimation for multi-objective EAs.

Pipeline: sample per-generation IGD gains while an evolver runs, select
and denoise the samples, fit a power-law gain surface, evaluate
drift-style hitting-time bounds from it, and validate the bounds against
measured hitting times.
"""

from .bounds import (
    BoundEstimate,
    complexity_class,
    efht_upper_closed,
    efht_upper_numeric,
)
from .config import PipelineConfig
from .evolvers import (
    EVOLVER_IDS,
    MoeadState,
    Nsga2State,
    OffspringBatch,
    crowding_distance,
    dominates,
    make_evolver,
    nondominated_sort,
    tchebycheff,
)
from .fitting import (
    FitBox,
    FitParams,
    fit_power_surface,
    lower_bound_violation,
    predict_gain,
    r_squared_log,
    render_expression,
)
from .metrics import IgdTracker, igd, igd_gain, update_best
from .operators import polynomial_mutation, sbx_crossover
from .problems import (
    PROBLEM_IDS,
    Problem,
    ReferenceFront,
    evaluate,
    evaluate_population,
    make_problem,
    random_population,
    reference_front,
)
from .sampling import GainSample, SampleSet, collect, ecdf, probe_generation
from .selection import (
    SelectedSamples,
    loess_smooth,
    remove_zero_gain,
    scale_gains,
    select,
    select_uniform,
)
from .validation import (
    Comparison,
    RunStats,
    StabilityReport,
    Verdict,
    check_bound,
    compare_algorithms,
    measure_fht,
    stability_cv,
)

__version__ = "0.1.0"

__all__ = [
    "BoundEstimate",
    "Comparison",
    "EVOLVER_IDS",
    "FitBox",
    "FitParams",
    "GainSample",
    "IgdTracker",
    "MoeadState",
    "Nsga2State",
    "OffspringBatch",
    "PROBLEM_IDS",
    "PipelineConfig",
    "Problem",
    "ReferenceFront",
    "RunStats",
    "SampleSet",
    "SelectedSamples",
    "StabilityReport",
    "Verdict",
    "check_bound",
    "collect",
    "compare_algorithms",
    "complexity_class",
    "crowding_distance",
    "dominates",
    "ecdf",
    "efht_upper_closed",
    "efht_upper_numeric",
    "evaluate",
    "evaluate_population",
    "fit_power_surface",
    "igd",
    "igd_gain",
    "loess_smooth",
    "lower_bound_violation",
    "make_evolver",
    "make_problem",
    "measure_fht",
    "nondominated_sort",
    "polynomial_mutation",
    "predict_gain",
    "probe_generation",
    "r_squared_log",
    "random_population",
    "reference_front",
    "remove_zero_gain",
    "render_expression",
    "sbx_crossover",
    "scale_gains",
    "select",
    "select_uniform",
    "stability_cv",
    "tchebycheff",
    "update_best",
]
