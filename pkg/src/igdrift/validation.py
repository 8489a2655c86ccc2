"""Empirical validation of estimated hitting-time bounds.

Measures first hitting times by running the evolver until the best-so-far
IGD (tracked on parents plus offspring, exactly as during collection)
reaches the target precision; checks bounds against the measured means;
compares algorithms by bound-based versus empirical ranking; and
quantifies estimation stability as the coefficient of variation of
repeatedly fitted parameters.
"""

from dataclasses import dataclass

import numpy as np

from .metrics import igd
from .problems import reference_front
from .rng import ROLE_RUN, stream
from .sampling import default_budget

__all__ = [
    "Comparison",
    "RunStats",
    "StabilityReport",
    "Verdict",
    "check_bound",
    "compare_algorithms",
    "measure_fht",
    "stability_cv",
]


@dataclass(frozen=True)
class RunStats:
    """Per-run first hitting generations and their summary statistics.

    ``mean``/``std`` cover hitting runs only (NaN when none hit);
    ``hit_rate`` discloses the censoring.  ``trajectories`` optionally
    keeps each run's psi sequence for auditing.
    """

    problem: str
    algorithm: str
    n: int
    epsilon: float
    runs: int
    budget: int
    batch_size: int
    hitting_generations: tuple
    hit_rate: float
    mean: float
    std: float
    initial_igd_mean: float
    trajectories: tuple = None

    @property
    def mean_evaluations(self):
        return self.mean * self.batch_size

    @property
    def std_evaluations(self):
        return self.std * self.batch_size


def measure_fht(
    problem,
    evolver,
    epsilon,
    runs,
    seed,
    budget=None,
    front_size=None,
    keep_trajectories=False,
    reference=None,
):
    """Measure first hitting times of ``epsilon`` over independent runs.

    Each run initializes and evolves with its own seed-derived stream and
    stops at the first generation t with best-so-far IGD <= epsilon
    (t = 0 when the initial population already qualifies), or at the
    generation budget (default 500·(n/5)), counted as a non-hit.
    ``reference`` overrides the problem's analytic front when given.
    """
    if runs < 1:
        raise ValueError("runs must be at least 1")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if budget is None:
        budget = default_budget(problem.n)
    ref = reference if reference is not None else reference_front(problem, front_size)
    hits = []
    initials = []
    trajectories = []
    for run in range(runs):
        rng = stream(seed, ROLE_RUN, problem.n, run)
        state = evolver.initialize(problem, rng)
        psi = igd(state.objectives, ref)
        initials.append(psi)
        track = [psi]
        hit = None
        if psi <= epsilon:
            hit = 0
        else:
            for t in range(1, budget + 1):
                batch = evolver.offspring(state, rng)
                combined = np.vstack([state.objectives, batch.objectives])
                psi = min(psi, igd(combined, ref))
                state = evolver.select(state, batch)
                track.append(psi)
                if psi <= epsilon:
                    hit = t
                    break
        if hit is not None:
            hits.append(hit)
        if keep_trajectories:
            trajectories.append(tuple(track))
    hit_arr = np.array(hits, dtype=float)
    return RunStats(
        problem=problem.id,
        algorithm=evolver.algorithm_id,
        n=problem.n,
        epsilon=float(epsilon),
        runs=int(runs),
        budget=int(budget),
        batch_size=int(evolver.batch_size(problem)),
        hitting_generations=tuple(int(h) for h in hits),
        hit_rate=len(hits) / runs,
        mean=float(hit_arr.mean()) if len(hits) else float("nan"),
        std=float(hit_arr.std()) if len(hits) else float("nan"),
        initial_igd_mean=float(np.mean(initials)),
        trajectories=tuple(trajectories) if keep_trajectories else None,
    )


@dataclass(frozen=True)
class Verdict:
    """Outcome of checking one bound against measured hitting times."""

    verdict: str  # correct | violated | rejected
    problem: str
    algorithm: str
    n: int
    epsilon: float
    bound_value: float
    bound_value_evaluations: float
    empirical_mean: float
    empirical_mean_evaluations: float
    empirical_std: float
    r2: float
    hit_rate: float


def check_bound(bound, stats):
    """Classify a bound as correct, violated, or rejected.

    Rejected when the fit's R^2 is non-positive (the bound is excluded
    from consideration); otherwise correct iff the empirical mean hitting
    time does not exceed the bound, both in generations.
    """
    if bound.n != stats.n:
        raise ValueError(f"n mismatch: bound {bound.n} vs stats {stats.n}")
    if bound.epsilon != stats.epsilon:
        raise ValueError(
            f"epsilon mismatch: bound {bound.epsilon} vs stats {stats.epsilon}"
        )
    if bound.batch_size != stats.batch_size:
        raise ValueError(
            "unit mismatch: bound and stats assume different batch sizes "
            f"({bound.batch_size} vs {stats.batch_size})"
        )
    if stats.hit_rate == 0:
        raise ValueError("no run hit epsilon; estimation infeasible at this budget")
    r2 = bound.params.r2
    if r2 <= 0:
        verdict = "rejected"
    elif stats.mean <= bound.value:
        verdict = "correct"
    else:
        verdict = "violated"
    return Verdict(
        verdict=verdict,
        problem=stats.problem,
        algorithm=stats.algorithm,
        n=stats.n,
        epsilon=stats.epsilon,
        bound_value=bound.value,
        bound_value_evaluations=bound.value_evaluations,
        empirical_mean=stats.mean,
        empirical_mean_evaluations=stats.mean_evaluations,
        empirical_std=stats.std,
        r2=r2,
        hit_rate=stats.hit_rate,
    )


@dataclass(frozen=True)
class Comparison:
    """Bound-based vs empirical ranking of algorithms on one setting."""

    problem: str
    n: int
    epsilon: float
    algorithms: tuple
    bound_values: tuple
    empirical_means: tuple
    bound_ranking: tuple
    empirical_ranking: tuple
    consistent: bool


def compare_algorithms(bounds, stats):
    """Rank algorithms by bound and by measured mean; flag agreement.

    Entry i of ``bounds`` pairs with entry i of ``stats``; all entries
    must share problem, n, and epsilon.
    """
    if len(bounds) != len(stats) or len(bounds) < 2:
        raise ValueError("need matching bound/stats pairs for >= 2 algorithms")
    first = stats[0]
    for b, s in zip(bounds, stats):
        if s.problem != first.problem:
            raise ValueError(f"problem mismatch: {s.problem} vs {first.problem}")
        if s.n != first.n or b.n != first.n:
            raise ValueError("n mismatch across comparison entries")
        if s.epsilon != first.epsilon or b.epsilon != first.epsilon:
            raise ValueError("epsilon mismatch across comparison entries")
        if s.hit_rate == 0:
            raise ValueError(f"no hitting runs for {s.algorithm}")
    names = tuple(s.algorithm for s in stats)
    bound_vals = tuple(b.value for b in bounds)
    means = tuple(s.mean for s in stats)
    by_bound = tuple(names[i] for i in np.argsort(bound_vals, kind="stable"))
    by_mean = tuple(names[i] for i in np.argsort(means, kind="stable"))
    return Comparison(
        problem=first.problem,
        n=first.n,
        epsilon=first.epsilon,
        algorithms=names,
        bound_values=bound_vals,
        empirical_means=means,
        bound_ranking=by_bound,
        empirical_ranking=by_mean,
        consistent=by_bound == by_mean,
    )


@dataclass(frozen=True)
class StabilityReport:
    """CV of the rendered coefficient 1/A and exponent d across refits."""

    cv_coefficient: float
    cv_exponent: float
    trials: int
    params: tuple


def _cv(values):
    arr = np.asarray(values, dtype=float)
    mu = arr.mean()
    if mu == 0:
        raise ValueError("CV undefined: mean is zero")
    return float(arr.std() / mu)  # population standard deviation


def stability_cv(trials):
    """Coefficient of variation of fit parameters over repeated estimations."""
    if len(trials) < 2:
        raise ValueError("need at least 2 trials")
    inv_a = [1.0 / p.coeff_a for p in trials]
    d = [p.d for p in trials]
    return StabilityReport(
        cv_coefficient=_cv(inv_a),
        cv_exponent=_cv(d),
        trials=len(trials),
        params=tuple(trials),
    )
