"""Tests for hitting-time measurement, bound checking, and stability."""

import math

import numpy as np
import pytest

from igdrift.bounds import BoundEstimate
from igdrift.evolvers import make_evolver
from igdrift.fitting import FitParams
from igdrift.problems import make_problem
from igdrift.validation import (
    RunStats,
    check_bound,
    compare_algorithms,
    measure_fht,
    stability_cv,
)


class _HalvingState:
    def __init__(self, value):
        self.value = value
        self.objectives = np.array([[value, 0.0]])


class _HalvingEvolver:
    """Deterministic stub whose best IGD halves every generation."""

    algorithm_id = "halving-stub"

    def initialize(self, problem, rng):
        return _HalvingState(1.0)

    def offspring(self, state, rng):
        return _HalvingState(state.value / 2.0)

    def select(self, state, batch):
        return _HalvingState(batch.value)

    def batch_size(self, problem):
        return 1


class _StubProblem:
    id = "stub"
    n = 5


_REF = np.array([[0.0, 0.0]])


def test_measure_fht_halving_hits_at_four():
    # psi runs 1, 0.5, 0.25, 0.125, 0.0625; the first value <= 0.1
    # appears at generation 4.
    stats = measure_fht(_StubProblem(), _HalvingEvolver(), 0.1, runs=3,
                        seed=0, budget=20, reference=_REF,
                        keep_trajectories=True)
    assert stats.hitting_generations == (4, 4, 4)
    assert stats.mean == 4.0 and stats.std == 0.0
    assert stats.hit_rate == 1.0
    assert stats.initial_igd_mean == 1.0
    for track in stats.trajectories:
        np.testing.assert_allclose(track, [1.0, 0.5, 0.25, 0.125, 0.0625])


def test_measure_fht_initial_hit_is_generation_zero():
    stats = measure_fht(_StubProblem(), _HalvingEvolver(), 1.0, runs=2,
                        seed=0, budget=20, reference=_REF)
    assert stats.hitting_generations == (0, 0)
    assert stats.mean == 0.0


def test_measure_fht_budget_exhaustion_counts_as_miss():
    stats = measure_fht(_StubProblem(), _HalvingEvolver(), 0.001, runs=2,
                        seed=0, budget=5, reference=_REF)
    assert stats.hitting_generations == ()
    assert stats.hit_rate == 0.0
    assert math.isnan(stats.mean) and math.isnan(stats.std)


def test_measure_fht_validates_arguments():
    with pytest.raises(ValueError):
        measure_fht(_StubProblem(), _HalvingEvolver(), 0.1, runs=0, seed=0,
                    reference=_REF)
    with pytest.raises(ValueError):
        measure_fht(_StubProblem(), _HalvingEvolver(), 0.0, runs=1, seed=0,
                    reference=_REF)


def test_measure_fht_real_run_is_deterministic():
    problem = make_problem("zdt1", 5)
    ev = make_evolver("nsga2", pop_size=20)
    a = measure_fht(problem, ev, 0.3, runs=2, seed=6, budget=200)
    b = measure_fht(problem, ev, 0.3, runs=2, seed=6, budget=200)
    assert a.hitting_generations == b.hitting_generations
    assert a.hit_rate > 0
    assert a.batch_size == 20
    c = measure_fht(problem, ev, 0.3, runs=2, seed=7, budget=200)
    assert c.hitting_generations != a.hitting_generations


def test_run_stats_evaluation_units():
    stats = _stats(mean=7.0, std=2.0, batch_size=100)
    assert stats.mean_evaluations == 700.0
    assert stats.std_evaluations == 200.0


def _stats(mean=10.0, std=1.0, n=5, epsilon=0.05, batch_size=100,
           hit_rate=1.0, algorithm="nsga2", problem="zdt1"):
    return RunStats(
        problem=problem, algorithm=algorithm, n=n, epsilon=epsilon,
        runs=30, budget=500, batch_size=batch_size,
        hitting_generations=(10,), hit_rate=hit_rate, mean=mean, std=std,
        initial_igd_mean=1.0,
    )


def _bound(value=20.0, r2=0.95, n=5, epsilon=0.05, batch_size=100):
    params = FitParams(coeff_a=0.5, b=1.5, d=1.0, r2=r2, kappa=10)
    return BoundEstimate(
        params=params, n=n, x0=1.0, epsilon=epsilon, value=value,
        value_evaluations=value * batch_size, case="b>1", complexity="",
        batch_size=batch_size,
    )


def test_check_bound_verdict_partition():
    assert check_bound(_bound(value=20.0), _stats(mean=10.0)).verdict == "correct"
    assert check_bound(_bound(value=20.0), _stats(mean=20.0)).verdict == "correct"
    assert check_bound(_bound(value=20.0), _stats(mean=20.5)).verdict == "violated"
    assert check_bound(_bound(r2=0.0), _stats()).verdict == "rejected"
    assert check_bound(_bound(r2=-0.5), _stats()).verdict == "rejected"


def test_check_bound_carries_both_units():
    v = check_bound(_bound(value=20.0), _stats(mean=10.0))
    assert v.bound_value_evaluations == 2000.0
    assert v.empirical_mean_evaluations == 1000.0


def test_check_bound_mismatch_errors():
    with pytest.raises(ValueError):
        check_bound(_bound(n=10), _stats(n=5))
    with pytest.raises(ValueError):
        check_bound(_bound(epsilon=0.1), _stats(epsilon=0.05))
    with pytest.raises(ValueError):
        check_bound(_bound(batch_size=50), _stats(batch_size=100))
    with pytest.raises(ValueError):
        check_bound(_bound(), _stats(hit_rate=0.0, mean=float("nan")))


def test_compare_algorithms_consistent():
    bounds = [_bound(value=10.0), _bound(value=20.0)]
    stats = [_stats(mean=3.0, algorithm="nsga2"),
             _stats(mean=5.0, algorithm="moead")]
    cmp = compare_algorithms(bounds, stats)
    assert cmp.bound_ranking == ("nsga2", "moead")
    assert cmp.empirical_ranking == ("nsga2", "moead")
    assert cmp.consistent


def test_compare_algorithms_inconsistent():
    bounds = [_bound(value=10.0), _bound(value=20.0)]
    stats = [_stats(mean=5.0, algorithm="nsga2"),
             _stats(mean=3.0, algorithm="moead")]
    cmp = compare_algorithms(bounds, stats)
    assert cmp.bound_ranking == ("nsga2", "moead")
    assert cmp.empirical_ranking == ("moead", "nsga2")
    assert not cmp.consistent


def test_compare_algorithms_order_invariant():
    bounds = [_bound(value=10.0), _bound(value=20.0)]
    stats = [_stats(mean=5.0, algorithm="nsga2"),
             _stats(mean=3.0, algorithm="moead")]
    fwd = compare_algorithms(bounds, stats)
    rev = compare_algorithms(bounds[::-1], stats[::-1])
    assert fwd.bound_ranking == rev.bound_ranking
    assert fwd.empirical_ranking == rev.empirical_ranking
    assert fwd.consistent == rev.consistent


def test_compare_algorithms_validation():
    with pytest.raises(ValueError):
        compare_algorithms([_bound()], [_stats()])
    with pytest.raises(ValueError):
        compare_algorithms(
            [_bound(), _bound()],
            [_stats(problem="zdt1"), _stats(problem="zdt2")],
        )
    with pytest.raises(ValueError):
        compare_algorithms(
            [_bound(), _bound(n=10)],
            [_stats(), _stats(n=10)],
        )
    with pytest.raises(ValueError):
        compare_algorithms(
            [_bound(), _bound()],
            [_stats(), _stats(hit_rate=0.0, mean=float("nan"))],
        )


def test_stability_cv_hand_case():
    # 1/A values {2, 4}: mean 3, population std 1, CV 1/3.
    trials = [
        FitParams(coeff_a=0.5, b=1.5, d=1.0, r2=0.9, kappa=10),
        FitParams(coeff_a=0.25, b=1.5, d=1.0, r2=0.9, kappa=10),
    ]
    report = stability_cv(trials)
    assert abs(report.cv_coefficient - 1 / 3) < 1e-12
    assert report.cv_exponent == 0.0
    assert report.trials == 2


def test_stability_cv_validation():
    one = [FitParams(coeff_a=0.5, b=1.5, d=1.0, r2=0.9, kappa=10)]
    with pytest.raises(ValueError):
        stability_cv(one)
    zero_d = [
        FitParams(coeff_a=0.5, b=1.5, d=0.0, r2=0.9, kappa=10, d_fixed=True),
        FitParams(coeff_a=0.4, b=1.5, d=0.0, r2=0.9, kappa=10, d_fixed=True),
    ]
    with pytest.raises(ValueError):
        stability_cv(zero_d)
