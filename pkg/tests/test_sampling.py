"""Tests for per-generation gain probing and sample collection."""

import numpy as np
import pytest

from igdrift.evolvers import make_evolver
from igdrift.metrics import IgdTracker, igd, update_best
from igdrift.problems import make_problem, reference_front
from igdrift.rng import ROLE_INIT, ROLE_PROBE, stream
from igdrift.sampling import (
    GainSample,
    collect,
    default_budget,
    ecdf,
    probe_gains,
    probe_generation,
)


class _StubState:
    def __init__(self, objectives):
        self.objectives = np.asarray(objectives, dtype=float)


class _StubEvolver:
    """Yields scripted offspring objective sets, one per call."""

    def __init__(self, batches):
        self._batches = iter(batches)

    def offspring(self, state, rng):
        return _StubState(next(self._batches))


def test_probe_gains_scripted_values():
    # Reference is the origin, the parent sits at distance 1, and the
    # three probe batches land at distances 1.0, 0.7, 0.4: the gains must
    # come out as 0, 0.3, 0.6 exactly.
    ref = np.array([[0.0, 0.0]])
    state = _StubState([[1.0, 0.0]])
    tracker = update_best(IgdTracker(), 1.0)
    ev = _StubEvolver([[[1.0, 0.0]], [[0.7, 0.0]], [[0.4, 0.0]]])
    gains = probe_gains(ev, state, tracker, ref, [None, None, None])
    np.testing.assert_allclose(gains, [0.0, 0.3, 0.6], atol=1e-12)


def test_probe_generation_averages():
    ref = np.array([[0.0, 0.0]])
    state = _StubState([[1.0, 0.0]])
    tracker = update_best(IgdTracker(), 1.0)
    ev = _StubEvolver([[[1.0, 0.0]], [[0.7, 0.0]], [[0.4, 0.0]]])
    psi, avg = probe_generation(ev, state, tracker, ref, 3, [None] * 3)
    assert psi == 1.0
    assert abs(avg - 0.3) < 1e-12


def test_probe_gain_never_negative():
    # A batch worse than the incumbent best yields gain zero, not a
    # negative number.
    ref = np.array([[0.0, 0.0]])
    state = _StubState([[2.0, 0.0]])
    tracker = update_best(IgdTracker(), 0.5)  # best came from earlier gens
    ev = _StubEvolver([[[3.0, 0.0]]])
    gains = probe_gains(ev, state, tracker, ref, [None])
    assert gains[0] == 0.0


def test_probe_generation_validates_arguments():
    ref = np.array([[0.0, 0.0]])
    state = _StubState([[1.0, 0.0]])
    tracker = update_best(IgdTracker(), 1.0)
    ev = _StubEvolver([])
    with pytest.raises(ValueError):
        probe_generation(ev, state, tracker, ref, 0, [])
    with pytest.raises(ValueError):
        probe_generation(ev, state, tracker, ref, 2, [None])


def test_probe_gains_match_joint_igd():
    # The shared nearest-parent decomposition must agree with computing
    # IGD on the stacked parents-plus-offspring matrix directly.
    problem = make_problem("zdt1", 5)
    ref = reference_front(problem)
    ev = make_evolver("nsga2", pop_size=20)
    state = ev.initialize(problem, stream(7, ROLE_INIT, 5, 0))
    tracker = update_best(IgdTracker(), igd(state.objectives, ref))
    rngs = [stream(7, ROLE_PROBE, 5, 0, 0, i) for i in range(4)]
    gains = probe_gains(ev, state, tracker, ref, rngs)
    rngs2 = [stream(7, ROLE_PROBE, 5, 0, 0, i) for i in range(4)]
    for i, rng in enumerate(rngs2):
        batch = ev.offspring(state, rng)
        joint = igd(np.vstack([state.objectives, batch.objectives]), ref)
        want = tracker.best_so_far - min(tracker.best_so_far, joint)
        assert abs(gains[i] - want) < 1e-12


def test_gain_sample_validation():
    GainSample(5, 0, 0.5, 0.0, 1)
    with pytest.raises(ValueError):
        GainSample(5, 0, -0.1, 0.0, 1)
    with pytest.raises(ValueError):
        GainSample(5, 0, 0.5, -0.1, 1)
    with pytest.raises(ValueError):
        GainSample(5, 0, 0.5, 0.0, 0)


def test_default_budget_scales_linearly():
    assert default_budget(5) == 500
    assert default_budget(10) == 1000
    assert default_budget(7) == 700


def test_collect_sample_count_and_order():
    ev = make_evolver("nsga2", pop_size=8)
    ss = collect("zdt1", ev, (5, 10), 2, seed=11, epsilon_collect=0.0,
                 max_generations=10)
    assert len(ss.samples) == 20
    for n in (5, 10):
        subset = ss.for_dimension(n)
        assert [s.t for s in subset] == list(range(10))
        assert all(s.probe_count == 2 for s in subset)
        psi = [s.psi for s in subset]
        assert all(a >= b - 1e-15 for a, b in zip(psi, psi[1:]))


def test_collect_columns_parallel():
    ev = make_evolver("nsga2", pop_size=8)
    ss = collect("zdt1", ev, (5,), 2, seed=11, epsilon_collect=0.0,
                 max_generations=5)
    n, t, psi, gain, k = ss.columns()
    assert n.shape == t.shape == psi.shape == gain.shape == k.shape == (5,)
    assert np.all(n == 5)
    assert np.all(k == 2)
    np.testing.assert_array_equal(t, np.arange(5))


def test_collect_precision_stop():
    # With a positive threshold every recorded best-so-far IGD stays
    # above it, and the trajectory is no longer than the unthresholded
    # one.
    ev = make_evolver("nsga2", pop_size=20)
    full = collect("zdt1", ev, (5,), 2, seed=4, epsilon_collect=0.0,
                   max_generations=60)
    ev2 = make_evolver("nsga2", pop_size=20)
    cut = collect("zdt1", ev2, (5,), 2, seed=4, epsilon_collect=0.2,
                  max_generations=60)
    assert 0 < len(cut.samples) <= len(full.samples)
    assert all(s.psi > 0.2 for s in cut.samples)
    assert [s.psi for s in cut.samples] == [
        s.psi for s in full.samples[: len(cut.samples)]
    ]


def test_collect_probe_count_does_not_steer_trajectory():
    # The advancing batch draws from its own stream, so the psi sequence
    # must be identical whether one probe or five are taken per
    # generation.
    ev1 = make_evolver("nsga2", pop_size=12)
    one = collect("zdt1", ev1, (5,), 1, seed=9, epsilon_collect=0.0,
                  max_generations=15)
    ev5 = make_evolver("nsga2", pop_size=12)
    five = collect("zdt1", ev5, (5,), 5, seed=9, epsilon_collect=0.0,
                   max_generations=15)
    assert [s.psi for s in one.samples] == [s.psi for s in five.samples]


def test_collect_pools_independent_runs():
    ev = make_evolver("nsga2", pop_size=8)
    single = collect("zdt1", ev, (5,), 2, seed=21, epsilon_collect=0.0,
                     max_generations=8, runs=1)
    ev2 = make_evolver("nsga2", pop_size=8)
    double = collect("zdt1", ev2, (5,), 2, seed=21, epsilon_collect=0.0,
                     max_generations=8, runs=2)
    assert len(double.samples) == 2 * len(single.samples)
    assert double.samples[: len(single.samples)] == single.samples
    # The added run is a genuinely different trajectory.
    tail = double.samples[len(single.samples):]
    assert [s.psi for s in tail] != [s.psi for s in single.samples]
    assert double.metadata["runs"] == 2


def test_collect_is_deterministic():
    ev1 = make_evolver("nsga2", pop_size=8)
    a = collect("zdt1", ev1, (5,), 3, seed=5, epsilon_collect=0.0,
                max_generations=6)
    ev2 = make_evolver("nsga2", pop_size=8)
    b = collect("zdt1", ev2, (5,), 3, seed=5, epsilon_collect=0.0,
                max_generations=6)
    assert a.samples == b.samples
    assert a.metadata == b.metadata


def test_collect_validates_arguments():
    ev = make_evolver("nsga2", pop_size=8)
    with pytest.raises(ValueError):
        collect("zdt1", ev, (), 2, seed=1, epsilon_collect=0.0)
    with pytest.raises(ValueError):
        collect("zdt1", ev, (5,), 0, seed=1, epsilon_collect=0.0)
    with pytest.raises(ValueError):
        collect("zdt1", ev, (5,), 2, seed=1, epsilon_collect=-0.1)
    with pytest.raises(ValueError):
        collect("zdt1", ev, (5,), 2, seed=1, epsilon_collect=0.0, runs=0)


def test_ecdf_step_values():
    vals = [1.0, 2.0, 3.0]
    assert ecdf(vals, 0.5) == 0.0
    assert abs(ecdf(vals, 1.0) - 1 / 3) < 1e-15
    assert abs(ecdf(vals, 2.5) - 2 / 3) < 1e-15
    assert ecdf(vals, 3.0) == 1.0
    assert ecdf(vals, 10.0) == 1.0


def test_ecdf_vector_argument():
    vals = [1.0, 2.0, 3.0]
    out = ecdf(vals, np.array([0.5, 1.5, 3.5]))
    np.testing.assert_allclose(out, [0.0, 1 / 3, 1.0])
    assert out.shape == (3,)
    with pytest.raises(ValueError):
        ecdf([], 1.0)


def test_ecdf_converges_to_uniform_cdf():
    # Glivenko-Cantelli check: with 10^4 uniforms the sup deviation from
    # the true CDF stays under 0.05 (DKW gives failure odds ~2e-22).
    rng = np.random.default_rng(123)
    vals = rng.random(10_000)
    grid = np.linspace(0.0, 1.0, 201)
    sup = np.max(np.abs(ecdf(vals, grid) - grid))
    assert sup < 0.05
