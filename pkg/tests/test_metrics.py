"""IGD against a brute-force oracle plus best-so-far tracker semantics."""

import math

import numpy as np
import pytest

from igdrift.metrics import IgdTracker, igd, igd_gain, update_best
from igdrift.problems import make_problem, reference_front


def _oracle_igd(solutions, reference):
    total = 0.0
    for ref in reference:
        best = math.inf
        for sol in solutions:
            dist = math.sqrt(sum((r - s) ** 2 for r, s in zip(ref, sol)))
            best = min(best, dist)
        total += best
    return total / len(reference)


def test_hand_values():
    assert igd(np.array([[0.0, 0.0]]), np.array([[0.0, 0.0], [1.0, 1.0]])) == pytest.approx(
        math.sqrt(2.0) / 2.0, abs=1e-15
    )
    assert igd(np.array([[3.0, 4.0]]), np.array([[0.0, 0.0]])) == 5.0
    ref = np.array([[0.0, 1.0], [1.0, 0.0], [0.5, 0.5]])
    assert igd(ref, ref) == 0.0


def test_matches_bruteforce_oracle():
    rng = np.random.default_rng(11)
    for trial in range(10):
        m = 2 if trial % 2 == 0 else 3
        sols = rng.random((rng.integers(1, 8), m))
        refs = rng.random((rng.integers(2, 9), m))
        got = igd(sols, refs)
        want = _oracle_igd(sols.tolist(), refs.tolist())
        assert got == pytest.approx(want, rel=1e-12)


def test_invariances():
    rng = np.random.default_rng(5)
    sols = rng.random((6, 2))
    refs = rng.random((9, 2))
    base = igd(sols, refs)
    shuffled = sols[rng.permutation(6)]
    assert igd(shuffled, refs) == pytest.approx(base, rel=1e-14)
    # adding solutions can only reduce the metric
    extra = np.vstack([sols, rng.random((3, 2))])
    assert igd(extra, refs) <= base + 1e-15


def test_accepts_reference_front_object():
    problem = make_problem("zdt1", 5)
    front = reference_front(problem, 50)
    direct = igd(front.points[:10], front.points)
    wrapped = igd(front.points[:10], front)
    assert direct == wrapped


def test_errors():
    refs = np.array([[0.0, 0.0]])
    with pytest.raises(ValueError):
        igd(np.empty((0, 2)), refs)
    with pytest.raises(ValueError):
        igd(np.array([[0.0, 0.0, 0.0]]), refs)


def test_tracker_updates():
    tracker = IgdTracker()
    assert tracker.best_so_far == math.inf
    t1 = update_best(tracker, 0.8)
    t2 = update_best(t1, 1.2)  # worse value cannot raise the best
    t3 = update_best(t2, 0.3)
    assert t1.best_so_far == 0.8
    assert t2.best_so_far == 0.8
    assert t3.best_so_far == 0.3
    assert (t1.generation, t2.generation, t3.generation) == (0, 1, 2)
    with pytest.raises(ValueError):
        update_best(tracker, -0.1)


def test_gain():
    assert igd_gain(0.8, 0.5) == pytest.approx(0.3)
    assert igd_gain(0.8, 0.8) == 0.0
    with pytest.raises(ValueError):
        igd_gain(0.5, 0.8)
