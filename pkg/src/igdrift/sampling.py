"""Per-generation IGD-gain sampling while a MOEA runs.

At each generation the parent state is probed K times: each probe generates
one offspring batch from the unchanged parents with its own RNG stream,
measures the best-so-far IGD the batch would achieve, and reports the gain
over the current best.  The mean of the K probe gains is recorded together
with the current best-so-far IGD, then the trajectory advances by one fresh
batch.  Gains are measured on parents plus offspring, and the advancing
batch is independent of all probes, so probing never biases the trajectory.
"""

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .metrics import IgdTracker, igd, update_best
from .problems import make_problem, reference_front
from .rng import ROLE_ADVANCE, ROLE_INIT, ROLE_PROBE, stream

__all__ = [
    "GainSample",
    "SampleSet",
    "collect",
    "default_budget",
    "ecdf",
    "probe_gains",
    "probe_generation",
]


@dataclass(frozen=True)
class GainSample:
    """One (dimension, generation) record: best-so-far IGD and mean probe gain."""

    n: int
    t: int
    psi: float
    avg_gain: float
    probe_count: int

    def __post_init__(self):
        if self.psi < 0 or self.avg_gain < 0:
            raise ValueError("psi and avg_gain must be nonnegative")
        if self.probe_count < 1:
            raise ValueError("probe_count must be at least 1")


@dataclass(frozen=True)
class SampleSet:
    """Gain samples pooled across dimensions, with collection metadata."""

    samples: tuple
    dims: tuple
    metadata: dict

    def for_dimension(self, n):
        return [s for s in self.samples if s.n == n]

    def columns(self):
        """Parallel arrays (n, t, psi, avg_gain, probe_count)."""
        n = np.array([s.n for s in self.samples], dtype=np.int64)
        t = np.array([s.t for s in self.samples], dtype=np.int64)
        psi = np.array([s.psi for s in self.samples])
        gain = np.array([s.avg_gain for s in self.samples])
        k = np.array([s.probe_count for s in self.samples], dtype=np.int64)
        return n, t, psi, gain, k


def probe_gains(evolver, state, tracker, reference, rngs):
    """Gains of independent probe batches from one parent state.

    Probe i generates offspring with ``rngs[i]``, computes the IGD of
    parents plus that batch, and yields max(0, psi_t - that IGD) where
    psi_t is the tracker's current best.  The state is never modified.
    """
    psi_t = tracker.best_so_far
    ref = np.asarray(getattr(reference, "points", reference), dtype=float)
    # Nearest-parent distances are shared by all probes; each union IGD is
    # then the mean of the elementwise min against the probe's offspring.
    parent_min = cdist(ref, state.objectives).min(axis=1)
    gains = np.empty(len(rngs))
    for i, rng in enumerate(rngs):
        batch = evolver.offspring(state, rng)
        off_min = cdist(ref, batch.objectives).min(axis=1)
        union_igd = float(np.minimum(parent_min, off_min).mean())
        gains[i] = psi_t - min(psi_t, union_igd)
    return gains


def probe_generation(evolver, state, tracker, reference, k_probes, rngs):
    """Average gain of ``k_probes`` probes; returns (psi_t, avg_gain)."""
    if k_probes < 1:
        raise ValueError("k_probes must be at least 1")
    if len(rngs) != k_probes:
        raise ValueError("need exactly one RNG stream per probe")
    gains = probe_gains(evolver, state, tracker, reference, rngs)
    return tracker.best_so_far, float(gains.mean())


def default_budget(n):
    """Generation budget for collection and validation at dimension n."""
    return int(round(500 * (n / 5)))


def collect(
    problem_id,
    evolver,
    dims,
    k_probes,
    seed,
    epsilon_collect,
    max_generations=None,
    front_size=None,
    runs=1,
):
    """Run probed trajectories per dimension and pool the gain samples.

    Each trajectory stops once the best-so-far IGD reaches
    ``epsilon_collect`` or after ``max_generations`` generations
    (default 500·(n/5)).  Passing 0 disables the precision stop so the
    trajectory runs out its budget and the sample cloud reaches the gain
    floor.  ``runs`` independent trajectories per dimension are pooled
    into one set; best-so-far IGD is non-increasing within each
    trajectory, not across them.  Every stream is derived from ``seed``,
    so repeat calls reproduce the set exactly.
    """
    dims = tuple(int(n) for n in dims)
    if not dims:
        raise ValueError("dims must be non-empty")
    if k_probes < 1:
        raise ValueError("k_probes must be at least 1")
    if epsilon_collect < 0:
        raise ValueError("epsilon_collect must be non-negative")
    if runs < 1:
        raise ValueError("runs must be at least 1")

    samples = []
    for n in dims:
        problem = make_problem(problem_id, n)
        ref = reference_front(problem, front_size)
        budget = default_budget(n) if max_generations is None else int(max_generations)
        for r in range(runs):
            state = evolver.initialize(problem, stream(seed, ROLE_INIT, n, r))
            tracker = update_best(IgdTracker(), igd(state.objectives, ref))
            t = 0
            while tracker.best_so_far > epsilon_collect and t < budget:
                rngs = [stream(seed, ROLE_PROBE, n, r, t, i) for i in range(k_probes)]
                psi_t, avg_gain = probe_generation(
                    evolver, state, tracker, ref, k_probes, rngs
                )
                samples.append(GainSample(n, t, psi_t, avg_gain, k_probes))
                batch = evolver.offspring(state, stream(seed, ROLE_ADVANCE, n, r, t))
                combined = np.vstack([state.objectives, batch.objectives])
                tracker = update_best(tracker, igd(combined, ref))
                state = evolver.select(state, batch)
                t += 1

    metadata = {
        "problem": problem_id,
        "evolver": evolver.algorithm_id,
        "seed": int(seed),
        "k": int(k_probes),
        "pop_size": int(evolver.pop_size),
        "epsilon_collect": float(epsilon_collect),
        "dims": list(dims),
        "max_generations": None if max_generations is None else int(max_generations),
        "front_size": None if front_size is None else int(front_size),
        "runs": int(runs),
    }
    return SampleSet(samples=tuple(samples), dims=dims, metadata=metadata)


def ecdf(values, r):
    """Empirical distribution function of ``values`` evaluated at ``r``.

    Step function: 0 below the smallest value, i/K between order
    statistics, 1 at and above the largest.  ``r`` may be a scalar or an
    array; the result matches its shape.
    """
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ValueError("values must be non-empty")
    r_arr = np.asarray(r, dtype=float)
    frac = (v <= r_arr[..., None]).mean(axis=-1)
    if np.ndim(r) == 0:
        return float(frac)
    return frac
