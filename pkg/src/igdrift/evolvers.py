"""Population-based multi-objective evolvers: NSGA-II and MOEA/D.

Both evolvers expose the same three-step interface used by the gain sampler:

    state = evolver.initialize(problem, rng)
    batch = evolver.offspring(state, rng)      # pure w.r.t. state
    state = evolver.select(state, batch)       # pure, returns a new state

``offspring`` never mutates the parent state, so several independent batches
can be produced from one state with different generators.  MOEA/D is run
generationally: a full batch of offspring is produced first and then folded
into the population by sequential neighborhood replacement.
"""

import hashlib
from dataclasses import dataclass, replace

import numpy as np

from .operators import mutation_batch, sbx_batch
from .problems import Problem, evaluate_population, sample_population
from .rng import ROLE_INIT, stream

__all__ = [
    "EVOLVER_IDS",
    "MoeadState",
    "Nsga2State",
    "OffspringBatch",
    "crowding_distance",
    "dominates",
    "fingerprint",
    "make_evolver",
    "nondominated_sort",
    "tchebycheff",
    "uniform_weights",
]


def dominates(fa, fb):
    """Pareto dominance for minimization: fa is no worse everywhere, better somewhere."""
    fa = np.asarray(fa, dtype=float)
    fb = np.asarray(fb, dtype=float)
    return bool(np.all(fa <= fb) and np.any(fa < fb))


def nondominated_sort(objectives):
    """Partition rows into Pareto fronts; returns a list of index arrays.

    Front 0 holds the non-dominated rows, front 1 the rows dominated only by
    front 0, and so on.  Duplicated rows never dominate each other and land
    in the same front.
    """
    F = np.asarray(objectives, dtype=float)
    if F.ndim != 2 or len(F) == 0:
        raise ValueError("objectives must be a non-empty 2-d array")
    le = np.all(F[:, None, :] <= F[None, :, :], axis=2)
    lt = np.any(F[:, None, :] < F[None, :, :], axis=2)
    dom = le & lt  # dom[i, j]: row i dominates row j
    counts = dom.sum(axis=0).astype(np.int64)
    fronts = []
    current = np.flatnonzero(counts == 0)
    while current.size:
        fronts.append(current)
        counts[current] = -1
        counts = counts - dom[current].sum(axis=0)
        current = np.flatnonzero(counts == 0)
    return fronts


def crowding_distance(objectives):
    """Crowding distance of each row within its set.

    Boundary rows per objective get infinity; interior rows accumulate the
    normalized gap between their neighbors.  An objective with zero range
    contributes nothing.  Sets of one or two rows are all-infinite.
    """
    F = np.asarray(objectives, dtype=float)
    if F.ndim != 2 or len(F) == 0:
        raise ValueError("objectives must be a non-empty 2-d array")
    n = len(F)
    if n <= 2:
        return np.full(n, np.inf)
    dist = np.zeros(n)
    for k in range(F.shape[1]):
        order = np.argsort(F[:, k], kind="stable")
        vals = F[order, k]
        dist[order[0]] = np.inf
        dist[order[-1]] = np.inf
        span = vals[-1] - vals[0]
        if span > 0:
            dist[order[1:-1]] += (vals[2:] - vals[:-2]) / span
    return dist


def tchebycheff(objectives, weight, z_star):
    """Weighted Tchebycheff scalarization max_k w_k * |f_k - z*_k|.

    Accepts a single objective vector or a matrix of rows; returns a scalar
    or a vector accordingly.
    """
    F = np.asarray(objectives, dtype=float)
    w = np.asarray(weight, dtype=float)
    z = np.asarray(z_star, dtype=float)
    vals = np.max(w * np.abs(F - z), axis=-1)
    return float(vals) if F.ndim == 1 else vals


def uniform_weights(pop_size, m):
    """Simplex-lattice weight vectors for MOEA/D.

    For two objectives the lattice matches ``pop_size`` exactly.  For three,
    the largest lattice with at most ``pop_size`` points is used, so the
    returned count may be smaller; the population size follows the weights.
    """
    if pop_size < 2:
        raise ValueError("pop_size must be at least 2")
    if m == 2:
        t = np.linspace(0.0, 1.0, pop_size)
        return np.column_stack([t, 1.0 - t])
    if m == 3:
        h = 1
        while (h + 3) * (h + 2) // 2 <= pop_size:
            h += 1
        ij = [(i, j) for i in range(h + 1) for j in range(h + 1 - i)]
        w = np.array([(i, j, h - i - j) for i, j in ij], dtype=float) / h
        return w
    raise ValueError("weights only defined for 2 or 3 objectives")


@dataclass(frozen=True)
class OffspringBatch:
    """Evaluated offspring produced from one parent state."""

    decisions: np.ndarray
    objectives: np.ndarray
    evaluation_count: int
    parent_generation: int


@dataclass(frozen=True)
class Nsga2State:
    problem: Problem
    decisions: np.ndarray
    objectives: np.ndarray
    ranks: np.ndarray
    crowding: np.ndarray
    generation: int


@dataclass(frozen=True)
class MoeadState:
    problem: Problem
    decisions: np.ndarray
    objectives: np.ndarray
    weights: np.ndarray
    neighbors: np.ndarray
    z_star: np.ndarray
    generation: int


def fingerprint(state):
    """Digest of the evolving arrays of a state, for purity checks."""
    h = hashlib.sha256()
    h.update(np.ascontiguousarray(state.decisions).tobytes())
    h.update(np.ascontiguousarray(state.objectives).tobytes())
    if hasattr(state, "z_star"):
        h.update(np.ascontiguousarray(state.z_star).tobytes())
    h.update(str(state.generation).encode())
    return h.hexdigest()


def _ranks_of(fronts, n):
    ranks = np.empty(n, dtype=np.int64)
    for level, front in enumerate(fronts):
        ranks[front] = level
    return ranks


class Nsga2:
    """Elitist NSGA-II with SBX, polynomial mutation, and crowded tournament."""

    algorithm_id = "nsga2"

    def __init__(self, pop_size=100, pc=1.0, eta_c=20.0, pm=None, eta_m=20.0):
        if pop_size < 2:
            raise ValueError("pop_size must be at least 2")
        self.pop_size = int(pop_size)
        self.pc = float(pc)
        self.eta_c = float(eta_c)
        self.pm = pm
        self.eta_m = float(eta_m)

    def batch_size(self, problem):
        return self.pop_size

    def _pm(self, problem):
        return 1.0 / problem.n if self.pm is None else float(self.pm)

    def initialize(self, problem, rng):
        decisions = sample_population(problem, self.pop_size, rng)
        objectives = evaluate_population(problem, decisions)
        fronts = nondominated_sort(objectives)
        return Nsga2State(
            problem=problem,
            decisions=decisions,
            objectives=objectives,
            ranks=_ranks_of(fronts, self.pop_size),
            crowding=crowding_distance(objectives),
            generation=0,
        )

    def offspring(self, state, rng):
        n_pop = len(state.decisions)
        pairs = (n_pop + 1) // 2
        winners = self._tournament(state, 2 * pairs, rng)
        p1 = state.decisions[winners[0::2]]
        p2 = state.decisions[winners[1::2]]
        problem = state.problem
        c1, c2 = sbx_batch(
            p1, p2, problem.lower, problem.upper, self.eta_c, self.pc, rng
        )
        children = np.empty((2 * pairs, problem.n))
        children[0::2] = c1
        children[1::2] = c2
        children = children[:n_pop]
        children = mutation_batch(
            children, problem.lower, problem.upper, self.eta_m, self._pm(problem), rng
        )
        objectives = evaluate_population(problem, children)
        return OffspringBatch(
            decisions=children,
            objectives=objectives,
            evaluation_count=n_pop,
            parent_generation=state.generation,
        )

    def _tournament(self, state, count, rng):
        n_pop = len(state.decisions)
        a = rng.integers(n_pop, size=count)
        b = rng.integers(n_pop, size=count)
        coin = rng.random(count) < 0.5
        ra, rb = state.ranks[a], state.ranks[b]
        ca, cb = state.crowding[a], state.crowding[b]
        a_wins = (ra < rb) | ((ra == rb) & (ca > cb))
        tie = (ra == rb) & (ca == cb)
        return np.where(a_wins | (tie & coin), a, b)

    def select(self, state, batch):
        if batch.parent_generation != state.generation:
            raise ValueError("offspring batch does not match the parent state")
        decisions = np.vstack([state.decisions, batch.decisions])
        objectives = np.vstack([state.objectives, batch.objectives])
        fronts = nondominated_sort(objectives)
        keep = []
        for front in fronts:
            if len(keep) + len(front) <= self.pop_size:
                keep.extend(front.tolist())
                if len(keep) == self.pop_size:
                    break
            else:
                dist = crowding_distance(objectives[front])
                order = np.argsort(-dist, kind="stable")
                need = self.pop_size - len(keep)
                keep.extend(front[order[:need]].tolist())
                break
        keep = np.array(keep, dtype=np.int64)
        new_obj = objectives[keep]
        new_fronts = nondominated_sort(new_obj)
        return Nsga2State(
            problem=state.problem,
            decisions=decisions[keep],
            objectives=new_obj,
            ranks=_ranks_of(new_fronts, self.pop_size),
            crowding=crowding_distance(new_obj),
            generation=state.generation + 1,
        )


class Moead:
    """Generational MOEA/D with Tchebycheff decomposition.

    One offspring is produced per subproblem from parents drawn inside its
    weight neighborhood; replacement then sweeps the subproblems in order,
    each offspring updating the ideal point and any neighbor it improves.
    """

    algorithm_id = "moead"

    def __init__(
        self,
        pop_size=100,
        pc=1.0,
        eta_c=20.0,
        pm=None,
        eta_m=20.0,
        neighborhood_size=20,
    ):
        if pop_size < 2:
            raise ValueError("pop_size must be at least 2")
        if neighborhood_size < 2:
            raise ValueError("neighborhood_size must be at least 2")
        self.pop_size = int(pop_size)
        self.pc = float(pc)
        self.eta_c = float(eta_c)
        self.pm = pm
        self.eta_m = float(eta_m)
        self.neighborhood_size = int(neighborhood_size)

    def batch_size(self, problem):
        return len(uniform_weights(self.pop_size, problem.m))

    def _pm(self, problem):
        return 1.0 / problem.n if self.pm is None else float(self.pm)

    def initialize(self, problem, rng):
        weights = uniform_weights(self.pop_size, problem.m)
        n_pop = len(weights)
        t_size = min(self.neighborhood_size, n_pop)
        gaps = np.linalg.norm(weights[:, None, :] - weights[None, :, :], axis=2)
        neighbors = np.argsort(gaps, axis=1, kind="stable")[:, :t_size]
        decisions = sample_population(problem, n_pop, rng)
        objectives = evaluate_population(problem, decisions)
        return MoeadState(
            problem=problem,
            decisions=decisions,
            objectives=objectives,
            weights=weights,
            neighbors=neighbors,
            z_star=objectives.min(axis=0),
            generation=0,
        )

    def offspring(self, state, rng):
        n_pop = len(state.decisions)
        t_size = state.neighbors.shape[1]
        i1 = rng.integers(t_size, size=n_pop)
        i2 = rng.integers(t_size - 1, size=n_pop)
        i2 = i2 + (i2 >= i1)  # two distinct neighborhood slots
        rows = np.arange(n_pop)
        k1 = state.neighbors[rows, i1]
        k2 = state.neighbors[rows, i2]
        problem = state.problem
        c1, _ = sbx_batch(
            state.decisions[k1],
            state.decisions[k2],
            problem.lower,
            problem.upper,
            self.eta_c,
            self.pc,
            rng,
        )
        children = mutation_batch(
            c1, problem.lower, problem.upper, self.eta_m, self._pm(problem), rng
        )
        objectives = evaluate_population(problem, children)
        return OffspringBatch(
            decisions=children,
            objectives=objectives,
            evaluation_count=n_pop,
            parent_generation=state.generation,
        )

    def select(self, state, batch):
        if batch.parent_generation != state.generation:
            raise ValueError("offspring batch does not match the parent state")
        decisions = state.decisions.copy()
        objectives = state.objectives.copy()
        z_star = state.z_star.copy()
        for j in range(len(batch.decisions)):
            child_f = batch.objectives[j]
            z_star = np.minimum(z_star, child_f)
            hood = state.neighbors[j]
            w_hood = state.weights[hood]
            g_old = np.max(w_hood * np.abs(objectives[hood] - z_star), axis=1)
            g_new = np.max(w_hood * np.abs(child_f - z_star), axis=1)
            better = hood[g_new <= g_old]
            decisions[better] = batch.decisions[j]
            objectives[better] = child_f
        return replace(
            state,
            decisions=decisions,
            objectives=objectives,
            z_star=z_star,
            generation=state.generation + 1,
        )


_EVOLVERS = {"nsga2": Nsga2, "moead": Moead}
EVOLVER_IDS = tuple(sorted(_EVOLVERS))


def make_evolver(algorithm_id, **params):
    """Construct an evolver by registry id ("nsga2" or "moead")."""
    try:
        cls = _EVOLVERS[algorithm_id]
    except KeyError:
        raise ValueError(
            f"unknown algorithm {algorithm_id!r}; expected one of {EVOLVER_IDS}"
        ) from None
    return cls(**params)


def initial_state(algorithm_id, problem, seed, **params):
    """Convenience: build an evolver and its seeded initial state."""
    evolver = make_evolver(algorithm_id, **params)
    rng = stream(seed, ROLE_INIT, problem.n)
    return evolver, evolver.initialize(problem, rng)
