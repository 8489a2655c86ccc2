"""Continuous multi-objective benchmark problems and their reference fronts.

Provides the ZDT family (ZDT1-4, ZDT6), the three-objective DTLZ problems
(DTLZ1, 2, 3, 5, 6) and a continuous OneMinMax variant, together with
analytic Pareto-front point sets used as IGD references.

All evaluators are vectorized over populations: ``evaluate_population`` maps
an (N, n) decision matrix to an (N, m) objective matrix.  ``evaluate`` for a
single vector goes through the same code path, so cached population
objectives are bitwise identical to per-point evaluation.
"""

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Problem",
    "ReferenceFront",
    "PROBLEM_IDS",
    "make_problem",
    "evaluate",
    "evaluate_population",
    "decision_bounds",
    "reference_front",
    "random_population",
    "save_front_csv",
]

# Smallest f1 on the ZDT6 front: min of 1 - exp(-4 x) sin^6(6 pi x) on [0, 1],
# attained at x = atan(9 pi) / (6 pi).
_ZDT6_F1_MIN = 0.2807753188153697

_ZDT_IDS = ("zdt1", "zdt2", "zdt3", "zdt4", "zdt6")
_DTLZ_IDS = ("dtlz1", "dtlz2", "dtlz3", "dtlz5", "dtlz6")
PROBLEM_IDS = _ZDT_IDS + _DTLZ_IDS + ("oneminmax",)


@dataclass(frozen=True)
class Problem:
    """A box-bounded continuous minimization problem with m objectives."""

    id: str
    n: int
    m: int
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        if not np.all(self.lower < self.upper):
            raise ValueError(f"{self.id}: lower bounds must be strictly below upper bounds")


@dataclass(frozen=True)
class ReferenceFront:
    """Point set on the analytic Pareto front of a problem."""

    points: np.ndarray
    source: str
    size: int = field(default=0)

    def __post_init__(self):
        object.__setattr__(self, "size", len(self.points))
        if self.size < 2:
            raise ValueError("reference front needs at least 2 points")


def make_problem(problem_id: str, n: int) -> Problem:
    """Build a problem instance of the given decision dimension."""
    pid = problem_id.lower()
    if pid not in PROBLEM_IDS:
        raise ValueError(f"unknown problem id {problem_id!r}; known: {', '.join(PROBLEM_IDS)}")
    m = 3 if pid.startswith("dtlz") else 2
    if pid.startswith("zdt") and n < 2:
        raise ValueError(f"{pid} requires n >= 2")
    if pid.startswith("dtlz") and n < m:
        raise ValueError(f"{pid} requires n >= {m}")
    if pid == "oneminmax" and n < 1:
        raise ValueError("oneminmax requires n >= 1")
    lower = np.zeros(n)
    upper = np.ones(n)
    if pid == "zdt4":
        # x1 in [0, 1], remaining variables in [-5, 5]
        lower[1:] = -5.0
        upper[1:] = 5.0
    return Problem(id=pid, n=n, m=m, lower=lower, upper=upper)


def decision_bounds(problem: Problem) -> tuple[np.ndarray, np.ndarray]:
    return problem.lower.copy(), problem.upper.copy()


# ---------------------------------------------------------------------------
# Objective evaluation
# ---------------------------------------------------------------------------

def _zdt1(X):
    n = X.shape[1]
    f1 = X[:, 0]
    g = 1.0 + 9.0 * X[:, 1:].sum(axis=1) / (n - 1)
    f2 = g * (1.0 - np.sqrt(f1 / g))
    return np.column_stack([f1, f2])


def _zdt2(X):
    n = X.shape[1]
    f1 = X[:, 0]
    g = 1.0 + 9.0 * X[:, 1:].sum(axis=1) / (n - 1)
    f2 = g * (1.0 - (f1 / g) ** 2)
    return np.column_stack([f1, f2])


def _zdt3(X):
    n = X.shape[1]
    f1 = X[:, 0]
    g = 1.0 + 9.0 * X[:, 1:].sum(axis=1) / (n - 1)
    f2 = g * (1.0 - np.sqrt(f1 / g) - (f1 / g) * np.sin(10.0 * np.pi * f1))
    return np.column_stack([f1, f2])


def _zdt4(X):
    n = X.shape[1]
    f1 = X[:, 0]
    tail = X[:, 1:]
    g = 1.0 + 10.0 * (n - 1) + (tail ** 2 - 10.0 * np.cos(4.0 * np.pi * tail)).sum(axis=1)
    f2 = g * (1.0 - np.sqrt(f1 / g))
    return np.column_stack([f1, f2])


def _zdt6(X):
    n = X.shape[1]
    f1 = 1.0 - np.exp(-4.0 * X[:, 0]) * np.sin(6.0 * np.pi * X[:, 0]) ** 6
    g = 1.0 + 9.0 * (X[:, 1:].sum(axis=1) / (n - 1)) ** 0.25
    f2 = g * (1.0 - (f1 / g) ** 2)
    return np.column_stack([f1, f2])


def _dtlz_g1(Xm):
    # multi-modal distance function shared by DTLZ1 and DTLZ3
    k = Xm.shape[1]
    return 100.0 * (k + ((Xm - 0.5) ** 2 - np.cos(20.0 * np.pi * (Xm - 0.5))).sum(axis=1))


def _dtlz1(X):
    g = _dtlz_g1(X[:, 2:])
    x1, x2 = X[:, 0], X[:, 1]
    f1 = 0.5 * x1 * x2 * (1.0 + g)
    f2 = 0.5 * x1 * (1.0 - x2) * (1.0 + g)
    f3 = 0.5 * (1.0 - x1) * (1.0 + g)
    return np.column_stack([f1, f2, f3])


def _dtlz_sphere(X, g):
    t1 = X[:, 0] * np.pi / 2.0
    t2 = X[:, 1] * np.pi / 2.0
    f1 = (1.0 + g) * np.cos(t1) * np.cos(t2)
    f2 = (1.0 + g) * np.cos(t1) * np.sin(t2)
    f3 = (1.0 + g) * np.sin(t1)
    return np.column_stack([f1, f2, f3])


def _dtlz2(X):
    g = ((X[:, 2:] - 0.5) ** 2).sum(axis=1)
    return _dtlz_sphere(X, g)


def _dtlz3(X):
    return _dtlz_sphere(X, _dtlz_g1(X[:, 2:]))


def _dtlz_curve(X, g):
    t1 = X[:, 0] * np.pi / 2.0
    t2 = np.pi * (1.0 + 2.0 * g * X[:, 1]) / (4.0 * (1.0 + g))
    f1 = (1.0 + g) * np.cos(t1) * np.cos(t2)
    f2 = (1.0 + g) * np.cos(t1) * np.sin(t2)
    f3 = (1.0 + g) * np.sin(t1)
    return np.column_stack([f1, f2, f3])


def _dtlz5(X):
    g = ((X[:, 2:] - 0.5) ** 2).sum(axis=1)
    return _dtlz_curve(X, g)


def _dtlz6(X):
    g = (X[:, 2:] ** 0.1).sum(axis=1)
    return _dtlz_curve(X, g)


def _oneminmax(X):
    s = X.sum(axis=1)
    return np.column_stack([s, X.shape[1] - s])


_EVALUATORS = {
    "zdt1": _zdt1,
    "zdt2": _zdt2,
    "zdt3": _zdt3,
    "zdt4": _zdt4,
    "zdt6": _zdt6,
    "dtlz1": _dtlz1,
    "dtlz2": _dtlz2,
    "dtlz3": _dtlz3,
    "dtlz5": _dtlz5,
    "dtlz6": _dtlz6,
    "oneminmax": _oneminmax,
}


def evaluate_population(problem: Problem, X: np.ndarray) -> np.ndarray:
    """Evaluate an (N, n) decision matrix; rejects out-of-bounds rows."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != problem.n:
        raise ValueError(f"{problem.id}: expected shape (N, {problem.n}), got {X.shape}")
    if np.any(X < problem.lower) or np.any(X > problem.upper):
        raise ValueError(f"{problem.id}: decision vector outside bounds (no clamping in evaluate)")
    return _EVALUATORS[problem.id](X)


def evaluate(problem: Problem, x: np.ndarray) -> np.ndarray:
    """Evaluate a single decision vector to its m objective values."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError("evaluate expects a 1-D decision vector")
    return evaluate_population(problem, x[None, :])[0]


def random_population(problem: Problem, pop_size: int, seed: int) -> np.ndarray:
    """Uniform population in the bounds box; deterministic for a fixed seed."""
    if pop_size < 2:
        raise ValueError("pop_size must be >= 2")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    return sample_population(problem, pop_size, rng)


def sample_population(problem: Problem, pop_size: int, rng: np.random.Generator) -> np.ndarray:
    u = rng.random((pop_size, problem.n))
    return problem.lower + u * (problem.upper - problem.lower)


# ---------------------------------------------------------------------------
# Reference fronts
# ---------------------------------------------------------------------------

def _simplex_lattice(h: int) -> np.ndarray:
    """All 3-part compositions of h, scaled to the unit simplex."""
    pts = []
    for i in range(h + 1):
        for j in range(h + 1 - i):
            pts.append((i, j, h - i - j))
    return np.array(pts, dtype=float) / h


def _lattice_h_for(size: int) -> int:
    # largest h with (h+1)(h+2)/2 <= size, at least h=1 (3 corner points)
    h = 1
    while (h + 2) * (h + 3) // 2 <= size:
        h += 1
    return h


def _zdt3_front(size: int) -> np.ndarray:
    # The suite defines this front only implicitly: take the analytic curve
    # and keep its non-dominated subset, then thin to `size` points.
    f1 = np.linspace(0.0, 1.0, max(20 * size, 4000))
    f2 = 1.0 - np.sqrt(f1) - f1 * np.sin(10.0 * np.pi * f1)
    keep = np.empty(len(f1), dtype=bool)
    best = np.inf
    for i, v in enumerate(f2):
        keep[i] = v < best
        best = min(best, v)
    pts = np.column_stack([f1, f2])[keep]
    idx = np.unique(np.round(np.linspace(0, len(pts) - 1, size)).astype(int))
    return pts[idx]


def default_front_size(problem: Problem) -> int:
    return 990 if problem.m == 3 else 1000


def reference_front(problem: Problem, size: int | None = None) -> ReferenceFront:
    """Sample `size` points along the analytic Pareto front.

    Two-objective fronts are uniform in f1; DTLZ1/2/3 use a simplex lattice
    on the plane/sphere (actual count is the largest lattice not exceeding
    `size`); DTLZ5/6 degenerate curves are uniform in their single angle.
    """
    if size is None:
        size = default_front_size(problem)
    if size < 2:
        raise ValueError("front size must be >= 2")
    pid, n = problem.id, problem.n
    if pid in ("zdt1", "zdt4"):
        f1 = np.linspace(0.0, 1.0, size)
        pts = np.column_stack([f1, 1.0 - np.sqrt(f1)])
    elif pid == "zdt2":
        f1 = np.linspace(0.0, 1.0, size)
        pts = np.column_stack([f1, 1.0 - f1 ** 2])
    elif pid == "zdt3":
        pts = _zdt3_front(size)
    elif pid == "zdt6":
        f1 = np.linspace(_ZDT6_F1_MIN, 1.0, size)
        pts = np.column_stack([f1, 1.0 - f1 ** 2])
    elif pid == "dtlz1":
        w = _simplex_lattice(_lattice_h_for(size))
        pts = 0.5 * w
    elif pid in ("dtlz2", "dtlz3"):
        w = _simplex_lattice(_lattice_h_for(size))
        pts = w / np.linalg.norm(w, axis=1, keepdims=True)
    elif pid in ("dtlz5", "dtlz6"):
        theta = np.linspace(0.0, np.pi / 2.0, size)
        c, s = np.cos(theta), np.sin(theta)
        pts = np.column_stack([c / np.sqrt(2.0), c / np.sqrt(2.0), s])
    elif pid == "oneminmax":
        f1 = np.linspace(0.0, float(n), size)
        pts = np.column_stack([f1, n - f1])
    else:  # pragma: no cover - guarded by make_problem
        raise ValueError(f"unknown problem id {pid!r}")
    return ReferenceFront(points=pts, source=pid)


def save_front_csv(front: ReferenceFront, path) -> None:
    """One objective vector per row, preceded by a `# problem=<id>` line."""
    with open(path, "w") as fh:
        fh.write(f"# problem={front.source}\n")
        for row in front.points:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")
