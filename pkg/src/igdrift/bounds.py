"""Expected-first-hitting-time upper bounds from a fitted gain surface.

With gain lower-bounded by h(z) = A z^b / n^d, the hitting time to
precision eps from initial value X0 is bounded by 1 + the integral of
1/h over [eps, X0].  The integral has closed forms — logarithmic for
b = 1 and a power law for b > 1 — and an adaptive-quadrature evaluation
of the same integral serves as an independent cross-check.  Bounds are
reported both in generations and in objective evaluations (generations
times the offspring batch size).
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .fitting import is_log_case

__all__ = [
    "BoundEstimate",
    "complexity_class",
    "efht_upper_closed",
    "efht_upper_numeric",
]


@dataclass(frozen=True)
class BoundEstimate:
    """One evaluated bound: value in generations plus rendering metadata."""

    params: object
    n: int
    x0: float
    epsilon: float
    value: float
    value_evaluations: float
    case: str
    complexity: str
    batch_size: int

    def __post_init__(self):
        if self.value < 1.0:
            raise ValueError("bound value cannot fall below 1")


def _check_interval(x0, epsilon):
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if epsilon > x0:
        raise ValueError("epsilon cannot exceed X0")


def complexity_class(params):
    """Asymptotic class string, e.g. `O(n^1.234 ln(X0/eps))`."""
    if is_log_case(params):
        return f"O(n^{params.d:.3f} ln(X0/eps))"
    return f"O(n^{params.d:.3f} eps^-{params.b - 1.0:.3f})"


def efht_upper_closed(params, n, x0, epsilon, batch_size=1):
    """Closed-form bound on the expected hitting time, in generations.

    b = 1:  1 + (n^d / A) ln(X0/eps)
    b > 1:  1 + (n^d / (A (b-1))) (eps^(1-b) - X0^(1-b))
    eps = X0 gives exactly 1.
    """
    _check_interval(x0, epsilon)
    scale = float(n) ** params.d / params.coeff_a
    if epsilon == x0:
        value = 1.0
    elif is_log_case(params):
        value = 1.0 + scale * np.log(x0 / epsilon)
    else:
        bm1 = params.b - 1.0
        value = 1.0 + scale / bm1 * (epsilon**-bm1 - x0**-bm1)
    case = "b=1" if is_log_case(params) else "b>1"
    return BoundEstimate(
        params=params,
        n=int(n),
        x0=float(x0),
        epsilon=float(epsilon),
        value=float(value),
        value_evaluations=float(value) * int(batch_size),
        case=case,
        complexity=complexity_class(params),
        batch_size=int(batch_size),
    )


def efht_upper_numeric(params, n, x0, epsilon):
    """Same bound via adaptive quadrature of 1/h; relative tolerance 1e-9."""
    _check_interval(x0, epsilon)
    if epsilon == x0:
        return 1.0
    a, b, d = params.coeff_a, params.b, params.d
    nd = float(n) ** d
    integral, _ = quad(
        lambda z: nd / (a * z**b), epsilon, x0, epsrel=1e-9, limit=200
    )
    return 1.0 + integral
