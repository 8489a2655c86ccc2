"""Real-coded variation operators: bounded SBX crossover and polynomial mutation.

Both operators draw a fixed-shape block of random numbers per call and apply
probability gates through masks, so the random stream consumed depends only
on the input shapes.  Offspring are clamped to the decision bounds.
"""

import numpy as np

__all__ = ["sbx_crossover", "polynomial_mutation", "sbx_batch", "mutation_batch"]

_EPS = 1e-14


def sbx_batch(P1, P2, lower, upper, eta_c, pc, rng):
    """SBX on paired parent matrices (P, n); returns two child matrices."""
    P1 = np.asarray(P1, dtype=float)
    P2 = np.asarray(P2, dtype=float)
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    if eta_c <= 0:
        raise ValueError("eta_c must be positive")
    if not 0.0 <= pc <= 1.0:
        raise ValueError("pc must be a probability")
    npairs, nvar = P1.shape

    cross_pair = rng.random(npairs) < pc
    cross_var = rng.random((npairs, nvar)) < 0.5
    u = rng.random((npairs, nvar))
    swap = rng.random((npairs, nvar)) < 0.5

    y1 = np.minimum(P1, P2)
    y2 = np.maximum(P1, P2)
    delta = y2 - y1
    active = cross_pair[:, None] & cross_var & (delta > _EPS)
    safe = np.where(delta > _EPS, delta, 1.0)

    exp = eta_c + 1.0

    def _betaq(beta):
        alpha = 2.0 - beta ** -exp
        inv = 1.0 / alpha
        return np.where(
            u <= inv,
            (u * alpha) ** (1.0 / exp),
            (1.0 / np.maximum(2.0 - u * alpha, _EPS)) ** (1.0 / exp),
        )

    bq1 = _betaq(1.0 + 2.0 * (y1 - lower) / safe)
    bq2 = _betaq(1.0 + 2.0 * (upper - y2) / safe)
    c1 = 0.5 * ((y1 + y2) - bq1 * delta)
    c2 = 0.5 * ((y1 + y2) + bq2 * delta)
    c1 = np.clip(c1, lower, upper)
    c2 = np.clip(c2, lower, upper)
    c1, c2 = np.where(swap, c2, c1), np.where(swap, c1, c2)

    child1 = np.where(active, c1, P1)
    child2 = np.where(active, c2, P2)
    return child1, child2


def sbx_crossover(p1, p2, lower, upper, eta_c, pc, rng):
    """SBX on a single parent pair; returns two decision vectors."""
    c1, c2 = sbx_batch(
        np.atleast_2d(p1), np.atleast_2d(p2), lower, upper, eta_c, pc, rng
    )
    return c1[0], c2[0]


def mutation_batch(X, lower, upper, eta_m, pm, rng):
    """Polynomial mutation on a decision matrix (N, n)."""
    X = np.asarray(X, dtype=float)
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    if eta_m <= 0:
        raise ValueError("eta_m must be positive")
    if not 0.0 <= pm <= 1.0:
        raise ValueError("pm must be a probability")

    do = rng.random(X.shape) < pm
    u = rng.random(X.shape)

    span = upper - lower
    d1 = (X - lower) / span
    d2 = (upper - X) / span
    exp = eta_m + 1.0
    low_side = u < 0.5
    val = np.where(
        low_side,
        2.0 * u + (1.0 - 2.0 * u) * (1.0 - d1) ** exp,
        2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d2) ** exp,
    )
    deltaq = np.where(low_side, val ** (1.0 / exp) - 1.0, 1.0 - val ** (1.0 / exp))
    mutated = np.clip(X + deltaq * span, lower, upper)
    return np.where(do, mutated, X)


def polynomial_mutation(x, lower, upper, eta_m, pm, rng):
    """Polynomial mutation of a single decision vector."""
    return mutation_batch(np.atleast_2d(x), lower, upper, eta_m, pm, rng)[0]
