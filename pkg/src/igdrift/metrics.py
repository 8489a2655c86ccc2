"""Inverted generational distance and the best-so-far IGD process."""

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

__all__ = ["igd", "IgdTracker", "update_best", "igd_gain"]


def igd(solution_objectives: np.ndarray, reference: np.ndarray) -> float:
    """Mean Euclidean distance from each reference point to its nearest solution.

    Distances are taken in raw objective space (no normalization).
    ``reference`` may be a ReferenceFront or a plain point array.
    """
    sols = np.asarray(solution_objectives, dtype=float)
    ref = np.asarray(getattr(reference, "points", reference), dtype=float)
    if sols.size == 0:
        raise ValueError("solution set is empty")
    if ref.size == 0:
        raise ValueError("reference set is empty")
    if sols.ndim != 2 or ref.ndim != 2 or sols.shape[1] != ref.shape[1]:
        raise ValueError(
            f"objective count mismatch: solutions {sols.shape} vs reference {ref.shape}"
        )
    return float(cdist(ref, sols).min(axis=1).mean())


@dataclass(frozen=True)
class IgdTracker:
    """Best-so-far IGD value, non-increasing across generations."""

    best_so_far: float = np.inf
    generation: int = -1


def update_best(tracker: IgdTracker, igd_value: float) -> IgdTracker:
    """Fold one generation's IGD into the best-so-far minimum."""
    if igd_value < 0:
        raise ValueError(f"IGD value must be non-negative, got {igd_value}")
    return IgdTracker(
        best_so_far=min(tracker.best_so_far, float(igd_value)),
        generation=tracker.generation + 1,
    )


def igd_gain(psi_t: float, psi_next: float) -> float:
    """One-generation decrease of the best-so-far IGD."""
    if psi_next > psi_t:
        raise ValueError(
            f"best-so-far IGD increased ({psi_t} -> {psi_next}); tracker misuse"
        )
    return psi_t - psi_next
