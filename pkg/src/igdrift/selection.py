"""Adaptive selection of gain samples before surface fitting.

Per dimension, in order: drop zero-gain records, denoise the remaining
(psi, gain) cloud with LOESS, then pick the samples closest to an
arithmetic grid of M = 2n psi values.  The picked gains from all
dimensions are finally rescaled together by lambda = g_max / g_mean of
the pooled selected set, restoring the amplitude lost to smoothing
without tilting the cross-dimension structure the exponent d is fitted
from.  The whole stage is deterministic — no randomness anywhere.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DimensionSelection",
    "SelectedSamples",
    "loess_smooth",
    "remove_zero_gain",
    "scale_gains",
    "select",
    "select_uniform",
]


def remove_zero_gain(psi, gain):
    """Drop samples whose gain is zero (or negative); order preserved."""
    psi = np.asarray(psi, dtype=float)
    gain = np.asarray(gain, dtype=float)
    keep = gain > 0
    if not keep.any():
        raise ValueError("all gains are zero; collection stagnated")
    return psi[keep], gain[keep]


def loess_smooth(psi, gain, span=0.3):
    """Locally weighted degree-1 regression evaluated at each input psi.

    ``span`` is the fraction of points in each local window (at least 3).
    Weights are tricube in |psi - psi0| scaled by the window's widest
    distance; a window with no psi spread falls back to its weighted mean.
    """
    x = np.asarray(psi, dtype=float)
    y = np.asarray(gain, dtype=float)
    if len(x) < 3:
        raise ValueError("loess needs at least 3 points")
    if not 0.0 < span <= 1.0:
        raise ValueError("span must be in (0, 1]")
    count = len(x)
    q = min(max(int(np.ceil(span * count)), 3), count)
    out = np.empty(count)
    for i in range(count):
        dist = np.abs(x - x[i])
        h = np.partition(dist, q - 1)[q - 1]
        if h == 0.0:
            out[i] = y[dist == 0.0].mean()
            continue
        u = np.clip(dist / h, 0.0, 1.0)
        w = (1.0 - u**3) ** 3
        sw = w.sum()
        xm = (w * x).sum() / sw
        ym = (w * y).sum() / sw
        sxx = (w * (x - xm) ** 2).sum()
        if sxx > 0.0:
            slope = (w * (x - xm) * (y - ym)).sum() / sxx
        else:
            slope = 0.0
        out[i] = ym + slope * (x[i] - xm)
    return out


def select_uniform(psi, m):
    """Indices of points nearest an M-term arithmetic psi grid.

    The grid spans [psi_min, psi_max]; each grid value claims its nearest
    point (first index on ties) and duplicate claims collapse, so fewer
    than ``m`` indices may return.
    """
    psi = np.asarray(psi, dtype=float)
    if len(psi) == 0:
        raise ValueError("no points to select from")
    if m < 2:
        raise ValueError("m must be at least 2")
    grid = np.linspace(psi.min(), psi.max(), int(m))
    picked = np.abs(psi[None, :] - grid[:, None]).argmin(axis=1)
    return np.unique(picked)


def scale_gains(gain):
    """Multiply gains by lambda = max/mean; returns (scaled, lambda)."""
    gain = np.asarray(gain, dtype=float)
    if len(gain) == 0 or np.any(gain <= 0):
        raise ValueError("gains must be non-empty and positive")
    lam = float(gain.max() / gain.mean())
    return gain * lam, lam


@dataclass(frozen=True)
class DimensionSelection:
    """Selected (psi, gain) points for one dimension plus stage metadata."""

    n: int
    psi: np.ndarray
    gain: np.ndarray
    m_target: int
    lam: float
    psi_min: float
    psi_max: float
    span: float
    shortfall: bool
    smoothed: bool
    dropped_nonpositive: int


@dataclass(frozen=True)
class SelectedSamples:
    dimensions: tuple
    metadata: dict

    def columns(self):
        """Stacked arrays (n, psi, gain) across dimensions."""
        n = np.concatenate(
            [np.full(len(d.psi), d.n, dtype=np.int64) for d in self.dimensions]
        )
        psi = np.concatenate([d.psi for d in self.dimensions])
        gain = np.concatenate([d.gain for d in self.dimensions])
        return n, psi, gain


def select(sample_set, span=0.3):
    """Full selection pipeline over a pooled sample set.

    M = 2n points are targeted per dimension; if fewer distinct points
    survive filtering, all survivors are kept and the shortfall flagged.
    Windows too small to smooth (under 3 points) skip LOESS, and smoothed
    values that come out non-positive are dropped before selection.  One
    lambda, computed on the pooled selected set, scales every dimension:
    a per-dimension lambda would shift the dimensions' gain levels
    against each other and leak its noise straight into the exponent d.
    """
    picked = []
    for n in sample_set.dims:
        records = sample_set.for_dimension(n)
        if not records:
            raise ValueError(f"no samples collected for dimension {n}")
        psi = np.array([s.psi for s in records])
        gain = np.array([s.avg_gain for s in records])
        psi, gain = remove_zero_gain(psi, gain)
        smoothed_flag = len(psi) >= 3
        smooth = loess_smooth(psi, gain, span) if smoothed_flag else gain
        positive = smooth > 0
        dropped = int(len(smooth) - positive.sum())
        psi, smooth = psi[positive], smooth[positive]
        if len(psi) == 0:
            raise ValueError(f"smoothing left no positive gains for dimension {n}")
        m_target = 2 * n
        idx = select_uniform(psi, m_target)
        picked.append(
            {
                "n": n,
                "psi_all": psi,
                "idx": idx,
                "m_target": m_target,
                "smoothed_flag": smoothed_flag,
                "dropped": dropped,
                "gains": smooth[idx],
            }
        )

    pooled = np.concatenate([p["gains"] for p in picked])
    scaled, lam = scale_gains(pooled)
    offsets = np.cumsum([0] + [len(p["gains"]) for p in picked])
    dimensions = []
    for p, start, stop in zip(picked, offsets[:-1], offsets[1:]):
        dimensions.append(
            DimensionSelection(
                n=p["n"],
                psi=p["psi_all"][p["idx"]],
                gain=scaled[start:stop],
                m_target=p["m_target"],
                lam=lam,
                psi_min=float(p["psi_all"].min()),
                psi_max=float(p["psi_all"].max()),
                span=float(span),
                shortfall=len(p["idx"]) < p["m_target"],
                smoothed=p["smoothed_flag"],
                dropped_nonpositive=p["dropped"],
            )
        )
    meta = {
        "span": float(span),
        "lambda": lam,
        "per_dimension": {
            str(d.n): {
                "m": d.m_target,
                "selected": int(len(d.psi)),
                "lambda": d.lam,
                "psi_min": d.psi_min,
                "psi_max": d.psi_max,
                "shortfall": d.shortfall,
                "smoothed": d.smoothed,
                "dropped_nonpositive": d.dropped_nonpositive,
            }
            for d in dimensions
        },
        "source": dict(sample_set.metadata),
    }
    return SelectedSamples(dimensions=tuple(dimensions), metadata=meta)
