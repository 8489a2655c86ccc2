"""Power-law gain surface f(psi, n) = A * psi^b / n^d fitted in log10 domain.

Taking log10 makes the model linear in (log10 A, b, d), so the fit is a
box-constrained linear least squares problem solved exactly.  The same
log10 geometry scores the fit: the modified R-squared compares log
residuals against log variance and may go negative for bad surfaces.
Only the ratio A of the surface's numerator and denominator coefficients
is identifiable; reports render the reciprocal 1/A, which reads directly
as a leading constant of the resulting runtime expression.
"""

from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import lsq_linear

__all__ = [
    "FitBox",
    "FitParams",
    "enforce_lower_bound",
    "fit_power_surface",
    "is_log_case",
    "lower_bound_violation",
    "predict_gain",
    "r_squared_log",
    "render_expression",
]

_D_FLOOR = 1e-9  # open lower end of the d constraint
_SNAP = 1e-9


@dataclass(frozen=True)
class FitBox:
    """Constraint box for the fit: b in [1, b_max], d in (0, d_max], 1/A in [a_inv_min, a_inv_max]."""

    b_max: float = 4.0
    d_max: float = 4.0
    a_inv_min: float = 1e-3
    a_inv_max: float = 30.0

    def __post_init__(self):
        if self.b_max < 1.0 or self.d_max <= 0.0:
            raise ValueError("b_max must be >= 1 and d_max positive")
        if not 0.0 < self.a_inv_min < self.a_inv_max:
            raise ValueError("need 0 < a_inv_min < a_inv_max")

    def to_dict(self):
        return {
            "b_max": self.b_max,
            "d_max": self.d_max,
            "a_inv_min": self.a_inv_min,
            "a_inv_max": self.a_inv_max,
        }


@dataclass(frozen=True)
class FitParams:
    """Fitted surface parameters; d_fixed marks d pinned to 0 because only
    one dimension was present (d unidentifiable)."""

    coeff_a: float
    b: float
    d: float
    r2: float
    kappa: int
    d_fixed: bool = False
    box: FitBox = field(default_factory=FitBox)

    def __post_init__(self):
        if self.coeff_a <= 0:
            raise ValueError("coeff_a must be positive")
        if self.b < 1.0:
            raise ValueError("b must be at least 1")
        if self.d < 0 or (self.d == 0 and not self.d_fixed):
            raise ValueError("d must be positive unless fixed")
        if self.kappa < 1:
            raise ValueError("kappa must be positive")


def predict_gain(params, n, psi):
    """Surface value A * psi^b / n^d; inputs may be scalars or arrays."""
    n = np.asarray(n, dtype=float)
    psi = np.asarray(psi, dtype=float)
    out = params.coeff_a * psi**params.b / n**params.d
    if out.ndim == 0:
        return float(out)
    return out


def r_squared_log(observed, predicted):
    """1 - SSE/SST on log10 values; negative when worse than the mean."""
    obs = np.asarray(observed, dtype=float)
    pred = np.asarray(predicted, dtype=float)
    if np.any(obs <= 0) or np.any(pred <= 0):
        raise ValueError("observations and predictions must be positive")
    lg_obs = np.log10(obs)
    lg_pred = np.log10(pred)
    sst = float(((lg_obs - lg_obs.mean()) ** 2).sum())
    if sst == 0.0:
        raise ValueError("all observed gains equal; R^2 undefined")
    sse = float(((lg_pred - lg_obs) ** 2).sum())
    return 1.0 - sse / sst


def _snap(value, lo, hi):
    if abs(value - lo) < _SNAP:
        return lo
    if abs(value - hi) < _SNAP:
        return hi
    return value


def fit_power_surface(n, psi, gain, box=None):
    """Least-squares fit of log10 gain over (log10 A, b, d) in the box.

    Requires at least 3 points, 2 distinct psi values, and positive gains.
    With a single distinct dimension, d is unidentifiable: it is fixed at
    0 (flagged via ``d_fixed``) and only (A, b) are fitted.
    """
    box = box or FitBox()
    n = np.asarray(n, dtype=float)
    psi = np.asarray(psi, dtype=float)
    gain = np.asarray(gain, dtype=float)
    if len(gain) < 3:
        raise ValueError("need at least 3 points")
    if len(np.unique(psi)) < 2:
        raise ValueError("need at least 2 distinct psi values")
    if np.any(gain <= 0) or np.any(psi <= 0):
        raise ValueError("psi and gains must be positive")

    y = np.log10(gain)
    log_a_lo = -np.log10(box.a_inv_max)
    log_a_hi = -np.log10(box.a_inv_min)
    d_fixed = len(np.unique(n)) < 2
    if d_fixed:
        design = np.column_stack([np.ones_like(y), np.log10(psi)])
        lower = [log_a_lo, 1.0]
        upper = [log_a_hi, box.b_max]
    else:
        design = np.column_stack([np.ones_like(y), np.log10(psi), -np.log10(n)])
        lower = [log_a_lo, 1.0, _D_FLOOR]
        upper = [log_a_hi, box.b_max, box.d_max]
    sol = lsq_linear(design, y, bounds=(lower, upper), method="bvls")
    theta = [_snap(v, lo, hi) for v, lo, hi in zip(sol.x, lower, upper)]
    coeff_a = float(10.0 ** theta[0])
    b = float(theta[1])
    d = 0.0 if d_fixed else float(theta[2])
    params = FitParams(
        coeff_a=coeff_a, b=b, d=d, r2=0.0, kappa=len(gain), d_fixed=d_fixed, box=box
    )
    r2 = r_squared_log(gain, predict_gain(params, n, psi))
    return replace(params, r2=r2)


def lower_bound_violation(params, n, psi, gain):
    """Fraction of points the surface exceeds; 0 means it lower-bounds all."""
    pred = predict_gain(params, np.asarray(n, float), np.asarray(psi, float))
    return float(np.mean(pred > np.asarray(gain, float)))


def enforce_lower_bound(params, n, psi, gain):
    """Rescale A so the surface touches the data from below.

    A is multiplied by min(gain / prediction); the result is clamped back
    into the constraint box if the shrink would leave it, and R^2 is
    recomputed for the rescaled surface.
    """
    pred = predict_gain(params, np.asarray(n, float), np.asarray(psi, float))
    ratio = float(np.min(np.asarray(gain, float) / pred))
    new_a = params.coeff_a * ratio
    new_a = min(max(new_a, 1.0 / params.box.a_inv_max), 1.0 / params.box.a_inv_min)
    rescaled = replace(params, coeff_a=new_a)
    r2 = r_squared_log(gain, predict_gain(rescaled, n, psi))
    return replace(rescaled, r2=r2)


def is_log_case(params):
    """True when the surface is in the b = 1 regime (logarithmic bound)."""
    return params.b <= 1.0 + _SNAP


def render_expression(params):
    """Bound expression in table form, e.g. `1.423 × n^1.234 ln(X0/eps) + 1`."""
    if is_log_case(params):
        coeff = 1.0 / params.coeff_a
        return f"{coeff:.3f} × n^{params.d:.3f} ln(X0/eps) + 1"
    bm1 = params.b - 1.0
    coeff = 1.0 / (params.coeff_a * bm1)
    return (
        f"{coeff:.3f} × n^{params.d:.3f} "
        f"(eps^-{bm1:.3f} - X0^-{bm1:.3f}) + 1"
    )
