"""Tests for the log-domain power-surface fit and its diagnostics."""

import numpy as np
import pytest

from igdrift.fitting import (
    FitBox,
    FitParams,
    enforce_lower_bound,
    fit_power_surface,
    is_log_case,
    lower_bound_violation,
    predict_gain,
    r_squared_log,
    render_expression,
)


def _surface_data(coeff_a, b, d, dims=(5, 10), points=12):
    n = np.repeat(dims, points).astype(float)
    psi = np.tile(np.logspace(-2, 0, points), len(dims))
    gain = coeff_a * psi**b / n**d
    return n, psi, gain


def test_fit_recovers_exact_surface():
    n, psi, gain = _surface_data(0.5, 1.5, 2.0)
    fit = fit_power_surface(n, psi, gain)
    assert abs(fit.coeff_a - 0.5) / 0.5 < 1e-6
    assert abs(fit.b - 1.5) / 1.5 < 1e-6
    assert abs(fit.d - 2.0) / 2.0 < 1e-6
    assert abs(fit.r2 - 1.0) < 1e-9
    assert fit.kappa == len(gain)
    assert not fit.d_fixed


def test_fit_recovers_b_one_boundary():
    # b = 1 sits on the box edge; the solution must land there exactly.
    n, psi, gain = _surface_data(0.25, 1.0, 1.2)
    fit = fit_power_surface(n, psi, gain)
    assert fit.b == 1.0
    assert abs(fit.coeff_a - 0.25) / 0.25 < 1e-6
    assert abs(fit.d - 1.2) / 1.2 < 1e-6
    assert abs(fit.r2 - 1.0) < 1e-9
    assert is_log_case(fit)


def test_fit_single_dimension_pins_d():
    n, psi, gain = _surface_data(0.5, 2.0, 1.0, dims=(7,))
    fit = fit_power_surface(n, psi, gain)
    assert fit.d_fixed and fit.d == 0.0
    # With n fixed at 7, A absorbs the 1/7 factor.
    assert abs(fit.coeff_a - 0.5 / 7.0) / (0.5 / 7.0) < 1e-6
    assert abs(fit.b - 2.0) / 2.0 < 1e-6


def test_fit_respects_constraint_box():
    # Data generated below b = 1 must be clamped onto the boundary.
    n, psi, gain = _surface_data(0.5, 0.5, 1.0)
    fit = fit_power_surface(n, psi, gain)
    assert fit.b == 1.0
    box = FitBox()
    assert 1.0 / box.a_inv_max <= fit.coeff_a <= 1.0 / box.a_inv_min
    assert 0.0 < fit.d <= box.d_max


def test_fit_is_order_invariant():
    rng = np.random.default_rng(5)
    n, psi, gain = _surface_data(0.5, 1.5, 2.0)
    gain = gain * np.exp(0.1 * rng.standard_normal(len(gain)))
    fit = fit_power_surface(n, psi, gain)
    perm = rng.permutation(len(gain))
    fit2 = fit_power_surface(n[perm], psi[perm], gain[perm])
    assert abs(fit.coeff_a - fit2.coeff_a) < 1e-9
    assert abs(fit.b - fit2.b) < 1e-9
    assert abs(fit.d - fit2.d) < 1e-9


def test_fit_beats_random_box_points():
    # The returned triple must not lose to any random in-box triple on
    # log-domain squared error.
    rng = np.random.default_rng(11)
    n, psi, gain = _surface_data(0.4, 1.8, 1.5)
    gain = gain * np.exp(0.2 * rng.standard_normal(len(gain)))
    fit = fit_power_surface(n, psi, gain)

    def sse(a, b, d):
        pred = a * psi**b / n**d
        return float(((np.log10(pred) - np.log10(gain)) ** 2).sum())

    best = sse(fit.coeff_a, fit.b, fit.d)
    box = fit.box
    for trial in range(100):
        a = 10.0 ** rng.uniform(-np.log10(box.a_inv_max), -np.log10(box.a_inv_min))
        b = rng.uniform(1.0, box.b_max)
        d = rng.uniform(1e-9, box.d_max)
        assert sse(a, b, d) >= best - 1e-9


def test_fit_validates_inputs():
    with pytest.raises(ValueError):
        fit_power_surface([5, 5], [0.1, 0.2], [0.01, 0.02])
    with pytest.raises(ValueError):
        fit_power_surface([5, 5, 10], [0.1, 0.1, 0.1], [0.01, 0.02, 0.03])
    with pytest.raises(ValueError):
        fit_power_surface([5, 5, 10], [0.1, 0.2, 0.3], [0.01, 0.0, 0.03])


def test_r_squared_log_hand_case():
    # logs are {0, 1} against {1, 0}: SST = 0.5, SSE = 2, so R^2 = -3.
    assert abs(r_squared_log([1.0, 10.0], [10.0, 1.0]) - (-3.0)) < 1e-12
    assert abs(r_squared_log([1.0, 10.0], [1.0, 10.0]) - 1.0) < 1e-12


def test_r_squared_log_errors():
    with pytest.raises(ValueError):
        r_squared_log([1.0, -1.0], [1.0, 1.0])
    with pytest.raises(ValueError):
        r_squared_log([2.0, 2.0], [1.0, 3.0])


def test_predict_gain_shapes():
    params = FitParams(coeff_a=0.5, b=2.0, d=1.0, r2=1.0, kappa=3)
    assert abs(predict_gain(params, 5, 0.2) - 0.5 * 0.04 / 5) < 1e-15
    out = predict_gain(params, np.array([5.0, 10.0]), np.array([0.2, 0.2]))
    np.testing.assert_allclose(out, [0.004, 0.002])


def test_lower_bound_violation_fractions():
    n, psi, gain = _surface_data(0.5, 1.5, 2.0)
    exact = fit_power_surface(n, psi, gain)
    half = FitParams(coeff_a=exact.coeff_a * 0.5, b=exact.b, d=exact.d,
                     r2=exact.r2, kappa=exact.kappa)
    double = FitParams(coeff_a=exact.coeff_a * 2.0, b=exact.b, d=exact.d,
                       r2=exact.r2, kappa=exact.kappa)
    assert lower_bound_violation(half, n, psi, gain) == 0.0
    assert lower_bound_violation(double, n, psi, gain) == 1.0


def test_enforce_lower_bound_touches_from_below():
    rng = np.random.default_rng(2)
    n, psi, gain = _surface_data(0.5, 1.5, 2.0)
    gain = gain * np.exp(0.2 * rng.standard_normal(len(gain)))
    fit = fit_power_surface(n, psi, gain)
    assert lower_bound_violation(fit, n, psi, gain) > 0.0
    low = enforce_lower_bound(fit, n, psi, gain)
    assert lower_bound_violation(low, n, psi, gain) == 0.0
    ratio = gain / predict_gain(low, n, psi)
    assert abs(ratio.min() - 1.0) < 1e-12
    assert low.b == fit.b and low.d == fit.d


def test_fit_params_validation():
    with pytest.raises(ValueError):
        FitParams(coeff_a=0.0, b=1.0, d=1.0, r2=0.0, kappa=1)
    with pytest.raises(ValueError):
        FitParams(coeff_a=1.0, b=0.5, d=1.0, r2=0.0, kappa=1)
    with pytest.raises(ValueError):
        FitParams(coeff_a=1.0, b=1.0, d=0.0, r2=0.0, kappa=1)
    FitParams(coeff_a=1.0, b=1.0, d=0.0, r2=0.0, kappa=1, d_fixed=True)
    with pytest.raises(ValueError):
        FitParams(coeff_a=1.0, b=1.0, d=1.0, r2=0.0, kappa=0)


def test_fit_box_validation():
    with pytest.raises(ValueError):
        FitBox(b_max=0.5)
    with pytest.raises(ValueError):
        FitBox(d_max=0.0)
    with pytest.raises(ValueError):
        FitBox(a_inv_min=2.0, a_inv_max=1.0)


def test_is_log_case_threshold():
    assert is_log_case(FitParams(coeff_a=1.0, b=1.0, d=1.0, r2=0.0, kappa=1))
    assert not is_log_case(FitParams(coeff_a=1.0, b=1.5, d=1.0, r2=0.0, kappa=1))


def test_render_expression_power_case():
    params = FitParams(coeff_a=0.5, b=2.0, d=1.5, r2=0.9, kappa=10)
    text = render_expression(params)
    assert text == "2.000 × n^1.500 (eps^-1.000 - X0^-1.000) + 1"


def test_render_expression_log_case():
    params = FitParams(coeff_a=0.2, b=1.0, d=0.8, r2=0.9, kappa=10)
    text = render_expression(params)
    assert text == "5.000 × n^0.800 ln(X0/eps) + 1"
