"""Closed-form series, reconstruction identities, and order fitting."""

import math

import numpy as np
import pytest

from deltagas.asymptotics import (
    DegenerateFitError,
    eb_series,
    ef_reconstruction,
    ef_series,
    fint_series,
    fit_order,
    gplus_coeffs,
    q_series,
    xi2_coefficient_series,
)
from deltagas.fredholm import Statistics, gamma_from_solution, solve_love

PI = math.pi


def test_q_series_formula():
    k = 0.1
    want = 1.0 / PI + (k / (2.0 * PI**2)) * (math.log(1.0 / k) + math.log(PI) + 1.0)
    assert q_series(k) == pytest.approx(want, rel=1e-15)
    # the log term must push the charge above the free value 1/pi
    assert q_series(1e-6) > 1.0 / PI
    assert q_series(1e-6) - 1.0 / PI < 1e-5


def test_ef_series_formula():
    assert ef_series(0.2) == pytest.approx(PI**2 / 12.0 - 0.1, rel=1e-15)
    assert PI**2 / 12.0 == pytest.approx(0.8224670334241132)


def test_eb_series_formula():
    g = 0.25
    want = g - (4.0 / (3.0 * PI)) * g**1.5 + (1.0 / 6.0 - 1.0 / PI**2) * g * g
    assert eb_series(g) == pytest.approx(want, rel=1e-15)


def test_fint_series_formula():
    r = 20.0
    want = r + (math.log(r) + math.log(PI / 2.0) + 1.0) / PI
    assert fint_series(r) == pytest.approx(want, rel=1e-15)


def test_gplus_coeffs_formulas():
    r = 20.0
    lr = math.log(r)
    euler = 0.5772156649015329
    g0, g1, g2 = gplus_coeffs(r)
    assert g0 == pytest.approx((lr + math.log(PI / 2.0) + 1.0) / (2.0 * PI), rel=1e-15)
    assert g1 == pytest.approx(-r * (lr + euler - 1.0) / (2.0 * PI), rel=1e-14)
    assert g2 == pytest.approx(-r * r * (lr + euler - 1.5) / (4.0 * PI), rel=1e-14)


def test_xi2_coefficient_series_formula():
    r = 20.0
    want = -(r**3) / 24.0 - (r * r / (8.0 * PI)) * (
        math.log(r) + math.log(PI / 2.0) - 1.0
    )
    assert xi2_coefficient_series(r) == pytest.approx(want, rel=1e-15)
    # cubic term dominates for large r
    big = 1e5
    assert abs(xi2_coefficient_series(big) / (-(big**3) / 24.0) - 1.0) < 2e-4


def test_ef_reconstruction_reaches_weak_coupling_energy():
    # gamma = pi/r at leading order, so eps_F should come out at
    # pi^2/12 - gamma/2 up to O(gamma^2 log)
    r = 100.0
    want = PI**2 / 12.0 - 0.5 * (PI / r)
    assert abs(ef_reconstruction(r) - want) < 1e-5


def test_gamma_map_matches_charge_series():
    # Fermi gamma = kappa / (2 Q); with Q from the series the mismatch
    # against the solver is O(kappa^2 log^2)
    kappa = 0.02
    sol = solve_love(Statistics.FERMI, kappa, 800, check=False)
    approx = kappa / (2.0 * q_series(kappa))
    bound = kappa**2 * math.log(1.0 / kappa) ** 2
    assert abs(gamma_from_solution(sol) - approx) < bound


def test_fit_order_recovers_powers():
    xs = np.logspace(-3, -1, 8)
    slope, stderr = fit_order(xs, xs**2)
    assert slope == pytest.approx(2.0, abs=1e-12)
    assert stderr < 1e-12
    slope, _ = fit_order(xs, 3.5 * xs**3)
    assert slope == pytest.approx(3.0, abs=1e-12)


def test_fit_order_with_log_drag():
    # x^2 log^2(1/x) fits below 2 on a finite window
    xs = np.logspace(-3, -1, 10)
    slope, _ = fit_order(xs, xs**2 * np.log(1.0 / xs) ** 2)
    assert 1.4 < slope < 2.0


def test_fit_order_directions_and_constants():
    xs = np.logspace(-3, -1, 8)
    up, _ = fit_order(xs, xs**2)
    down, _ = fit_order(xs[::-1], xs[::-1] ** 2)
    assert up == pytest.approx(down, rel=1e-12)
    flat, _ = fit_order(xs, np.full(8, 0.37))
    assert abs(flat) < 1e-12
    # sign of the residual is irrelevant
    signed, _ = fit_order(xs, xs**2 * np.resize([1.0, -1.0], 8))
    assert signed == pytest.approx(2.0, abs=1e-12)


def test_fit_order_rejects_bad_input():
    xs = np.logspace(-3, -1, 8)
    with pytest.raises(DegenerateFitError):
        fit_order(xs, np.zeros(8))
    with pytest.raises(DegenerateFitError):
        fit_order(xs, np.r_[xs[:-1] ** 2, np.nan])
    with pytest.raises(ValueError):
        fit_order(xs[:3], xs[:3] ** 2)
    with pytest.raises(ValueError):
        fit_order(-xs, xs**2)
    with pytest.raises(ValueError):
        fit_order(np.r_[xs[:4], xs[:4]], np.ones(8))
    with pytest.raises(ValueError):
        fit_order(xs, xs[:5] ** 2)


@pytest.mark.parametrize(
    "fn,bad",
    [
        (q_series, 1.0),
        (q_series, 0.0),
        (q_series, -0.3),
        (ef_series, 1.5),
        (eb_series, 0.0),
        (fint_series, 1.0),
        (fint_series, 0.5),
        (gplus_coeffs, 1.0),
        (xi2_coefficient_series, 0.8),
        (ef_reconstruction, 1.0),
        (fint_series, np.inf),
    ],
)
def test_series_domains(fn, bad):
    with pytest.raises(ValueError):
        fn(bad)
