"""Gamma-family special functions on the complex plane."""

import numpy as np
import pytest
import scipy.integrate as si
import scipy.special as ss

from deltagas.special import PoleError, digamma, log_gamma, recip_gamma

EULER = 0.5772156649015328606

# pinned with tools/make_oracles.py (mpmath, 50 digits)
LOG_GAMMA_HALF_P3I = 0.3770211256102054 - 0.52581144665916513j
DIGAMMA_HALF_P3I = -1.3979326294058074 + 1.1566693833242379j
RECIP_GAMMA_2P5 = 0.75225277806367508


def test_log_gamma_classic_values():
    assert abs(log_gamma(1.0)) < 5e-15
    assert abs(log_gamma(2.0)) < 5e-15
    assert abs(log_gamma(0.5) - 0.5 * np.log(np.pi)) < 1e-14
    assert abs(log_gamma(5.0) - np.log(24.0)) < 1e-13


def test_log_gamma_complex_pin():
    assert abs(log_gamma(0.5 + 0.3j) - LOG_GAMMA_HALF_P3I) < 1e-13


def test_log_gamma_continuation_matches_scipy():
    rng = np.random.default_rng(3)
    zs = rng.uniform(-8.0, 12.0, 80) + 1j * rng.uniform(-10.0, 10.0, 80)
    zs = zs[(np.abs(zs.imag) > 0.05) | (zs.real > 0.5)]
    for z in zs:
        got = log_gamma(complex(z))
        want = ss.loggamma(complex(z))
        assert abs(got - want) < 1e-11 * (1.0 + abs(want))


@pytest.mark.parametrize("z", [0.0, -1.0, -3.0, -12.0])
def test_log_gamma_pole(z):
    with pytest.raises(PoleError):
        log_gamma(z)
    with pytest.raises(PoleError):
        digamma(z)


def test_log_gamma_rejects_non_finite():
    with pytest.raises(ValueError):
        log_gamma(np.nan)
    with pytest.raises(ValueError):
        log_gamma(complex(np.inf, 0.0))


def test_digamma_classic_values():
    assert abs(digamma(1.0) + EULER) < 1e-13
    assert abs(digamma(2.0) - (1.0 - EULER)) < 1e-13
    # psi(1/2) = -gamma_E - 2 log 2
    assert abs(digamma(0.5) - (-EULER - 2.0 * np.log(2.0))) < 1e-13


def test_digamma_complex_pin():
    assert abs(digamma(0.5 + 0.3j) - DIGAMMA_HALF_P3I) < 1e-13


@pytest.mark.parametrize(
    "z", [0.3 + 0.7j, -1.5 + 0.2j, 4.0 - 2.0j, 0.1 + 0.0j, -6.3 - 1.1j]
)
def test_digamma_recurrence(z):
    assert abs(digamma(z + 1.0) - digamma(z) - 1.0 / z) < 1e-12


@pytest.mark.parametrize("z", [1.3 + 0.4j, 3.7 - 1.1j, 0.6 + 2.0j])
def test_digamma_is_log_gamma_slope(z):
    h = 1e-5
    fd = (log_gamma(z + h) - log_gamma(z - h)) / (2.0 * h)
    assert abs(fd - digamma(z)) < 1e-6


@pytest.mark.parametrize("z", [0.0, -1.0, -2.0, -7.0])
def test_recip_gamma_vanishes_at_poles(z):
    assert recip_gamma(z) == 0j


def test_recip_gamma_values():
    assert abs(recip_gamma(1.0) - 1.0) < 5e-15
    assert abs(recip_gamma(0.5) - 1.0 / np.sqrt(np.pi)) < 1e-14
    assert abs(recip_gamma(2.5) - RECIP_GAMMA_2P5) < 1e-14
    # 1/Gamma(-1/2) = -1/(2 sqrt(pi))
    assert abs(recip_gamma(-0.5) + 0.5 / np.sqrt(np.pi)) < 1e-14


def test_recip_gamma_inverts_log_gamma():
    rng = np.random.default_rng(7)
    zs = rng.uniform(-6.0, 6.0, 60) + 1j * rng.uniform(-6.0, 6.0, 60)
    zs = zs[(np.abs(zs.imag) > 0.05) | (zs.real > 0.5)]
    for z in zs:
        prod = np.exp(log_gamma(complex(z))) * recip_gamma(complex(z))
        assert abs(prod - 1.0) < 1e-12


def test_reflection_identity():
    # 1/Gamma(z) * 1/Gamma(1-z) = sin(pi z)/pi, pole-free for all z
    for z in [0.2 + 0.9j, -2.4 + 0.3j, 3.1 - 1.7j, -0.5 + 0.0j]:
        lhs = recip_gamma(z) * recip_gamma(1.0 - z)
        rhs = np.sin(np.pi * z) / np.pi
        assert abs(lhs - rhs) < 1e-12 * (1.0 + abs(rhs))


@pytest.mark.parametrize("r", [1.0, 2.0, 5.0])
def test_half_line_resummation_identity(r):
    # int_0^inf e^{-r y} sqrt(y)/(y + i) dy rebuilt from the incomplete
    # gamma style series: pi * [-e^{i r} e^{i pi/4} + r^{-1/2} *
    # sum_k (i r)^k / Gamma(k + 1/2)]
    re = si.quad(
        lambda y: np.exp(-r * y) * np.sqrt(y) * y / (y * y + 1.0),
        0.0, np.inf, limit=200,
    )[0]
    im = -si.quad(
        lambda y: np.exp(-r * y) * np.sqrt(y) / (y * y + 1.0),
        0.0, np.inf, limit=200,
    )[0]
    lhs = re + 1j * im
    total = 0j
    for k in range(80):
        total += (1j * r) ** k * recip_gamma(k + 0.5)
    rhs = np.pi * (-np.exp(1j * r) * np.exp(1j * np.pi / 4.0)
                   + total / np.sqrt(r))
    assert abs(lhs - rhs) < 1e-8
