"""Complex special functions: log-gamma, digamma, reciprocal gamma.

All three are computed by upward recurrence into the half-plane Re z >= 8
followed by the Stirling asymptotic series with Bernoulli-number
coefficients.  The recurrence

    log_gamma(z) = log_gamma(z + 1) - Log z

(principal Log) is exact on the plane cut along the negative real axis,
so the result is the standard principal branch continued from the
positive real axis.  Accuracy is about 1e-13 relative for |z| <= 50,
which covers the strip needed by the Wiener-Hopf factors.

Only scalars are handled; the callers that need many values loop.
"""

import cmath
import math

__all__ = ["PoleError", "log_gamma", "digamma", "recip_gamma"]

# B_{2n} / (2n (2n-1)), n = 1..10, for the log-gamma Stirling series.
_LOG_GAMMA_SERIES = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
)

# B_{2n} / (2n), n = 1..8, for the digamma Stirling series.
_DIGAMMA_SERIES = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
)

_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)
_RECURRENCE_EDGE = 8.0


class PoleError(ValueError):
    """Evaluation at a nonpositive integer, where Gamma has a pole."""


def _as_complex(z) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError("argument must be finite, got %r" % (z,))
    return z


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def _log_gamma_stirling(z: complex) -> complex:
    # Valid for Re z >= _RECURRENCE_EDGE.
    rz = 1.0 / z
    rz2 = rz * rz
    s = _LOG_GAMMA_SERIES[-1]
    for c in reversed(_LOG_GAMMA_SERIES[:-1]):
        s = s * rz2 + c
    return (z - 0.5) * cmath.log(z) - z + _HALF_LOG_TWO_PI + s * rz


def log_gamma(z) -> complex:
    """Principal branch of log Gamma(z); exp(log_gamma(z)) = Gamma(z)."""
    z = _as_complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError("log_gamma pole at nonpositive integer %r" % (z,))
    shift = 0j
    while z.real < _RECURRENCE_EDGE:
        shift -= cmath.log(z)
        z += 1.0
    return shift + _log_gamma_stirling(z)


def digamma(z) -> complex:
    """psi(z) = d/dz log Gamma(z); satisfies psi(z+1) = psi(z) + 1/z."""
    z = _as_complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError("digamma pole at nonpositive integer %r" % (z,))
    shift = 0j
    while z.real < _RECURRENCE_EDGE:
        shift -= 1.0 / z
        z += 1.0
    rz = 1.0 / z
    rz2 = rz * rz
    s = _DIGAMMA_SERIES[-1]
    for c in reversed(_DIGAMMA_SERIES[:-1]):
        s = s * rz2 + c
    return shift + cmath.log(z) - 0.5 * rz - s * rz2


def recip_gamma(s) -> complex:
    """Entire function 1/Gamma(s); exactly zero at s = 0, -1, -2, ..."""
    s = _as_complex(s)
    prod = 1.0 + 0j
    while s.real < _RECURRENCE_EDGE:
        prod *= s
        s += 1.0
    # prod may be exactly zero when the original s was a nonpositive integer.
    if prod == 0:
        return 0j
    return prod * cmath.exp(-_log_gamma_stirling(s))
