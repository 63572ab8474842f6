"""Asymptotic expansions and order-of-convergence fitting.

Series handled here, with gamma_E the Euler constant:

  charge, small kappa:
      Q = 1/pi + (kappa/2 pi^2)(log(1/kappa) + log pi + 1) + O(kappa^2-)
  Fermi energy, small gamma:
      eps_F = pi^2/12 - gamma/2 + O(gamma^2-)
  Bose energy, small gamma:
      eps_B = gamma - (4/3 pi) gamma^{3/2} + (1/6 - 1/pi^2) gamma^2 + o(gamma^2)
  rescaled mass, large r:
      int f = r + (1/pi)(log r + log(pi/2) + 1) + O(r^{-1} log^2 r)
  windowed-kernel integral coefficients, large r (the i of the odd
  orders factored out):
      g_0 = (1/2 pi)(log r + log(pi/2) + 1)
      g_1 = -(1/2 pi) r (log r + gamma_E - 1)
      g_2 = -(1/4 pi) r^2 (log r + gamma_E - 3/2)
  xi^2 coefficient of the doubled transform, large r:
      -r^3/24 - (r^2/8 pi)(log r + log(pi/2) - 1)

fit_order estimates the convergence order p of residuals ~ C x^p by a
least-squares line through (log x, log |residual|).
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "AsymptoticSeries",
    "DegenerateFitError",
    "q_series",
    "ef_series",
    "eb_series",
    "fint_series",
    "gplus_coeffs",
    "xi2_coefficient_series",
    "ef_reconstruction",
    "fit_order",
]

_PI = math.pi
_EULER = 0.5772156649015328606


class DegenerateFitError(ValueError):
    """Residuals unusable for an order fit (a zero among them)."""


@dataclass(frozen=True)
class AsymptoticSeries:
    """sum of coeff * x^power * log(X)^log_power, truncatable by term.

    X is 1/x when the series describes x -> 0 and x when it describes
    x -> infinity, so the log factor is positive in the valid range.
    """

    variable: str
    direction: str  # "to_zero" or "to_infinity"
    terms: tuple    # of (power, log_power, coeff)

    def __post_init__(self):
        if self.direction not in ("to_zero", "to_infinity"):
            raise ValueError("direction must be to_zero or to_infinity")

    def evaluate(self, x: float, n_terms: int = None) -> float:
        x = float(x)
        if x <= 0:
            raise ValueError("series argument must be positive")
        lx = math.log(1.0 / x) if self.direction == "to_zero" else math.log(x)
        use = self.terms if n_terms is None else self.terms[:n_terms]
        return float(sum(c * x**p * lx**m for (p, m, c) in use))


Q_SERIES = AsymptoticSeries(
    "kappa",
    "to_zero",
    (
        (0.0, 0, 1.0 / _PI),
        (1.0, 1, 1.0 / (2.0 * _PI**2)),
        (1.0, 0, (math.log(_PI) + 1.0) / (2.0 * _PI**2)),
    ),
)

EF_SERIES = AsymptoticSeries(
    "gamma", "to_zero", ((0.0, 0, _PI**2 / 12.0), (1.0, 0, -0.5))
)

EB_SERIES = AsymptoticSeries(
    "gamma",
    "to_zero",
    (
        (1.0, 0, 1.0),
        (1.5, 0, -4.0 / (3.0 * _PI)),
        (2.0, 0, 1.0 / 6.0 - 1.0 / _PI**2),
    ),
)

FINT_SERIES = AsymptoticSeries(
    "r",
    "to_infinity",
    (
        (1.0, 0, 1.0),
        (0.0, 1, 1.0 / _PI),
        (0.0, 0, (math.log(_PI / 2.0) + 1.0) / _PI),
    ),
)


def _require_small(name: str, x: float):
    if not (0.0 < x < 1.0):
        raise ValueError("%s must be in (0, 1), got %r" % (name, x))


def _require_large(name: str, x: float):
    if not (np.isfinite(x) and x > 1.0):
        raise ValueError("%s must exceed 1, got %r" % (name, x))


def q_series(kappa: float) -> float:
    """Two-term small-kappa charge expansion."""
    _require_small("kappa", kappa)
    return Q_SERIES.evaluate(kappa)


def ef_series(gamma: float) -> float:
    """Small-gamma Fermi energy density, pi^2/12 - gamma/2."""
    _require_small("gamma", gamma)
    return EF_SERIES.evaluate(gamma)


def eb_series(gamma: float) -> float:
    """Small-gamma Bose energy density through gamma^2."""
    _require_small("gamma", gamma)
    return EB_SERIES.evaluate(gamma)


def fint_series(r: float) -> float:
    """Large-r expansion of the rescaled mass int_{-r/2}^{r/2} f."""
    _require_large("r", r)
    return FINT_SERIES.evaluate(r)


def gplus_coeffs(r: float) -> list:
    """First three windowed-kernel integral coefficients at this r."""
    _require_large("r", r)
    lr = math.log(r)
    return [
        (lr + math.log(_PI / 2.0) + 1.0) / (2.0 * _PI),
        -r * (lr + _EULER - 1.0) / (2.0 * _PI),
        -r * r * (lr + _EULER - 1.5) / (4.0 * _PI),
    ]


def xi2_coefficient_series(r: float) -> float:
    """xi^2 coefficient of the doubled, symbol-multiplied transform."""
    _require_large("r", r)
    return -(r**3) / 24.0 - (r * r / (8.0 * _PI)) * (
        math.log(r) + math.log(_PI / 2.0) - 1.0
    )


def ef_reconstruction(r: float) -> float:
    """eps_F rebuilt from the large-r pieces: -2 pi^2 m2-surrogate / m0^3."""
    _require_large("r", r)
    return _PI**2 * (-2.0) * xi2_coefficient_series(r) / fint_series(r) ** 3


def fit_order(xs, residuals):
    """Least-squares slope of log|residual| against log x, with stderr.

    xs must be positive and strictly monotone (either direction works;
    sweeps toward zero and toward infinity both occur).  A zero residual
    makes the log fit degenerate and is refused.
    """
    xs = np.asarray(xs, dtype=float)
    res = np.asarray(residuals, dtype=float)
    if xs.ndim != 1 or xs.shape != res.shape:
        raise ValueError("xs and residuals must be 1-d and congruent")
    if len(xs) < 4:
        raise ValueError("need at least 4 points, got %d" % len(xs))
    if np.any(xs <= 0):
        raise ValueError("xs must be positive")
    d = np.diff(xs)
    if not (np.all(d > 0) or np.all(d < 0)):
        raise ValueError("xs must be strictly monotone")
    if np.any(res == 0.0) or not np.all(np.isfinite(res)):
        raise DegenerateFitError("residuals contain zeros or non-finite values")
    lx = np.log(xs)
    ly = np.log(np.abs(res))
    lx0 = lx - lx.mean()
    sxx = float(lx0 @ lx0)
    slope = float(lx0 @ ly) / sxx
    fitted = ly.mean() + slope * lx0
    dof = len(xs) - 2
    ssr = float(np.sum((ly - fitted) ** 2))
    stderr = math.sqrt(max(ssr, 0.0) / dof / sxx) if dof > 0 else 0.0
    return slope, stderr
