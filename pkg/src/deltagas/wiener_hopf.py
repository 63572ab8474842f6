"""Wiener-Hopf factorisation of sigma(xi) = (1 + e^{-|xi|})/2.

The factors are

  sigma_plus(xi)  = sqrt(pi) exp{ w [Log(-i xi) - log 2pi - 1] } / Gamma(1/2 + w)
  sigma_minus(xi) = sqrt(pi) exp{ -w [Log(i xi) - log 2pi - 1] } / Gamma(1/2 - w)

with w = -i xi / (2 pi) and principal logarithms.  sigma_plus is
analytic and zero-free for Im xi > -pi, sigma_minus for Im xi < pi,
sigma_plus sigma_minus = sigma on the real line, and both tend to
2^{-1/2} at infinity.  At xi = 0 both equal 1 exactly.

On the negative imaginary axis sigma_minus(-iy) is real and positive;
it enters the two kernels built here,

  k(x)  = -(1/pi) PV int_0^inf e^{-xy} sigma_minus(-iy)^2 tan(y/2) dy
  s1(x) = -(1/pi) PV int_0^inf e^{-xy} sigma_minus(-iy)   tan(y/2) dy

which decay like -1/(2 pi x^2).  The principal value over the tan poles
at (2k-1) pi is handled by one cached linear functional ("tan rule"):
geometric panels on the smooth region, mirror-symmetric pairs around
each pole where tan((a +- u)/2) = -+ cot(u/2) exactly, plain panels
between poles, and a first-derivative two-point stencil per pole window
in the far tail where the window integral reduces to
-4 pi log(2) phi'(a) + O(phi''').

The constant part of the amplitude (sigma_minus -> 2^{-1/2}) is split
off and summed against the exact Laplace transform

  T(x) = PV int_0^inf e^{-xy} tan(y/2) dy
       = (1/sinh(pi x)) int_0^pi sinh(x u) cot(u/2) du,

so the kernels stay accurate uniformly in x; the analogous resolvent
transform That(xi) = PV int tan(y/2)/(y - i xi) dy has the closed form

  That(xi) = (1/2pi) int_0^pi cot(u/2) [psi(1/2 + (u - i xi)/2pi)
                                      - psi(1/2 - (u + i xi)/2pi)] du

used by the forward check that the transform of s1 rebuilds 1/sigma_plus.
"""

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._kernels import exp_dot
from .quadrature import _panel_rule
from .special import digamma, log_gamma

__all__ = [
    "FactorValue",
    "OutOfStripError",
    "WrongHalfPlaneError",
    "DepthExceededError",
    "ExpansionCoefficients",
    "symbol",
    "factor",
    "sigma_plus",
    "sigma_minus",
    "hankel_kernel_k",
    "s1_kernel",
    "s1_forward_transform",
    "kernel_tail_l1",
    "expansion_coeffs",
    "inv_factor_on_ray",
]

_PI = math.pi
_LOG_PI = math.log(math.pi)
_LOG_2PI = math.log(2.0 * math.pi)
_SQRT2 = math.sqrt(2.0)
_EULER = 0.5772156649015328606

# tan-rule shape parameters
_FIRST_EDGE = 1e-4
_WINDOW = 0.5
_N_WINDOWS = 40
_Y_TAIL = 6000.0
_FD_STEP = 0.25
_N_SMOOTH = 24
_N_POLE = 32
_N_GAP = 24
_MU1 = -4.0 * _PI * math.log(2.0)  # int of u cot(u/2) over a pole window


class OutOfStripError(ValueError):
    """Factor evaluation outside the strip |Im xi| < pi."""


class WrongHalfPlaneError(ValueError):
    """Factor evaluation on the wrong side of the real axis."""


class DepthExceededError(ValueError):
    """Expansion order beyond the supported depth."""


@dataclass(frozen=True)
class FactorValue:
    value: complex
    half_plane: str  # "upper" or "lower"
    at: complex


def symbol(xi):
    """sigma(xi) = (1 + e^{-|xi|})/2 on the real line."""
    xi_arr = np.asarray(xi, dtype=float)
    out = 0.5 * (1.0 + np.exp(-np.abs(xi_arr)))
    return float(out) if np.isscalar(xi) or xi_arr.ndim == 0 else out


def sigma_plus(xi) -> complex:
    xi = complex(xi)
    if xi == 0:
        return 1.0 + 0j
    w = -1j * xi / (2.0 * _PI)
    return cmath.exp(
        0.5 * _LOG_PI
        + w * (cmath.log(-1j * xi) - _LOG_2PI - 1.0)
        - log_gamma(0.5 + w)
    )


def sigma_minus(xi) -> complex:
    xi = complex(xi)
    if xi == 0:
        return 1.0 + 0j
    w = -1j * xi / (2.0 * _PI)
    return cmath.exp(
        0.5 * _LOG_PI
        - w * (cmath.log(1j * xi) - _LOG_2PI - 1.0)
        - log_gamma(0.5 - w)
    )


def factor(half_plane: str, xi) -> FactorValue:
    """Evaluate the upper or lower factor inside the strip |Im xi| < pi."""
    if half_plane not in ("upper", "lower"):
        raise ValueError("half_plane must be 'upper' or 'lower', got %r" % (half_plane,))
    xi = complex(xi)
    if not (math.isfinite(xi.real) and math.isfinite(xi.imag)):
        raise ValueError("xi must be finite, got %r" % (xi,))
    if abs(xi.imag) >= _PI:
        raise OutOfStripError("xi = %r outside the strip |Im xi| < pi" % (xi,))
    if half_plane == "upper":
        if xi.imag < 0:
            raise WrongHalfPlaneError("upper factor needs Im xi >= 0, got %r" % (xi,))
        return FactorValue(sigma_plus(xi), "upper", xi)
    if xi.imag > 0:
        raise WrongHalfPlaneError("lower factor needs Im xi <= 0, got %r" % (xi,))
    return FactorValue(sigma_minus(xi), "lower", xi)


def _sigma_minus_ray(y: np.ndarray) -> np.ndarray:
    """sigma_minus(-iy) for y > 0: real, positive, -> 2^{-1/2} as y -> inf.

    Computed in log space; the two large terms cancel to O(1), costing
    only ~ y*eps absolute in the log.
    """
    y = np.asarray(y, dtype=float)
    a = y / (2.0 * _PI)
    lg = np.array([log_gamma(0.5 + v).real for v in a])
    return np.exp(0.5 * _LOG_PI + a * (np.log(y) - _LOG_2PI - 1.0) - lg)


@lru_cache(maxsize=4)
def _tan_rule(refine: int = 1):
    """Nodes y_m and weights W_m with PV int phi tan(y/2) ~= sum W_m phi(y_m)."""
    n_smooth = _N_SMOOTH * refine
    n_pole = _N_POLE * refine
    n_gap = _N_GAP * refine
    ys = []
    ws = []

    # smooth region [0, pi - window], geometric panels toward 0
    top = _PI - _WINDOW
    edges = [0.0, _FIRST_EDGE]
    while edges[-1] * 2.0 < top:
        edges.append(edges[-1] * 2.0)
    edges.append(top)
    x, w = _panel_rule(np.array(edges), n_smooth)
    ys.append(x)
    ws.append(w * np.tan(0.5 * x))

    # mirror-symmetric pairs around each pole a_k = (2k-1) pi;
    # tan((a_k + u)/2) = -cot(u/2) and tan((a_k - u)/2) = +cot(u/2) exactly,
    # so np.tan is never evaluated near its pole and the pair weights
    # cancel in sums of even integrands.
    u, wu = _panel_rule(np.array([0.0, _WINDOW]), n_pole)
    cot = wu / np.tan(0.5 * u)
    for k in range(1, _N_WINDOWS + 1):
        a = (2 * k - 1) * _PI
        ys.append(a + u)
        ws.append(-cot)
        ys.append(a - u)
        ws.append(cot)

    # panels between consecutive windows, and the stub before the far tail
    for k in range(1, _N_WINDOWS):
        lo = (2 * k - 1) * _PI + _WINDOW
        hi = (2 * k + 1) * _PI - _WINDOW
        x, w = _panel_rule(np.array([lo, hi]), n_gap)
        ys.append(x)
        ws.append(w * np.tan(0.5 * x))
    lo = (2 * _N_WINDOWS - 1) * _PI + _WINDOW
    hi = 2 * _N_WINDOWS * _PI
    x, w = _panel_rule(np.array([lo, hi]), n_gap)
    ys.append(x)
    ws.append(w * np.tan(0.5 * x))

    # far tail: per pole window [a - pi, a + pi] the principal value is
    # mu1 phi'(a) + O(phi'''), realised as a central difference
    k = _N_WINDOWS + 1
    while (2 * k - 1) * _PI <= _Y_TAIL:
        a = (2 * k - 1) * _PI
        ys.append(np.array([a - _FD_STEP, a + _FD_STEP]))
        ws.append(np.array([-_MU1, _MU1]) / (2.0 * _FD_STEP))
        k += 1

    return np.ascontiguousarray(np.concatenate(ys)), np.ascontiguousarray(
        np.concatenate(ws)
    )


@lru_cache(maxsize=4)
def _rule_sigma(refine: int = 1):
    y, w = _tan_rule(refine)
    return y, w, _sigma_minus_ray(y)


@lru_cache(maxsize=4)
def _t_laplace_rule(refine: int = 1):
    # panels on v in [0, pi] geometric toward 0; the integrand carries
    # e^{-x v}, so this one grid serves every x
    edges = [0.0, _PI * 1e-6]
    while edges[-1] * 2.0 < _PI:
        edges.append(edges[-1] * 2.0)
    edges.append(_PI)
    v, w = _panel_rule(np.array(edges), 16 * refine)
    return v, w * np.tan(0.5 * v)


def _t_laplace(x, refine: int = 1):
    """T(x) = PV int_0^inf e^{-xy} tan(y/2) dy, for x > 0 (vectorised).

    Stable form of sinh(x(pi-v))/sinh(pi x) via expm1; T(0+) = 2 log 2
    and T(x) ~ 1/(2 x^2) for large x.
    """
    v, wt = _t_laplace_rule(refine)
    x = np.asarray(x, dtype=float)
    xa = x[:, None] if x.ndim else x[None, None]
    num = np.exp(-xa * v) * (-np.expm1(-2.0 * xa * (_PI - v)))
    den = -np.expm1(-2.0 * _PI * np.atleast_1d(x))
    out = (num @ wt) / den
    return out if x.ndim else float(out[0])


@lru_cache(maxsize=4)
def _t_resolvent_rule(refine: int = 1):
    # panels on u in [0, pi] geometric toward pi, where a digamma pole at
    # u = pi - i xi (small |xi|) nearly meets the cot zero at u = pi
    edges = [0.0, _PI * 1e-8]
    while edges[-1] * 2.0 < _PI:
        edges.append(edges[-1] * 2.0)
    edges.append(_PI)
    v, w = _panel_rule(np.array(edges), 16 * refine)
    u = _PI - v[::-1]
    wu = w[::-1]
    return u, wu / np.tan(0.5 * u)


def _t_resolvent(xi: complex, refine: int = 1) -> complex:
    """That(xi) = PV int_0^inf tan(y/2)/(y - i xi) dy for real xi."""
    u, wc = _t_resolvent_rule(refine)
    c = 1.0 / (2.0 * _PI)
    z = 1j * xi * c
    total = 0j
    for uu, ww in zip(u, wc):
        total += ww * (digamma(0.5 + uu * c - z) - digamma(0.5 - uu * c - z))
    return total * c


def _kernel_values(x, coeff_const, rho, refine):
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    xv = np.atleast_1d(x).astype(float)
    if np.any(xv <= 0):
        raise ValueError("kernel argument must be positive")
    y, w, sig = _rule_sigma(refine)
    base = coeff_const * np.asarray(_t_laplace(xv, refine))
    corr = exp_dot(np.ascontiguousarray(w * rho), y, np.ascontiguousarray(xv))
    out = -(base + corr) / _PI
    return float(out[0]) if scalar else out


def hankel_kernel_k(x, *, refine: int = 1):
    """k(x) = -(1/pi) PV int e^{-xy} sigma_minus(-iy)^2 tan(y/2) dy, x > 0."""
    y, w, sig = _rule_sigma(refine)
    return _kernel_values(x, 0.5, sig * sig - 0.5, refine)


def s1_kernel(x, *, refine: int = 1):
    """s1(x) = -(1/pi) PV int e^{-xy} sigma_minus(-iy) tan(y/2) dy, x > 0."""
    y, w, sig = _rule_sigma(refine)
    return _kernel_values(x, 1.0 / _SQRT2, sig - 1.0 / _SQRT2, refine)


def s1_forward_transform(xi, *, refine: int = 1):
    """sqrt(2) + int_0^inf s1(x) e^{i x xi} dx, which rebuilds 1/sigma_plus.

    The delta part of the full s kernel contributes the constant sqrt(2)
    (the value of 1/sigma_plus at infinity); the s1 part transforms
    term by term against the tan rule, with the constant channel going
    through the exact resolvent transform That.
    """
    y, w, sig = _rule_sigma(refine)
    rho1 = sig - 1.0 / _SQRT2
    xi_arr = np.atleast_1d(np.asarray(xi, dtype=float))
    out = np.empty(len(xi_arr), dtype=complex)
    wr = w * rho1
    for i, x0 in enumerate(xi_arr):
        that = _t_resolvent(complex(x0), refine)
        out[i] = _SQRT2 - (that / _SQRT2 + np.sum(wr / (y - 1j * x0))) / _PI
    return complex(out[0]) if np.asarray(xi).ndim == 0 else out


def kernel_tail_l1(r: float, *, refine: int = 1) -> float:
    """int_0^inf |k(x + r)| dx for r >= 5, where k keeps one sign.

    Equals |int_r^inf k|, which the tan rule gives in closed form by
    integrating the exponentials exactly.
    """
    if r < 5.0:
        raise ValueError("tail norm needs r >= 5, got %r" % (r,))
    y, w, sig = _rule_sigma(refine)
    return abs(float(np.sum(w * sig * sig * np.exp(-r * y) / y))) / _PI


def inv_factor_on_ray(t, angle: float = 0.0):
    """1/sigma_plus just below the real axis, continued from the right.

    The ray is xi = -i t e^{i angle}; returns (xi, L, values) with
    L = log t + i (angle - pi) the branch of log(-i xi) reached by
    continuation through Re xi > 0.  With angle = 0 this is the negative
    imaginary axis approached from the right, L = log t - i pi.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t <= 0):
        raise ValueError("t must be positive")
    phase = cmath.exp(1j * (angle - _PI))
    xi = np.empty(len(t), dtype=complex)
    ll = np.empty(len(t), dtype=complex)
    vals = np.empty(len(t), dtype=complex)
    for i, ti in enumerate(t):
        lt = math.log(ti) + 1j * (angle - _PI)
        w = (ti / (2.0 * _PI)) * phase
        vals[i] = cmath.exp(
            log_gamma(0.5 + w) - w * (lt - _LOG_2PI - 1.0) - 0.5 * _LOG_PI
        )
        xi[i] = 1j * ti * phase  # equals -i t e^{i angle}
        ll[i] = lt
    return xi, ll, vals


@dataclass(frozen=True)
class ExpansionCoefficients:
    """Coefficients a[(n, m)] of 1/sigma_plus = sum a_{n,m} xi^n L^m.

    L stands for log(-i xi); the table is branch-consistent, meaning the
    identity holds with any continuous branch as long as the same L is
    used in the basis.
    """

    order: int
    a: dict

    def partial_sum(self, xi, log_branch):
        xi = np.asarray(xi, dtype=complex)
        ll = np.asarray(log_branch, dtype=complex)
        out = np.zeros(xi.shape, dtype=complex)
        for (n, m), c in self.a.items():
            out = out + c * xi**n * ll**m
        return out


def expansion_coeffs(n_max: int) -> ExpansionCoefficients:
    """Small-xi expansion of 1/sigma_plus through order n_max.

    The basis is xi^n log^m(-i xi), 0 <= m <= n <= n_max.  The n <= 1
    entries are exact: a_{0,0} = 1, a_{1,1} = i/2pi and
    a_{1,0} = (i/2pi)(euler_gamma - log(pi/2) - 1).  Entries with n >= 2
    come from a joint complex least-squares fit of the remainder on two
    rays just below the real axis, with one extra nuisance order to
    absorb truncation bias.  Orders beyond 4 are not resolvable in
    double precision and are refused.
    """
    if not isinstance(n_max, (int, np.integer)) or n_max < 1:
        raise ValueError("n_max must be a positive integer, got %r" % (n_max,))
    if n_max > 4:
        raise DepthExceededError("expansion depth %d exceeds 4" % (n_max,))
    half_i_pi = 0.5j / _PI
    table = {
        (0, 0): 1.0 + 0j,
        (1, 1): half_i_pi,
        (1, 0): half_i_pi * (_EULER - math.log(0.5 * _PI) - 1.0),
    }
    if n_max >= 2:
        t = np.logspace(-5, -2, 24)
        rows = []
        rhs = []
        pairs = [(n, m) for n in range(2, n_max + 2) for m in range(0, n + 1)]
        for angle in (0.0, 0.5):
            xi, ll, vals = inv_factor_on_ray(t, angle)
            known = np.zeros(len(t), dtype=complex)
            for (n, m), c in table.items():
                known += c * xi**n * ll**m
            cols = [xi**n * ll**m for (n, m) in pairs]
            rows.append(np.stack(cols, axis=1))
            rhs.append(vals - known)
        design = np.concatenate(rows, axis=0)
        target = np.concatenate(rhs)
        scale = np.max(np.abs(design), axis=0)
        coef, *_ = np.linalg.lstsq(design / scale, target, rcond=None)
        coef = coef / scale
        for (n, m), c in zip(pairs, coef):
            if n <= n_max:
                table[(n, m)] = complex(c)
    return ExpansionCoefficients(order=n_max, a=table)
