"""Nystrom solver for the ground-state integral equations.

On [-1, 1] the two equations are

    Bose:  f(x) - (L f)(x) = 1
    Fermi: f(x) + (L f)(x) = 1

with (L f)(x) = (kappa/pi) int_{-1}^{1} f(y) / ((x-y)^2 + kappa^2) dy.
Physical quantities come from the moments m0 = int f, m2 = int x^2 f:

    Fermi: gamma = pi kappa / (2 m0),  Q = m0/pi,
           eps = (2/pi) (gamma/kappa)^3 m2,  eps_total = -gamma^2/4 + eps
    Bose:  gamma = 2 pi kappa / m0,    eps = (1/(2 pi)) (gamma/kappa)^3 m2

The same operator stretched to [-r/2, r/2] with unit kernel width,

    f(x) + (1/pi) int f(y) / ((x-y)^2 + 1) dy = 2,   r = 2/kappa,

is the form the half-line expansion works with; f(r x / 2) = 2 f_F(x)
ties the two together and int f = pi Q / (kappa/2).

Discretisation is Gauss-Legendre collocation with the kernel integrated
against the quadrature weights; for kappa < 0.05 the grid switches to
symmetric graded panels (width kappa/4 at the edges, doubling inward,
node counts proportional to width) so the Lorentzian boundary layer
stays resolved without starving the interior.  Solves go through an
LU factorisation with a 1-norm condition estimate, and by default every
solve is re-done at twice the node count to confirm m0 and m2 to 1e-9.
The quadrature error scales like exp(-2 n kappa) at small kappa, so the
node count has to grow like 1/kappa for fixed accuracy; callers probing
kappa near 0.01 or below should raise n accordingly.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import lapack, lu_factor, lu_solve

from ._kernels import lorentz_apply, lorentz_system
from .quadrature import QuadratureGrid, _panel_rule, gauss_legendre

__all__ = [
    "Statistics",
    "CouplingParams",
    "NystromSolution",
    "RescaledSolution",
    "SingularSystemError",
    "ConvergenceError",
    "BracketError",
    "WrongStatisticsError",
    "solve_love",
    "solve_rescaled",
    "solve_for_gamma",
    "charge_Q",
    "gamma_from_solution",
    "energy",
    "energy_total",
]

_PI = math.pi
_GRADED_BELOW = 0.05
_COND_LIMIT = 1e12
_MOMENT_RTOL = 1e-9


class Statistics(enum.Enum):
    BOSE = "bose"
    FERMI = "fermi"


class SingularSystemError(RuntimeError):
    """Discretised system is singular or too ill-conditioned to trust."""


class ConvergenceError(RuntimeError):
    """Doubling the grid moved the moments beyond tolerance."""


class BracketError(RuntimeError):
    """Could not bracket the requested coupling."""


class WrongStatisticsError(ValueError):
    """Quantity undefined for this statistics."""


@dataclass(frozen=True)
class CouplingParams:
    kappa: float
    r: float      # 2 / kappa
    gamma: float  # dimensionless coupling implied by the solution


@dataclass(frozen=True)
class NystromSolution:
    statistics: Statistics
    params: CouplingParams
    grid: QuadratureGrid
    values: np.ndarray
    m0: float
    m2: float
    cond: float

    def evaluate(self, x):
        """Nystrom natural interpolation off the collocation nodes."""
        kappa = self.params.kappa
        sign = 1.0 if self.statistics is Statistics.FERMI else -1.0
        x_arr = np.atleast_1d(np.asarray(x, dtype=float))
        lf = lorentz_apply(
            np.ascontiguousarray(x_arr),
            self.grid.nodes,
            self.grid.weights,
            self.values,
            kappa / _PI,
            kappa,
        )
        out = 1.0 - sign * lf
        return float(out[0]) if np.asarray(x).ndim == 0 else out


@dataclass(frozen=True)
class RescaledSolution:
    r: float
    grid: QuadratureGrid
    values: np.ndarray
    m0: float
    m2: float
    cond: float

    def evaluate(self, x):
        x_arr = np.atleast_1d(np.asarray(x, dtype=float))
        lf = lorentz_apply(
            np.ascontiguousarray(x_arr),
            self.grid.nodes,
            self.grid.weights,
            self.values,
            1.0 / _PI,
            1.0,
        )
        out = 2.0 - lf
        return float(out[0]) if np.asarray(x).ndim == 0 else out


def _graded_symmetric(half: float, w0: float, n: int) -> QuadratureGrid:
    """Symmetric graded panels on [-half, half], width w0 at the edges
    doubling inward; node symmetry is exact by mirroring.

    Node counts scale with panel width (with a small floor), keeping the
    interior at uniform density: a panel of width w holding n_per points
    integrates the Lorentzian of width d to O(exp(-4 n_per d / w)), so
    equal density spends the budget where it is needed while the short
    edge panels still resolve the boundary layer.
    """
    widths = []
    acc = 0.0
    w = w0
    while acc + w < half:
        widths.append(w)
        acc += w
        w *= 2.0
    widths.append(half - acc)
    edges = half - np.concatenate([[0.0], np.cumsum(widths)])
    edges = edges[::-1]  # increasing, 0 .. half
    density = float(n) / (2.0 * half)
    nodes_parts = []
    weights_parts = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        n_per = max(8, int(math.ceil(density * (hi - lo))))
        xs, ws = _panel_rule(np.array([lo, hi]), n_per)
        nodes_parts.append(xs)
        weights_parts.append(ws)
    nodes_r = np.concatenate(nodes_parts)
    weights_r = np.concatenate(weights_parts)
    nodes = np.concatenate([-nodes_r[::-1], nodes_r])
    weights = np.concatenate([weights_r[::-1], weights_r])
    return QuadratureGrid(nodes, weights, ("finite", -half, half))


def _lu_with_cond(a: np.ndarray):
    anorm = float(np.abs(a).sum(axis=0).max())
    try:
        lu, piv = lu_factor(a)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(str(exc)) from None
    rcond, info = lapack.dgecon(lu, anorm, norm="1")
    if info != 0 or rcond == 0.0:
        raise SingularSystemError("condition estimate failed (info=%d)" % info)
    return (lu, piv), 1.0 / float(rcond)


def _solve_unit(statistics: Statistics, kappa: float, n: int):
    if kappa >= _GRADED_BELOW:
        grid = gauss_legendre(int(n), -1.0, 1.0)
    else:
        grid = _graded_symmetric(1.0, kappa / 4.0, int(n))
    sign = 1.0 if statistics is Statistics.FERMI else -1.0
    a = lorentz_system(grid.nodes, grid.weights, 1.0, sign * kappa / _PI, kappa)
    lu, cond = _lu_with_cond(a)
    if statistics is Statistics.BOSE and cond > _COND_LIMIT:
        raise SingularSystemError(
            "Bose system at kappa=%g has condition %.3g > %g"
            % (kappa, cond, _COND_LIMIT)
        )
    f = lu_solve(lu, np.ones(len(grid.nodes)))
    m0 = float(grid.weights @ f)
    m2 = float(grid.weights @ (grid.nodes**2 * f))
    return grid, f, m0, m2, cond


def _validate_solve_args(kappa: float, n: int):
    if not (np.isfinite(kappa) and kappa > 0):
        raise ValueError("kappa must be positive, got %r" % (kappa,))
    if not isinstance(n, (int, np.integer)) or n < 8:
        raise ValueError("n must be an integer >= 8, got %r" % (n,))


def solve_love(statistics: Statistics, kappa: float, n: int,
               *, check: bool = True) -> NystromSolution:
    """Solve on [-1, 1]; check=True re-solves at 2n and compares moments."""
    if not isinstance(statistics, Statistics):
        raise TypeError("statistics must be a Statistics value")
    _validate_solve_args(kappa, n)
    kappa = float(kappa)
    grid, f, m0, m2, cond = _solve_unit(statistics, kappa, int(n))
    if check:
        _, _, m0b, m2b, _ = _solve_unit(statistics, kappa, 2 * int(n))
        if abs(m0 - m0b) > _MOMENT_RTOL * abs(m0b) + 1e-15 or (
            abs(m2 - m2b) > _MOMENT_RTOL * abs(m2b) + 1e-15
        ):
            raise ConvergenceError(
                "moments moved under n-doubling at kappa=%g: "
                "m0 %.17g -> %.17g, m2 %.17g -> %.17g" % (kappa, m0, m0b, m2, m2b)
            )
    gamma = (
        _PI * kappa / (2.0 * m0)
        if statistics is Statistics.FERMI
        else 2.0 * _PI * kappa / m0
    )
    params = CouplingParams(kappa=kappa, r=2.0 / kappa, gamma=gamma)
    return NystromSolution(
        statistics=statistics,
        params=params,
        grid=grid,
        values=f,
        m0=m0,
        m2=m2,
        cond=cond,
    )


def _solve_rescaled_once(r: float, n: int):
    grid = _graded_symmetric(r / 2.0, 0.25, int(n))
    a = lorentz_system(grid.nodes, grid.weights, 1.0, 1.0 / _PI, 1.0)
    lu, cond = _lu_with_cond(a)
    f = lu_solve(lu, np.full(len(grid.nodes), 2.0))
    m0 = float(grid.weights @ f)
    m2 = float(grid.weights @ (grid.nodes**2 * f))
    return grid, f, m0, m2, cond


def solve_rescaled(r: float, n: int, *, check: bool = True) -> RescaledSolution:
    """Unit-width form on [-r/2, r/2]: f + (1/pi) int f/((x-y)^2+1) = 2."""
    if not (np.isfinite(r) and r > 0):
        raise ValueError("r must be positive, got %r" % (r,))
    if not isinstance(n, (int, np.integer)) or n < 8:
        raise ValueError("n must be an integer >= 8, got %r" % (n,))
    r = float(r)
    grid, f, m0, m2, cond = _solve_rescaled_once(r, int(n))
    if check:
        _, _, m0b, m2b, _ = _solve_rescaled_once(r, 2 * int(n))
        if abs(m0 - m0b) > _MOMENT_RTOL * abs(m0b) + 1e-15 or (
            abs(m2 - m2b) > _MOMENT_RTOL * abs(m2b) + 1e-15
        ):
            raise ConvergenceError(
                "rescaled moments moved under n-doubling at r=%g" % (r,)
            )
    return RescaledSolution(r=r, grid=grid, values=f, m0=m0, m2=m2, cond=cond)


def charge_Q(solution: NystromSolution) -> float:
    """Q = m0 / pi; a Fermi quantity."""
    if solution.statistics is not Statistics.FERMI:
        raise WrongStatisticsError("charge is defined for the Fermi system")
    return solution.m0 / _PI


def gamma_from_solution(solution: NystromSolution) -> float:
    if solution.statistics is Statistics.FERMI:
        return _PI * solution.params.kappa / (2.0 * solution.m0)
    return 2.0 * _PI * solution.params.kappa / solution.m0


def energy(solution: NystromSolution) -> float:
    """Scaled ground-state energy density epsilon(gamma)."""
    gamma = gamma_from_solution(solution)
    ratio = gamma / solution.params.kappa
    if solution.statistics is Statistics.FERMI:
        return (2.0 / _PI) * ratio**3 * solution.m2
    return ratio**3 * solution.m2 / (2.0 * _PI)


def energy_total(solution: NystromSolution) -> float:
    """Fermi: -gamma^2/4 + eps (bound-state part included); Bose: eps."""
    eps = energy(solution)
    if solution.statistics is Statistics.FERMI:
        gamma = gamma_from_solution(solution)
        return -0.25 * gamma * gamma + eps
    return eps


def _gamma_at(statistics: Statistics, kappa: float, n: int) -> float:
    sol = solve_love(statistics, kappa, n, check=False)
    return gamma_from_solution(sol)


def _weak_fermi_kappa(gamma: float) -> float:
    """Initial kappa from the small-kappa charge series: gamma = kappa/(2Q)."""
    from .asymptotics import q_series

    kappa = 2.0 * gamma / _PI
    for _ in range(40):
        step = gamma / (kappa / (2.0 * q_series(kappa)))
        kappa *= step
        if abs(step - 1.0) < 1e-13:
            break
    return kappa


def _polish_kappa(statistics: Statistics, gamma: float, n: int,
                  kappa: float, p: float) -> float:
    """Log-log secant on the full-n map until gamma matches to 1e-10."""
    prev = None
    for _ in range(8):
        g_full = _gamma_at(statistics, kappa, int(n))
        if abs(g_full - gamma) <= 1e-10 * gamma:
            return kappa
        if prev is not None and kappa != prev[0] and g_full != prev[1]:
            p_new = math.log(g_full / prev[1]) / math.log(kappa / prev[0])
            if 0.5 <= p_new <= 3.0:
                p = p_new
        prev = (kappa, g_full)
        kappa *= (gamma / g_full) ** (1.0 / p)
    raise ConvergenceError(
        "could not match gamma=%g at n=%d (last gamma=%.17g)"
        % (gamma, n, prev[1])
    )


def solve_for_gamma(statistics: Statistics, gamma: float, n: int,
                    *, check: bool = True) -> NystromSolution:
    """Invert gamma(kappa) and return the solution at the matched kappa.

    Bracketing uses the weak/strong limits (Fermi: kappa in
    [2 gamma/pi, 4 gamma/pi]; Bose: between sqrt(gamma)/2 and gamma/pi),
    expanded geometrically if the runtime monotonicity check finds the
    target outside.  A quick brentq at a reduced node count locates
    kappa, then log-log secant steps at full n polish until
    |gamma(kappa) - gamma| <= 1e-10 gamma.  Deep in the weak Fermi
    regime the reduced-count map is no longer reliable, so the start
    value comes from inverting the charge series instead.
    """
    from scipy.optimize import brentq

    if not isinstance(statistics, Statistics):
        raise TypeError("statistics must be a Statistics value")
    if not (np.isfinite(gamma) and gamma > 0):
        raise ValueError("gamma must be positive, got %r" % (gamma,))
    _validate_solve_args(1.0, n)
    if statistics is Statistics.FERMI and gamma < 0.03:
        kappa = _polish_kappa(
            statistics, gamma, n, _weak_fermi_kappa(gamma), 1.0
        )
        sol = solve_love(statistics, kappa, int(n), check=check)
        if abs(gamma_from_solution(sol) - gamma) > 1e-10 * gamma:
            raise ConvergenceError(
                "final solution drifted off the target gamma"
            )
        return sol
    if statistics is Statistics.FERMI:
        lo = 0.9 * 2.0 * gamma / _PI
        hi = 1.1 * 4.0 * gamma / _PI
    else:
        lo = 0.5 * min(math.sqrt(gamma) / 2.0, gamma / _PI)
        hi = 2.0 * max(math.sqrt(gamma) / 2.0, gamma / _PI)
    n_quick = min(int(n), 320)
    g_lo = _gamma_at(statistics, lo, n_quick)
    g_hi = _gamma_at(statistics, hi, n_quick)
    tries = 0
    while not (g_lo < gamma < g_hi):
        if g_lo >= g_hi:
            raise BracketError(
                "gamma(kappa) not increasing on [%g, %g]" % (lo, hi)
            )
        if g_lo >= gamma:
            lo /= 1.6
            g_lo = _gamma_at(statistics, lo, n_quick)
        if g_hi <= gamma:
            hi *= 1.6
            g_hi = _gamma_at(statistics, hi, n_quick)
        tries += 1
        if tries > 60:
            raise BracketError("could not bracket gamma=%g" % (gamma,))
    kappa = brentq(
        lambda k: _gamma_at(statistics, k, n_quick) - gamma, lo, hi,
        xtol=1e-14, rtol=8.9e-16,
    )
    # local exponent p = dln(gamma)/dln(kappa) is between 1 and 2
    g1 = _gamma_at(statistics, kappa, n_quick)
    g2 = _gamma_at(statistics, kappa * 1.001, n_quick)
    p = math.log(g2 / g1) / math.log(1.001)
    kappa = _polish_kappa(statistics, gamma, n, kappa, p)
    sol = solve_love(statistics, kappa, int(n), check=check)
    if abs(gamma_from_solution(sol) - gamma) > 1e-10 * gamma:
        raise ConvergenceError("final solution drifted off the target gamma")
    return sol
