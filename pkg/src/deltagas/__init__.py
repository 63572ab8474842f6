"""Ground-state numerics for the one-dimensional delta-interaction gas.

Two independent solution routes for the same Fredholm problem: a direct
Nystrom discretisation of the integral equation on [-1, 1] (fredholm),
and a Wiener-Hopf factorisation of the symbol with Hankel-operator
Neumann iteration on the half line (wiener_hopf, hankel).  Closed-form
asymptotic series and order-fitting utilities (asymptotics) plus
residual-sweep reports (verify) tie the routes together; the cli module
exposes everything as a command-line tool.

Set DELTAGAS_BACKEND=numpy or =numba to pick the dense-kernel backend;
by default the compiled backend is used when importable.
"""

from ._kernels import backend_name
from .asymptotics import (
    AsymptoticSeries,
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
from .fredholm import (
    BracketError,
    ConvergenceError,
    CouplingParams,
    NystromSolution,
    RescaledSolution,
    SingularSystemError,
    Statistics,
    WrongStatisticsError,
    charge_Q,
    energy,
    energy_total,
    gamma_from_solution,
    solve_for_gamma,
    solve_love,
    solve_rescaled,
)
from .hankel import (
    ContractionError,
    GridMismatchError,
    HalfLineFunction,
    NeumannResult,
    apply_hankel,
    charge_Q_via_hankel,
    g_hat_plus,
    g_plus_at_zero,
    half_line_grid,
    hankel_matrix,
    neumann_solve,
)
from .quadrature import (
    PoleOnNodeError,
    PolesTooCloseError,
    QuadratureGrid,
    gauss_legendre,
    laplace_grid,
    pv_integrate,
)
from .special import PoleError, digamma, log_gamma, recip_gamma
from .wiener_hopf import (
    DepthExceededError,
    ExpansionCoefficients,
    FactorValue,
    OutOfStripError,
    WrongHalfPlaneError,
    expansion_coeffs,
    factor,
    hankel_kernel_k,
    inv_factor_on_ray,
    kernel_tail_l1,
    s1_forward_transform,
    s1_kernel,
    sigma_minus,
    sigma_plus,
    symbol,
)
from .verify import all_suites, charge_suite, cross_suite, energy_suite, fint_suite

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "backend_name",
    # special
    "PoleError",
    "log_gamma",
    "digamma",
    "recip_gamma",
    # quadrature
    "QuadratureGrid",
    "PoleOnNodeError",
    "PolesTooCloseError",
    "gauss_legendre",
    "laplace_grid",
    "pv_integrate",
    # fredholm
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
    # wiener_hopf
    "FactorValue",
    "ExpansionCoefficients",
    "OutOfStripError",
    "WrongHalfPlaneError",
    "DepthExceededError",
    "symbol",
    "factor",
    "sigma_plus",
    "sigma_minus",
    "expansion_coeffs",
    "inv_factor_on_ray",
    "hankel_kernel_k",
    "s1_kernel",
    "s1_forward_transform",
    "kernel_tail_l1",
    # hankel
    "HalfLineFunction",
    "NeumannResult",
    "GridMismatchError",
    "ContractionError",
    "half_line_grid",
    "g_hat_plus",
    "g_plus_at_zero",
    "hankel_matrix",
    "apply_hankel",
    "neumann_solve",
    "charge_Q_via_hankel",
    # asymptotics
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
    # verify
    "charge_suite",
    "energy_suite",
    "fint_suite",
    "cross_suite",
    "all_suites",
]
