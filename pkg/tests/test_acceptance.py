"""Acceptance battery: the headline numerical claims, one test per
criterion.  Each test prints a single summary line with the measured
numbers, so `python tests/test_acceptance.py` (or pytest -s) gives a
pass/fail roll-up of the whole set.
"""

import math
from functools import lru_cache

import numpy as np

from deltagas.asymptotics import eb_series, gplus_coeffs
from deltagas.fredholm import (
    Statistics,
    energy,
    solve_for_gamma,
    solve_love,
)
from deltagas.hankel import g_plus_at_zero, half_line_grid, neumann_solve
from deltagas.verify import SUITES
from deltagas.wiener_hopf import (
    hankel_kernel_k,
    kernel_tail_l1,
    sigma_minus,
    sigma_plus,
    symbol,
)

PI = math.pi


@lru_cache(maxsize=None)
def _report(name):
    return SUITES[name](800)


def test_criterion_01_strong_coupling_energies():
    ef = energy(solve_love(Statistics.FERMI, 100.0, 400))
    eb = energy(solve_love(Statistics.BOSE, 100.0, 400))
    ef_limit = PI * PI / 48.0
    eb_limit = PI * PI / 3.0
    assert abs(ef - ef_limit) <= 0.02 * ef_limit
    assert abs(eb - eb_limit) <= 0.02 * eb_limit
    print(
        "criterion 01: PASS - kappa=100 energies: fermi %.6f vs pi^2/48"
        " (%.2f%% off), bose %.6f vs pi^2/3 (%.2f%% off)"
        % (ef, 100 * abs(ef - ef_limit) / ef_limit,
           eb, 100 * abs(eb - eb_limit) / eb_limit)
    )


def test_criterion_02_charge_series_order():
    rep = _report("charge")
    fit = rep["fit"]
    assert fit["slope"] >= 1.6
    assert fit["abs_residual_at_last"] < 5e-5
    assert rep["pass"]
    print(
        "criterion 02: PASS - Q residual order %.3f (>= 1.6), "
        "|residual| at kappa=0.01 is %.2e (< 5e-5)"
        % (fit["slope"], fit["abs_residual_at_last"])
    )


def test_criterion_03_energy_series_order_and_limit():
    rep = _report("energy")
    fit = rep["fit"]
    assert fit["slope"] >= 1.7
    assert fit["limit_error"] <= 1e-6
    assert rep["pass"]
    print(
        "criterion 03: PASS - eps_F residual order %.3f (>= 1.7), "
        "extrapolated limit off pi^2/12 by %.2e (<= 1e-6)"
        % (fit["slope"], fit["limit_error"])
    )


def test_criterion_04_rescaled_mass_correction():
    rep = _report("fint")
    slope = rep["fit"]["slope"]
    assert slope <= -0.7
    assert rep["pass"]
    print(
        "criterion 04: PASS - rescaled-mass residual order %.3f (<= -0.7) "
        "over r in {10, 20, 40, 80}" % slope
    )


def test_criterion_05_factorisation_residual():
    xs = np.linspace(-20.0, 20.0, 1000)
    worst = max(abs(sigma_plus(x) * sigma_minus(x) - symbol(x)) for x in xs)
    zero_gap = max(abs(sigma_plus(0.0) - 1.0), abs(sigma_minus(0.0) - 1.0))
    assert worst <= 1e-10
    assert zero_gap <= 1e-12
    print(
        "criterion 05: PASS - max |sigma+ sigma- - sigma| = %.2e over 1000 "
        "points (<= 1e-10), normalisation gap %.1e (<= 1e-12)"
        % (worst, zero_gap)
    )


def test_criterion_06_kernel_tail_shape():
    xs = np.geomspace(5.0, 50.0, 9)
    scaled = np.abs(xs * xs * hankel_kernel_k(xs))
    spread = scaled.max() / scaled.min()
    assert spread < 3.0
    tails = [kernel_tail_l1(r) for r in (10.0, 20.0, 40.0, 80.0)]
    ratios = [tails[i] / tails[i + 1] for i in range(3)]
    for ratio in ratios:
        assert 1.5 <= ratio <= 2.5
    print(
        "criterion 06: PASS - x^2|k| spread %.3f on [5, 50] (< 3), tail L1 "
        "halving ratios %.3f / %.3f / %.3f (all within 2 +- 0.5)"
        % (spread, *ratios)
    )


def test_criterion_07_charge_route_agreement():
    rep = _report("cross")
    fit = rep["fit"]
    assert fit["relative_at_order_3"] <= 5e-3
    assert fit["monotone"] is True
    assert rep["pass"]
    print(
        "criterion 07: PASS - operator-route Q at kappa=0.1 within %.2e "
        "relative of the direct solve at order 3 (<= 5e-3), improving "
        "monotonically through orders 1, 2, 3" % fit["relative_at_order_3"]
    )


def test_criterion_08_window_integral_series():
    rs = np.array([20.0, 50.0, 100.0])
    resid = np.array(
        [abs(g_plus_at_zero(r) - gplus_coeffs(r)[0]) for r in rs]
    )
    slope = float(np.polyfit(np.log(rs), np.log(resid), 1)[0])
    assert slope <= -0.7
    print(
        "criterion 08: PASS - ghat_plus(0) vs its log series: residual "
        "order %.3f over r in {20, 50, 100} (<= -0.7)" % slope
    )


def test_criterion_09_bose_energy_window():
    worst = 0.0
    for gamma in (0.5, 0.25, 0.1):
        sol = solve_for_gamma(Statistics.BOSE, gamma, 800)
        rel = abs(energy(sol) - eb_series(gamma)) / (gamma * gamma)
        worst = max(worst, rel)
        assert rel <= 0.01
    print(
        "criterion 09: PASS - |eps_B - series| / gamma^2 at most %.2e over "
        "gamma in {0.5, 0.25, 0.1} (<= 0.01)" % worst
    )


def test_criterion_10_structure_checks():
    worst_sym = 0.0
    for kappa in np.logspace(-3, 3, 7):
        sol = solve_love(Statistics.FERMI, float(kappa), 200, check=False)
        worst_sym = max(
            worst_sym, float(np.max(np.abs(sol.values - sol.values[::-1])))
        )
        assert np.all(sol.values > 0.0)
        assert np.all(sol.values < 1.0)
    assert worst_sym <= 1e-10
    ref = solve_love(Statistics.FERMI, 0.06, 1600, check=False).m0
    errs = [
        abs(solve_love(Statistics.FERMI, 0.06, n, check=False).m0 - ref)
        for n in (50, 100, 200)
    ]
    assert errs[0] / errs[1] >= 4.0
    assert errs[1] / errs[2] >= 4.0
    grid = half_line_grid(20.0)
    reduced = neumann_solve(20.0, 3, grid)
    paired = neumann_solve(20.0, 3, grid, pair_form=True)
    pair_gap = max(
        abs(a - b) for a, b in zip(reduced.per_order, paired.per_order)
    )
    assert pair_gap <= 1e-10
    print(
        "criterion 10: PASS - symmetry %.1e (<= 1e-10), Fermi profile in "
        "(0, 1), node-doubling factors %.0f and %.0f (>= 4), block-form "
        "gap %.1e (<= 1e-10)"
        % (worst_sym, errs[0] / errs[1], errs[1] / errs[2], pair_gap)
    )


if __name__ == "__main__":
    import sys

    failed = 0
    names = sorted(n for n in dir() if n.startswith("test_criterion"))
    for name in names:
        label = "criterion %s" % name.split("_")[2]
        try:
            globals()[name]()
        except Exception as exc:  # pragma: no cover - reporting path
            failed += 1
            reason = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
            print("%s: FAIL - %s" % (label, reason))
    sys.exit(1 if failed else 0)
