"""Half-line operator route: ghat_plus, the Hankel kernel matrix, and
the Neumann sum for the charge."""

import numpy as np
import pytest

from deltagas.asymptotics import gplus_coeffs, q_series
from deltagas.hankel import (
    ContractionError,
    GridMismatchError,
    HalfLineFunction,
    _check_decreasing,
    apply_hankel,
    charge_Q_via_hankel,
    g_hat_plus,
    g_plus_at_zero,
    half_line_grid,
    hankel_matrix,
    neumann_solve,
)
from deltagas.wiener_hopf import hankel_kernel_k

# symmetrised xi-space integral at 25 digits (tools/make_oracles.py)
GPLUS0_R20 = 0.71337403915614495
M0_FERMI_K01 = 1.0717651433900173


def test_half_line_grid_shape():
    g = half_line_grid(20.0)
    assert g.domain == ("half_line", 200.0, 0.05)
    assert g.bounds == (0.0, 200.0)
    assert g.nodes[0] > 0.0
    assert np.all(np.diff(g.nodes) > 0.0)
    # 4r wins once r > 50
    assert half_line_grid(60.0).domain[1] == 240.0


def test_ghat_plus_positive_with_quadratic_tail():
    r = 20.0
    grid = half_line_grid(r)
    g = g_hat_plus(r, grid)
    assert np.all(g.values > 0.0)
    # ghat ~ r/(2 pi x^2) far out
    i = np.argmin(np.abs(grid.nodes - 150.0))
    x0 = grid.nodes[i]
    assert 0.75 < g.values[i] * 2.0 * np.pi * x0 * x0 / r < 1.05
    with pytest.raises(ValueError):
        g_hat_plus(-1.0, grid)


def test_g_plus_at_zero_pin():
    assert abs(g_plus_at_zero(20.0) - GPLUS0_R20) < 5e-8
    assert g_plus_at_zero(10.0) > 0.0
    # leading large-r behaviour is the g0 coefficient
    assert abs(g_plus_at_zero(50.0) - gplus_coeffs(50.0)[0]) < 0.01
    with pytest.raises(ValueError):
        g_plus_at_zero(0.0)


def test_apply_hankel_linearity_and_kernel():
    r = 20.0
    grid = half_line_grid(r)
    zero = apply_hankel(r, HalfLineFunction(grid, np.zeros(len(grid.nodes))))
    assert np.all(zero.values == 0.0)
    # a point mass picks out one kernel column
    j0 = 40
    mass = np.zeros(len(grid.nodes))
    mass[j0] = 1.0
    out = apply_hankel(r, HalfLineFunction(grid, mass))
    want = hankel_kernel_k(grid.nodes + grid.nodes[j0] + r) * grid.weights[j0]
    assert np.max(np.abs(out.values - want)) < 1e-12 * np.max(np.abs(want))


def test_matrix_agrees_with_apply():
    r = 20.0
    grid = half_line_grid(r)
    f = HalfLineFunction(grid, np.exp(-grid.nodes) * (1.0 + 0.3 * np.sin(grid.nodes)))
    via_matrix = hankel_matrix(r, grid) @ f.values
    via_apply = apply_hankel(r, f).values
    assert np.max(np.abs(via_matrix - via_apply)) < 1e-14


def test_operator_requires_half_line_grid():
    from deltagas.quadrature import gauss_legendre

    finite = gauss_legendre(16, 1.0, 2.0)
    with pytest.raises(GridMismatchError):
        hankel_matrix(20.0, finite)
    with pytest.raises(GridMismatchError):
        apply_hankel(20.0, HalfLineFunction(finite, np.ones(16)))
    half = half_line_grid(20.0)
    with pytest.raises(ValueError):
        hankel_matrix(4.0, half)
    with pytest.raises(ValueError):
        apply_hankel(4.0, HalfLineFunction(half, np.zeros(len(half.nodes))))


def test_neumann_order_zero_is_bare_window():
    res = neumann_solve(20.0, 0)
    assert res.per_order == ()
    assert res.h0 == 0.0
    assert res.fhat0 == 20.0


def test_neumann_terms_positive_and_decreasing():
    res = neumann_solve(20.0, 3)
    assert res.order == 3
    assert len(res.per_order) == 3
    assert all(t > 0.0 for t in res.per_order)
    assert res.per_order[0] > res.per_order[1] > res.per_order[2]
    assert res.h0 == pytest.approx(sum(res.per_order), rel=1e-15)
    assert res.fhat0 == pytest.approx(20.0 + 2.0 * res.h0, rel=1e-15)
    assert res.per_order[0] == g_plus_at_zero(20.0)


def test_grid_route_truncation_tail():
    # the materialised grid stops at x_max, losing the known quadratic
    # tail of ghat; the gap from the exact route must match r/(2 pi x_max)
    r = 20.0
    grid = half_line_grid(r)
    exact = neumann_solve(r, 1)
    on_grid = neumann_solve(r, 1, grid)
    tail = r / (2.0 * np.pi * grid.domain[1])
    gap = exact.per_order[0] - on_grid.per_order[0]
    assert 0.5 * tail < gap < 1.5 * tail


@pytest.mark.parametrize("r", [10.0, 20.0])
def test_pair_form_matches_reduced_iteration(r):
    grid = half_line_grid(r)
    reduced = neumann_solve(r, 3, grid)
    paired = neumann_solve(r, 3, grid, pair_form=True)
    for a, b in zip(reduced.per_order, paired.per_order):
        assert abs(a - b) < 1e-10
    assert abs(reduced.fhat0 - paired.fhat0) < 1e-10
    # with no grid given the pair form builds the default one
    auto = neumann_solve(r, 3, pair_form=True)
    assert abs(auto.fhat0 - paired.fhat0) < 1e-12


def test_contraction_guard():
    _check_decreasing([1.0, 0.5, 0.4])
    _check_decreasing([1.0, 2.0])  # first step may grow
    with pytest.raises(ContractionError):
        _check_decreasing([1.0, 0.5, 0.6])


def test_neumann_validation():
    with pytest.raises(ValueError):
        neumann_solve(4.0, 2)
    with pytest.raises(ValueError):
        neumann_solve(20.0, -1)
    with pytest.raises(ValueError):
        neumann_solve(20.0, 1.5)


def test_charge_order_zero_is_free_fermi_value():
    for kappa in (0.4, 0.1, 0.02):
        assert abs(charge_Q_via_hankel(kappa, 0) - 1.0 / np.pi) < 1e-15


def test_charge_against_direct_solve():
    q_direct = M0_FERMI_K01 / np.pi
    q2 = charge_Q_via_hankel(0.1, 2)
    q3 = charge_Q_via_hankel(0.1, 3)
    assert abs(q2 - q_direct) < 5e-3 * q_direct
    assert abs(q3 - q_direct) < abs(q2 - q_direct)


def test_charge_against_series_deep_in_weak_coupling():
    assert abs(charge_Q_via_hankel(0.02, 2) - q_series(0.02)) < 1e-4


def test_charge_kappa_window():
    with pytest.raises(ValueError):
        charge_Q_via_hankel(0.5, 2)
    with pytest.raises(ValueError):
        charge_Q_via_hankel(0.0, 2)
    with pytest.raises(ValueError):
        charge_Q_via_hankel(-0.1, 2)
