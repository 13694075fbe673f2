from __future__ import annotations

import math

import numpy as np
import pytest

from gencaputo.core import CaputoIVP, GeneralizedIVP, build_graded_mesh, linf_error
from gencaputo.errors import ConvergenceError, DomainError
from gencaputo.problems import example2, example3, example4
from gencaputo.schemes import (
    L1Weights,
    L21SigmaWeights,
    NonlinearSolveConfig,
    almeida_coefficients,
    solve_affine_fixed_point,
    solve_almeida,
    solve_euler_trap,
    solve_l1,
    solve_l2_1sigma,
)
from gencaputo.special import gamma, gamma_ratio


def linear_problem(alpha, a_bar=0.0, T_bar=1.0):
    """Caputo problem whose solution is ``1 + (t - a_bar)``."""
    g = gamma(2 - alpha)
    rhs = lambda t, x: (t - a_bar) ** (1 - alpha) / g  # noqa: E731
    return CaputoIVP(alpha, a_bar, T_bar, (1.0,), rhs, u_independent=True)


@pytest.mark.parametrize("alpha", [0.2, 0.5, 0.9])
@pytest.mark.parametrize("solver", [solve_l1, solve_l2_1sigma])
def test_linear_solutions_are_reproduced(alpha, solver):
    p = linear_problem(alpha, 0.3, 2.0)
    u = solver(p, 40)
    t = np.linspace(0.3, 2.0, 41)
    np.testing.assert_allclose(u, 1 + (t - 0.3), atol=1e-12)


def test_l1_linear_with_u_dependence():
    # D^alpha u = u + g(t) with u = t; forces the implicit iteration
    alpha = 0.6
    g = gamma(2 - alpha)
    p = CaputoIVP(alpha, 0.0, 1.0, (0.0,), lambda t, x: t ** (1 - alpha) / g + (x - t))
    diag: list[int] = []
    u = solve_l1(p, 32, diagnostics=diag)
    np.testing.assert_allclose(u, np.linspace(0, 1, 33), atol=1e-12)
    assert len(diag) == 32 and max(diag) > 1


def test_l1_weights():
    w = L1Weights.build(0.4, 50).b
    assert np.all(w > 0) and np.all(np.diff(w) < 0)
    assert w.sum() == pytest.approx(50**0.6)


@pytest.mark.parametrize("alpha", [0.1, 0.5, 0.95])
def test_l2sigma_coefficients_positive_and_decreasing(alpha):
    w = L21SigmaWeights.build(alpha, 64)
    assert w.sigma == pytest.approx(1 - alpha / 2)
    for n in (0, 1, 5, 63):
        c = w.c(n)
        assert len(c) == n + 1
        assert np.all(c > 0)
        assert np.all(np.diff(c) < 0)
        # Alikhanov's bound c_0 > (2 sigma - 1) / sigma c_1 is what stability rests on
        if n > 0:
            assert c[0] > (2 * w.sigma - 1) / w.sigma * c[1]


def test_l2sigma_converges_at_expected_rate():
    ex = example2(0.5, 1 / 6)
    errs = []
    for N in (32, 64, 128):
        u = solve_l2_1sigma(ex.equivalent, N)
        s = np.linspace(0, 1, N + 1)
        errs.append(np.max(np.abs(u - ex.exact_bar(s))))
    assert math.log2(errs[1] / errs[2]) == pytest.approx(2.5, abs=0.1)


def test_euler_last_step_variants():
    ex = example3(0.5, 0.9)
    s = np.linspace(ex.equivalent.a_bar, ex.equivalent.T_bar, 129)
    published = solve_euler_trap(ex.equivalent, 128)
    consistent = solve_euler_trap(ex.equivalent, 128, consistent_last_step=True)
    e_pub = np.max(np.abs(published - ex.exact_bar(s)))
    e_con = np.max(np.abs(consistent - ex.exact_bar(s)))
    # the published weight lacks 1/Gamma(alpha), which dominates the error at alpha = 1/2
    assert e_pub == pytest.approx(0.25805, rel=1e-3)
    assert e_con < e_pub / 10


def test_schemes_reject_orders_above_one():
    p = CaputoIVP(1.5, 0.0, 1.0, (0.0, 0.0), lambda t, x: 0.0)
    for solver in (solve_l1, solve_l2_1sigma, solve_euler_trap):
        with pytest.raises(DomainError):
            solver(p, 8)


def published_almeida(alpha, rho, n_trunc):
    """Coefficients as printed, written with Gamma(alpha - 1)."""
    pref = 1.0 / (gamma(2 - alpha) * gamma(alpha - 1))
    A = rho ** (alpha - 1) * pref * sum(gamma(k - 1 + alpha) / math.factorial(k) for k in range(n_trunc + 1))
    B = [rho**alpha * pref * gamma(k - 1 + alpha) / math.factorial(k - 1) for k in range(1, n_trunc + 1)]
    return A, np.array(B)


@pytest.mark.parametrize("rho", [0.2, 0.75, 1.0, 2.5])
def test_almeida_coefficients_match_printed_form_at_one_half(rho):
    A, B = almeida_coefficients(0.5, rho, 10)
    A_ref, B_ref = published_almeida(0.5, rho, 10)
    assert A == pytest.approx(A_ref, rel=1e-13)
    np.testing.assert_allclose(B, B_ref, rtol=1e-13)


def test_almeida_coefficients_differ_from_printed_form_elsewhere():
    A, _ = almeida_coefficients(0.3, 0.5, 10)
    A_ref, _ = published_almeida(0.3, 0.5, 10)
    assert abs(A / A_ref - 1) > 0.1


def test_almeida_coefficient_sum_closed_form():
    # partial sums of the binomial series of (1 - x)^alpha at x = 1
    alpha, rho, N = 0.35, 0.7, 4000
    A, B = almeida_coefficients(alpha, rho, N)
    ref = rho**-alpha / gamma(1 + alpha) * gamma_ratio(N + 1 - alpha, N + 1) / gamma(1 - alpha)
    assert A == pytest.approx(ref, rel=1e-10)
    assert np.all(np.isfinite(B))


def test_almeida_converges_on_smooth_problem():
    ex = example2(0.5, 0.5)
    errs = []
    for N in (32, 128):
        mesh = build_graded_mesh(0.0, 1.0, 0.5, N)
        sol = solve_almeida(ex.generalized, 10, mesh)
        errs.append(linf_error(sol, ex.exact))
    assert errs[1] < errs[0] < 0.05


def test_almeida_guards():
    ex = example4()
    with pytest.raises(DomainError):
        solve_almeida(ex.generalized, 0, build_graded_mesh(0.25, 4.0, 0.75, 16))
    with pytest.raises(DomainError):
        solve_almeida(ex.generalized, 10, build_graded_mesh(0.25, 4.0, 0.5, 16))


def test_affine_fixed_point_picard_and_secant():
    cfg = NonlinearSolveConfig()
    x, its = solve_affine_fixed_point(1.0, 0.5, math.cos, 0.0, cfg)
    assert x == pytest.approx(1 + 0.5 * math.cos(x), abs=1e-12)
    assert its <= cfg.max_iter
    # kappa * phi' = 3 > 1: Picard diverges, secant recovers the root of x = 1 + 3 sin(x)
    x, its = solve_affine_fixed_point(1.0, 3.0, math.sin, 2.0, cfg)
    assert x == pytest.approx(1 + 3 * math.sin(x), abs=1e-10)
    assert its == cfg.max_iter + 1
    with pytest.raises(ConvergenceError):
        solve_affine_fixed_point(1.0, 3.0, math.sin, 2.0, NonlinearSolveConfig(secant_fallback=False))


def test_nonlinear_config_validation():
    with pytest.raises(DomainError):
        NonlinearSolveConfig(tol=0.0)
    with pytest.raises(DomainError):
        NonlinearSolveConfig(max_iter=0)


def test_generalized_problem_through_transform_is_rho_invariant():
    # the transformed second example does not depend on rho, so neither do the values
    a = solve_l1(example2(0.5, 1 / 6).equivalent, 64)
    b = solve_l1(example2(0.5, 5 * math.log(2) / 4).equivalent, 64)
    assert np.array_equal(a, b)


def test_generalized_ivp_fields_used_by_almeida():
    p = GeneralizedIVP(0.5, 1.0, 0.0, 1.0, (2.0,), lambda t, u: 0.0, u_independent=True)
    sol = solve_almeida(p, 5, build_graded_mesh(0.0, 1.0, 1.0, 8))
    np.testing.assert_allclose(sol.values, 2.0)


def test_l1_single_step_unrolled():
    # one step: (u_1 - u_0) b_1 = Gamma(2 - alpha) dt^alpha c with b_1 = 1
    alpha, c, dt = 0.3, 2.5, 0.4
    p = CaputoIVP(alpha, 1.0, 1.0 + dt, (0.7,), lambda t, x: c, u_independent=True)
    u = solve_l1(p, 1)
    assert u[1] == pytest.approx(0.7 + c * gamma(2 - alpha) * dt**alpha, rel=1e-15)
