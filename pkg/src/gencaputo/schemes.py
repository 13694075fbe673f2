"""Time-stepping solvers for Caputo problems of order 0 < alpha < 1.

The L1, L2-1sigma and Euler-trapezoid schemes run on the uniform grid of a
transformed :class:`~gencaputo.core.CaputoIVP` and return the value array
``u_bar[0..N]``; :func:`gencaputo.transform.pull_back` pairs it with the
graded nodes. :func:`solve_almeida` works on the original problem directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import newton

from .core import CaputoIVP, GeneralizedIVP, GradedMesh, Solution
from .errors import ConvergenceError, DomainError
from .special import gamma


@dataclass(frozen=True)
class NonlinearSolveConfig:
    """Picard iteration settings for implicit steps.

    With ``secant_fallback`` a step whose Picard iteration fails is retried
    with a secant root search started from the previous value.
    """

    tol: float = 1e-12
    max_iter: int = 100
    secant_fallback: bool = True

    def __post_init__(self):
        if not self.tol > 0:
            raise DomainError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be >= 1, got {self.max_iter}")


DEFAULT_NONLINEAR = NonlinearSolveConfig()


def solve_affine_fixed_point(c: float, kappa: float, phi, x0: float, cfg: NonlinearSolveConfig,
                             u_independent: bool = False) -> tuple[float, int]:
    """Solve ``x = c + kappa * phi(x)``; returns ``(x, iterations)``."""
    if u_independent or kappa == 0.0:
        return c + kappa * phi(x0), 1
    x = x0
    for it in range(1, cfg.max_iter + 1):
        x_new = c + kappa * phi(x)
        if not math.isfinite(x_new):
            break
        if abs(x_new - x) <= cfg.tol * max(1.0, abs(x_new)):
            return x_new, it
        x = x_new
    if cfg.secant_fallback:
        try:
            root = newton(lambda y: y - c - kappa * phi(y), x0, tol=cfg.tol, maxiter=cfg.max_iter)
        except (RuntimeError, OverflowError) as exc:
            raise ConvergenceError(f"implicit step failed: {exc}") from exc
        root = float(root)
        if abs(root - c - kappa * phi(root)) <= 10 * cfg.tol * max(1.0, abs(root)):
            return root, cfg.max_iter + 1
    raise ConvergenceError(f"fixed-point iteration did not converge in {cfg.max_iter} steps")


def _check_order(alpha: float) -> None:
    if not 0 < alpha < 1:
        raise DomainError(f"scheme implemented for 0 < alpha < 1, got {alpha}")


def _grid(p: CaputoIVP, N: int) -> tuple[np.ndarray, float]:
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    dt = (p.T_bar - p.a_bar) / N
    t = p.a_bar + dt * np.arange(N + 1)
    t[-1] = p.T_bar
    return t, dt


@dataclass(frozen=True, eq=False)
class L1Weights:
    """``b_j = j^(1-alpha) - (j-1)^(1-alpha)``; ``b[j-1]`` stores ``b_j``."""

    alpha: float
    b: np.ndarray

    @classmethod
    def build(cls, alpha: float, N: int) -> "L1Weights":
        j = np.arange(1, N + 1, dtype=float)
        b = j ** (1 - alpha) - (j - 1) ** (1 - alpha)
        return cls(alpha, b)


def solve_l1(p: CaputoIVP, N: int, cfg: NonlinearSolveConfig = DEFAULT_NONLINEAR,
             diagnostics: list | None = None) -> np.ndarray:
    """L1 finite-difference scheme, order ``2 - alpha`` for smooth solutions.

    At each node ``sum_j (u_{j+1} - u_j) b_{n-j} = Gamma(2-alpha) dt^alpha f(t_n, u_n)``.
    """
    _check_order(p.alpha)
    alpha = p.alpha
    t, dt = _grid(p, N)
    b = L1Weights.build(alpha, N).b
    g = gamma(2 - alpha) * dt**alpha
    u = np.empty(N + 1)
    u[0] = p.init_bar[0]
    du = np.zeros(N)
    for n in range(1, N + 1):
        # sum over j = 0..n-2 of du_j * b_{n-j}; b_{n-j} is b[n-j-1]
        hist = float(np.dot(du[: n - 1], b[n - 1 : 0 : -1])) if n > 1 else 0.0
        tn = t[n]
        u[n], its = solve_affine_fixed_point(
            u[n - 1] - hist, g, lambda x: p.rhs_bar(tn, x), u[n - 1], cfg, p.u_independent
        )
        du[n - 1] = u[n] - u[n - 1]
        if diagnostics is not None:
            diagnostics.append(its)
    return u


@dataclass(frozen=True, eq=False)
class L21SigmaWeights:
    """Coefficient ladders of the L2-1sigma approximation at ``t_{n+sigma}``."""

    alpha: float
    sigma: float
    a: np.ndarray
    b: np.ndarray

    @classmethod
    def build(cls, alpha: float, N: int) -> "L21SigmaWeights":
        sigma = 1 - alpha / 2
        j = np.arange(0, N + 1, dtype=float)
        a = np.empty(N + 1)
        a[0] = sigma ** (1 - alpha)
        a[1:] = (j[1:] + sigma) ** (1 - alpha) - (j[1:] - 1 + sigma) ** (1 - alpha)
        b = np.zeros(N + 1)
        hi, lo = j[1:] + sigma, j[1:] - 1 + sigma
        b[1:] = (hi ** (2 - alpha) - lo ** (2 - alpha)) / (2 - alpha) - 0.5 * (hi ** (1 - alpha) + lo ** (1 - alpha))
        return cls(alpha, sigma, a, b)

    def c(self, n: int) -> np.ndarray:
        """``c_0..c_n`` used at step ``n``."""
        a, b = self.a, self.b
        if n == 0:
            return a[:1].copy()
        c = np.empty(n + 1)
        c[0] = a[0] + b[1]
        c[1:n] = a[1:n] + b[2 : n + 1] - b[1:n]
        c[n] = a[n] - b[n]
        return c


def solve_l2_1sigma(p: CaputoIVP, N: int, cfg: NonlinearSolveConfig = DEFAULT_NONLINEAR,
                    diagnostics: list | None = None) -> np.ndarray:
    """Alikhanov's L2-1sigma scheme, order ``3 - alpha`` for smooth solutions.

    A ``u``-dependent right-hand side is evaluated at the interpolated value
    ``sigma u_{n+1} + (1 - sigma) u_n``.
    """
    _check_order(p.alpha)
    alpha = p.alpha
    t, dt = _grid(p, N)
    w = L21SigmaWeights.build(alpha, N)
    sigma = w.sigma
    g = gamma(2 - alpha) * dt**alpha
    u = np.empty(N + 1)
    u[0] = p.init_bar[0]
    du = np.zeros(N)
    for n in range(N):
        c = w.c(n)
        # j = 0..n-1 pairs with c_{n-j}
        hist = float(np.dot(du[:n], c[n:0:-1])) if n > 0 else 0.0
        ts = p.a_bar + (n + sigma) * dt
        un = u[n]
        # u_{n+1} = un + (g f(ts, s u_{n+1} + (1-s) un) - hist) / c_0
        u[n + 1], its = solve_affine_fixed_point(
            un - hist / c[0], g / c[0], lambda x: p.rhs_bar(ts, sigma * x + (1 - sigma) * un), un, cfg,
            p.u_independent,
        )
        du[n] = u[n + 1] - un
        if diagnostics is not None:
            diagnostics.append(its)
    return u


def solve_euler_trap(p: CaputoIVP, N: int, consistent_last_step: bool = False) -> np.ndarray:
    """Explicit Euler step with a trapezoidal rule for the memory integral.

    The last-interval weight is ``dt^alpha / alpha`` as in the published
    scheme; ``consistent_last_step=True`` uses ``dt^alpha / Gamma(alpha + 1)``,
    the exact kernel integral including the ``1/Gamma(alpha)`` prefactor.
    """
    _check_order(p.alpha)
    alpha = p.alpha
    t, dt = _grid(p, N)
    a0 = p.init_bar[0]
    u = np.empty(N + 1)
    F = np.empty(N + 1)
    u[0] = a0
    F[0] = p.rhs_bar(t[0], a0)
    memory = dt**alpha / (2 * gamma(alpha))
    last = dt**alpha / gamma(alpha + 1) if consistent_last_step else dt**alpha / alpha
    for n in range(N):
        j = np.arange(n + 1)
        d = (n - j + 1.0) ** (alpha - 1)
        dF = d * F[: n + 1]
        S = float(dF[1:].sum() + dF[:-1].sum())
        u[n + 1] = a0 + memory * S + last * F[n]
        F[n + 1] = p.rhs_bar(t[n + 1], u[n + 1])
    return u


def almeida_coefficients(alpha: float, rho: float, n_trunc: int) -> tuple[float, np.ndarray]:
    """``A_N`` and ``B_{N,1..N}`` of the truncated expansion of the generalized integral.

    Expanding ``(t^rho - s^rho)^alpha`` binomially after an integration by
    parts gives ``I^alpha f(t) ~ A x^alpha f(t) - sum_k B_k x^(alpha-k) V_k(t)``
    with ``x = t^rho - a^rho``. For ``alpha = 1/2`` these coincide with the
    published coefficients, which are written in terms of ``alpha - 1``.
    """
    # r_k = Gamma(k - alpha) / (Gamma(-alpha) k!) by its term ratio, no overflow for large N
    r = np.empty(n_trunc + 1)
    r[0] = 1.0
    for k in range(1, n_trunc + 1):
        r[k] = r[k - 1] * (k - 1 - alpha) / k
    pref = 1.0 / gamma(1 + alpha)
    A = rho ** (-alpha) * pref * math.fsum(r)
    B = rho ** (1 - alpha) * pref * r[1:] * np.arange(1, n_trunc + 1)
    return A, B


def solve_almeida(p: GeneralizedIVP, N_trunc: int, mesh: GradedMesh,
                  cfg: NonlinearSolveConfig = DEFAULT_NONLINEAR) -> Solution:
    """Direct solver for the generalized problem by a truncated expansion.

    Each node solves ``u = u_a + A x^alpha f(t, u) - sum_k B_k x^(alpha-k) V_k(t)``
    where ``V_k(t) = int_a^t s^(rho-1) (s^rho - a^rho)^(k-1) f(s, u(s)) ds`` is
    accumulated with the composite trapezoidal rule in ``xi = s^rho``.
    """
    _check_order(p.alpha)
    if N_trunc < 1:
        raise DomainError(f"N_trunc must be >= 1, got {N_trunc}")
    if not (math.isclose(mesh.rho, p.rho) and math.isclose(mesh.nodes[0], p.a, abs_tol=1e-14)
            and math.isclose(mesh.nodes[-1], p.T)):
        raise DomainError("mesh does not match the problem's rho, a and T")
    alpha, rho = p.alpha, p.rho
    A, B = almeida_coefficients(alpha, rho, N_trunc)
    k = np.arange(1, N_trunc + 1)
    xi, t = mesh.nodes_bar, mesh.nodes
    z = xi - xi[0]
    N = mesh.N
    ua = p.init[0]
    u = np.empty(N + 1)
    u[0] = ua
    F_prev = p.rhs(t[0], ua)
    V = np.zeros(N_trunc)
    its_log = []
    for m in range(1, N + 1):
        x = z[m]
        h = xi[m] - xi[m - 1]
        zp = z[m - 1] ** (k - 1)
        zm = x ** (k - 1)
        V_known = V + h / (2 * rho) * zp * F_prev
        coef = B * x ** (alpha - k)
        c = ua - float(np.dot(coef, V_known))
        kappa = A * x**alpha - float(np.dot(coef, h / (2 * rho) * zm))
        tm = t[m]
        u[m], its = solve_affine_fixed_point(c, kappa, lambda y: p.rhs(tm, y), u[m - 1], cfg, p.u_independent)
        F_prev = p.rhs(tm, u[m])
        V = V_known + h / (2 * rho) * zm * F_prev
        its_log.append(its)
    return Solution(mesh=mesh, values=u, scheme_id="almeida", diagnostics=tuple(its_log))


__all__ = [
    "NonlinearSolveConfig",
    "L1Weights",
    "L21SigmaWeights",
    "solve_l1",
    "solve_l2_1sigma",
    "solve_euler_trap",
    "solve_almeida",
    "almeida_coefficients",
    "solve_affine_fixed_point",
]
