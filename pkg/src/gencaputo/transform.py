"""Equivalence transform between generalized and standard Caputo problems.

A solution ``u`` of the generalized problem on ``[a, T]`` corresponds to
``u_bar(s) = u(s^(1/rho))`` solving a standard Caputo problem on
``[a^rho, T^rho]`` with rescaled initial values and right-hand side.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import CaputoIVP, GeneralizedIVP, GradedMesh, Solution, check_hypothesis
from .errors import DomainError, SingularityError


def to_equivalent(p: GeneralizedIVP) -> CaputoIVP:
    check_hypothesis(p.alpha, p.rho, p.a)
    rho, alpha, f = p.rho, p.alpha, p.rhs
    if rho == 1:
        rhs_bar = f
    else:
        scale = rho ** (-alpha)
        inv_rho = 1.0 / rho

        def rhs_bar(t, x):
            return scale * f(t**inv_rho, x)

    return CaputoIVP(
        alpha=alpha,
        a_bar=p.a**rho,
        T_bar=p.T**rho,
        init_bar=tuple(rho ** (-k) * ak for k, ak in enumerate(p.init)),
        rhs_bar=rhs_bar,
        u_independent=p.u_independent,
    )


def pull_back(values_bar, mesh: GradedMesh, scheme_id: str = "", diagnostics: Sequence[int] = ()) -> Solution:
    """Pair transformed-coordinate values with the original graded nodes.

    No interpolation happens: ``values_bar[i]`` approximates
    ``u_bar(nodes_bar[i])`` which is ``u(nodes[i])``.
    """
    values = np.asarray(values_bar, dtype=float)
    if values.shape != mesh.nodes_bar.shape:
        raise DomainError(f"got {values.size} values for {mesh.N + 1} mesh nodes")
    return Solution(mesh=mesh, values=values, scheme_id=scheme_id, diagnostics=tuple(diagnostics))


@dataclass(frozen=True, eq=False)
class LambdaTable:
    """Coefficients expanding ``(t^(1-rho) d/dt)^n`` into plain derivatives.

    ``entries[i, j]`` holds lambda_{i,j}; rows and columns 0 are padding.
    """

    n: int
    rho: float
    entries: np.ndarray

    def __getitem__(self, ij: tuple[int, int]) -> float:
        i, j = ij
        if i < 1 or j < 1 or i > j or j > self.n:
            return 0.0
        return float(self.entries[i, j])


def lambda_table(n: int, rho: float) -> LambdaTable:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    lam = np.zeros((n + 1, n + 1))
    for j in range(1, n + 1):
        lam[j, j] = 1.0
        for i in range(1, j):
            lam[i, j] = lam[i - 1, j - 1] + (i - (j - 1) * rho) * lam[i, j - 1]
    lam.setflags(write=False)
    return LambdaTable(n=n, rho=rho, entries=lam)


def apply_gamma_n(derivs, t, table: LambdaTable):
    """``(gamma^n u)(t) = sum_i lambda_{i,n} t^(i - n rho) u^(i)(t)``.

    ``derivs[i-1]`` is the i-th derivative of ``u`` at ``t``; ``t`` and the
    derivatives may be arrays of matching shape.
    """
    n, rho = table.n, table.rho
    if len(derivs) < n:
        raise DomainError(f"need {n} derivatives, got {len(derivs)}")
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise DomainError("gamma operator needs t >= 0")
    total = np.zeros(np.broadcast(t_arr, np.asarray(derivs[0], dtype=float)).shape)
    for i in range(1, n + 1):
        coef = table[i, n]
        if coef == 0.0:
            continue
        expo = i - n * rho
        if expo < 0 and np.any(t_arr == 0):
            raise SingularityError(f"t^{expo:g} is singular at t = 0")
        total = total + coef * t_arr**expo * np.asarray(derivs[i - 1], dtype=float)
    return float(total) if total.ndim == 0 else total
