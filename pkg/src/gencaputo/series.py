"""Generalized power-series solutions for rational orders ``alpha = p/q``.

With ``f(t, u) = sum f_jk t^(rho j/q) (u - a_0)^k`` analytic about
``(0, a_0)``, the solution on ``a = 0`` expands as
``u(t) = sum_i c_i t^(rho i/q)``. Matching powers in the Volterra form gives
a recursion: for ``i >= p``

    c_i = rho^(-alpha) Gamma((i-p)/q + 1) / Gamma(i/q + 1)
          * sum_{j + l = i - p} sum_k f_jk [w^l] (sum_{m>=1} c_m w^m)^k

and for ``i < p`` only the initial-value polynomial contributes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .core import check_hypothesis, order_count
from .errors import DomainError, TruncationError
from .special import gamma_ratio


@dataclass(frozen=True)
class SeriesProblem:
    """Inputs of the series recursion.

    ``f_jk`` maps ``(j, k)`` to coefficients; absent keys are zero. When
    ``coverage = (J, K)`` is given the table is only known for ``j <= J`` and
    ``k <= K`` and the recursion refuses to run past it.
    """

    p: int
    q: int
    rho: float
    f_jk: Mapping[tuple[int, int], float]
    init: tuple[float, ...]
    M: int
    coverage: tuple[int, int] | None = None

    def __post_init__(self):
        if self.p < 1 or self.q < 2:
            raise DomainError(f"need p >= 1 and q >= 2, got p={self.p}, q={self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise DomainError(f"p={self.p} and q={self.q} are not coprime")
        if self.M < 0:
            raise DomainError("M must be nonnegative")
        check_hypothesis(self.alpha, self.rho, 0.0)
        object.__setattr__(self, "init", tuple(float(v) for v in self.init))
        if len(self.init) != order_count(self.alpha):
            raise DomainError(f"expected {order_count(self.alpha)} initial values, got {len(self.init)}")
        table = {}
        for (j, k), v in self.f_jk.items():
            v = float(v)
            if not math.isfinite(v):
                raise DomainError(f"f_jk[{j},{k}] is not finite")
            if j < 0 or k < 0:
                raise DomainError(f"negative index in f_jk: ({j}, {k})")
            if v != 0.0:
                table[(int(j), int(k))] = v
        object.__setattr__(self, "f_jk", table)

    @property
    def alpha(self) -> float:
        return self.p / self.q


@dataclass(frozen=True, eq=False)
class SeriesSolution:
    coeffs: np.ndarray
    rho: float
    q: int
    meta: dict = field(default_factory=dict)


def series_solve(sp: SeriesProblem) -> SeriesSolution:
    p, q, rho, M = sp.p, sp.q, sp.rho, sp.M
    if sp.coverage is not None:
        J, K = sp.coverage
        need = max(M - p, 0)
        if J < need or K < need:
            raise TruncationError(f"f_jk coverage {sp.coverage} too small for M={M}; need j, k up to {need}")
    n = order_count(sp.alpha)
    c = np.zeros(M + 1)
    for i in range(min(p, M + 1)):
        if i % q == 0 and i // q < n:
            k = i // q
            c[i] = sp.init[k] / (math.factorial(k) * rho**k)

    k_max = max((k for _, k in sp.f_jk), default=0)
    by_j: dict[int, list[tuple[int, float]]] = {}
    for (j, k), v in sp.f_jk.items():
        by_j.setdefault(j, []).append((k, v))

    # powers[k][l]: coefficient of w^l in (sum_{m>=1} c_m w^m)^k, filled as l grows
    powers = np.zeros((k_max + 1, M + 1))
    powers[0, 0] = 1.0
    filled = 0
    scale = rho ** (-sp.alpha)
    for i in range(p, M + 1):
        top = i - p
        while filled < top:
            filled += 1
            l = filled
            for k in range(1, k_max + 1):
                # c_1..c_l times powers[k-1][l-1..0]
                powers[k, l] = float(np.dot(c[1 : l + 1], powers[k - 1, l - 1 :: -1][:l]))
        acc = 0.0
        for j in range(top + 1):
            terms = by_j.get(j)
            if not terms:
                continue
            l = top - j
            for k, v in terms:
                acc += v * powers[k, l]
        c[i] = scale * gamma_ratio(top / q + 1.0, i / q + 1.0) * acc
    return SeriesSolution(coeffs=c, rho=rho, q=q, meta={"p": p, "M": M})


def eval_series(s: SeriesSolution, t):
    """Horner evaluation in ``w = t^(rho/q)``; accepts scalars or arrays."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise DomainError("series evaluated at negative t")
    w = t_arr ** (s.rho / s.q)
    acc = np.zeros_like(w)
    for coef in s.coeffs[::-1]:
        acc = acc * w + coef
    return float(acc) if acc.ndim == 0 else acc
