"""Problem definitions, graded meshes, solutions and error norms."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import DomainError, HypothesisError

Rhs = Callable[[float, float], float]


def order_count(alpha: float) -> int:
    """Number of initial conditions, ``floor(alpha) + 1``."""
    return math.floor(alpha) + 1


def check_hypothesis(alpha: float, rho: float, a: float) -> None:
    """Raise :class:`HypothesisError` unless ``rho`` is admissible at ``a``."""
    n = order_count(alpha)
    if not rho > 0:
        raise HypothesisError(f"rho must be positive, got {rho}")
    if a == 0 and rho > 1.0 / n:
        raise HypothesisError(f"with a = 0 and alpha = {alpha}, rho must satisfy rho <= 1/{n}; got {rho}")


@dataclass(frozen=True)
class GeneralizedIVP:
    """Initial-value problem for the generalized Caputo derivative.

    ``init[k]`` holds ``(gamma^k u)(a)`` where ``gamma = t^(1-rho) d/dt``.
    ``rhs_series`` optionally maps ``(j, k)`` to the coefficient of
    ``t^(rho*j/q) (u - a_0)^k`` in an expansion of the right-hand side.
    Set ``u_independent`` when ``rhs`` ignores ``u``.
    """

    alpha: float
    rho: float
    a: float
    T: float
    init: tuple[float, ...]
    rhs: Rhs
    rhs_series: Mapping[tuple[int, int], float] | None = None
    u_independent: bool = False

    def __post_init__(self):
        if not self.alpha > 0:
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        if not self.a >= 0:
            raise DomainError(f"a must be nonnegative, got {self.a}")
        if not self.T > self.a:
            raise DomainError(f"need T > a, got a={self.a}, T={self.T}")
        object.__setattr__(self, "init", tuple(float(v) for v in self.init))
        if len(self.init) != self.n:
            raise DomainError(f"expected {self.n} initial values for alpha={self.alpha}, got {len(self.init)}")
        check_hypothesis(self.alpha, self.rho, self.a)

    @property
    def n(self) -> int:
        return order_count(self.alpha)


@dataclass(frozen=True)
class CaputoIVP:
    """Standard Caputo problem on ``[a_bar, T_bar]``."""

    alpha: float
    a_bar: float
    T_bar: float
    init_bar: tuple[float, ...]
    rhs_bar: Rhs
    # rhs_bar ignores its second argument, so implicit steps are direct solves
    u_independent: bool = False

    def __post_init__(self):
        if not self.a_bar < self.T_bar:
            raise DomainError(f"need a_bar < T_bar, got {self.a_bar}, {self.T_bar}")
        object.__setattr__(self, "init_bar", tuple(float(v) for v in self.init_bar))
        if len(self.init_bar) != order_count(self.alpha):
            raise DomainError("init_bar length does not match floor(alpha) + 1")

    @property
    def n(self) -> int:
        return order_count(self.alpha)


@dataclass(frozen=True, eq=False)
class GradedMesh:
    """Uniform nodes in ``t^rho`` paired with their ``1/rho``-th root images."""

    rho: float
    nodes_bar: np.ndarray
    nodes: np.ndarray

    @property
    def N(self) -> int:
        return len(self.nodes_bar) - 1

    @property
    def step(self) -> float:
        return (self.nodes_bar[-1] - self.nodes_bar[0]) / self.N


def build_graded_mesh(a: float, T: float, rho: float, N: int) -> GradedMesh:
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    if not T > a:
        raise DomainError(f"need T > a, got a={a}, T={T}")
    if not rho > 0:
        raise DomainError(f"rho must be positive, got {rho}")
    a_bar, T_bar = a**rho, T**rho
    nodes_bar = a_bar + np.arange(N + 1) * ((T_bar - a_bar) / N)
    nodes_bar[-1] = T_bar
    if rho == 1:
        nodes = nodes_bar.copy()
    else:
        nodes = nodes_bar ** (1.0 / rho)
        nodes[0], nodes[-1] = a, T
    nodes_bar.setflags(write=False)
    nodes.setflags(write=False)
    return GradedMesh(rho=rho, nodes_bar=nodes_bar, nodes=nodes)


@dataclass(frozen=True, eq=False)
class Solution:
    mesh: GradedMesh
    values: np.ndarray
    scheme_id: str
    diagnostics: Sequence[int] = field(default_factory=tuple)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != self.mesh.nodes.shape:
            raise DomainError(f"{values.shape[0]} values for a mesh of {self.mesh.N + 1} nodes")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


def linf_error(sol: Solution, exact: Callable[[np.ndarray], np.ndarray]) -> float:
    """Maximum nodal error over ``nodes[1:]``; node 0 is excluded."""
    t = sol.mesh.nodes[1:]
    ref = np.asarray(exact(t), dtype=float)
    return float(np.max(np.abs(ref - sol.values[1:])))


@dataclass(frozen=True)
class ConvergenceRow:
    N: int
    error: float
    order: float | None


@dataclass(frozen=True)
class ConvergenceReport:
    """Errors and observed orders for one ``(alpha, rho, scheme)`` cell."""

    rows: tuple[ConvergenceRow, ...]
    label: str = ""

    def __post_init__(self):
        Ns = [r.N for r in self.rows]
        if any(b <= a for a, b in zip(Ns, Ns[1:])):
            raise DomainError("N values must be strictly increasing")
        if self.rows and self.rows[0].order is not None:
            raise DomainError("the first row carries no order")

    @classmethod
    def from_errors(cls, Ns: Sequence[int], errors: Sequence[float], label: str = "") -> "ConvergenceReport":
        rows = []
        for i, (N, e) in enumerate(zip(Ns, errors)):
            order = None if i == 0 else observed_order(errors[i - 1], e, Ns[i - 1], N)
            rows.append(ConvergenceRow(int(N), float(e), order))
        return cls(tuple(rows), label)

    @property
    def errors(self) -> list[float]:
        return [r.error for r in self.rows]

    @property
    def orders(self) -> list[float | None]:
        return [r.order for r in self.rows]


def observed_order(e_coarse: float, e_fine: float, N_coarse: int, N_fine: int) -> float | None:
    """``log(e_N / e_N') / log(N' / N)``; ``None`` when an error is not positive."""
    if e_coarse <= 0 or e_fine <= 0:
        return None
    return math.log(e_coarse / e_fine) / math.log(N_fine / N_coarse)
