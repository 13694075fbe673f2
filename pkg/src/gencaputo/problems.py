"""The worked examples used by the benchmark harness.

Each entry carries the generalized problem, its equivalent Caputo problem
written in simplified closed form (so that e.g. the second example is
literally independent of ``rho`` in the transformed variable) and, when
known, the exact solution in both coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import CaputoIVP, GeneralizedIVP
from .special import gamma, mittag_leffler

PROBLEM_IDS = ("example1", "example2", "example3", "example4", "example5")


@dataclass(frozen=True)
class PaperExample:
    name: str
    generalized: GeneralizedIVP
    equivalent: CaputoIVP
    exact: Callable[[np.ndarray], np.ndarray] | None = None
    exact_bar: Callable[[np.ndarray], np.ndarray] | None = None


def _ml_array(alpha, beta, z):
    z = np.asarray(z, dtype=float)
    return np.array([mittag_leffler(alpha, beta, float(v)) for v in z.ravel()]).reshape(z.shape)


def example1(alpha: float, rho: float, nu: float = 2.0) -> PaperExample:
    """Power-law forcing ``t^nu`` on ``[0, 1]`` with zero initial value."""
    c = rho ** (-alpha) * gamma(1 + nu / rho) / gamma(1 + nu / rho + alpha)
    gen = GeneralizedIVP(alpha, rho, 0.0, 1.0, (0.0,), lambda t, u: t**nu, u_independent=True)
    eq = CaputoIVP(alpha, 0.0, 1.0, (0.0,), lambda t, x: rho ** (-alpha) * t ** (nu / rho), u_independent=True)
    return PaperExample(
        "example1", gen, eq,
        exact=lambda t: c * np.asarray(t, dtype=float) ** (rho * alpha + nu),
        exact_bar=lambda s: c * np.asarray(s, dtype=float) ** (alpha + nu / rho),
    )


def example2(alpha: float, rho: float, m: int = 3) -> PaperExample:
    """Exact solution ``t^(rho m)``; the transformed problem does not involve rho."""
    k = gamma(1 + m) / gamma(1 + m - alpha)
    gen = GeneralizedIVP(alpha, rho, 0.0, 1.0, (0.0,),
                         lambda t, u: rho**alpha * k * t ** (rho * (m - alpha)), u_independent=True)
    eq = CaputoIVP(alpha, 0.0, 1.0, (0.0,), lambda t, x: k * t ** (m - alpha), u_independent=True)
    return PaperExample(
        "example2", gen, eq,
        exact=lambda t: np.asarray(t, dtype=float) ** (rho * m),
        exact_bar=lambda s: np.asarray(s, dtype=float) ** m,
    )


def example3(alpha: float, rho: float, a: float = 0.5, a0: float = -1.0, T: float = 1.0) -> PaperExample:
    """Linear problem whose solution combines two Mittag-Leffler functions."""
    a_bar = a**rho

    def exact_bar(s):
        x = np.maximum(np.asarray(s, dtype=float) - a_bar, 0.0)
        z = x**alpha
        return a0 * _ml_array(alpha, 1.0, z) + x ** (1 + alpha) * _ml_array(alpha, alpha + 2, z)

    gen = GeneralizedIVP(alpha, rho, a, T, (a0,), lambda t, u: rho**alpha * (u + t**rho - a_bar))
    eq = CaputoIVP(alpha, a_bar, T**rho, (a0,), lambda t, x: x + t - a_bar)
    return PaperExample(
        "example3", gen, eq,
        exact=lambda t: exact_bar(np.asarray(t, dtype=float) ** rho),
        exact_bar=exact_bar,
    )


def example4(alpha: float = 0.5, rho: float = 0.75, a: float = 0.25, T: float = 4.0, ua: float = 1.0) -> PaperExample:
    """Nonlinear forcing ``t sin u``; no closed-form solution."""
    gen = GeneralizedIVP(alpha, rho, a, T, (ua,), lambda t, u: t * math.sin(u))
    eq = CaputoIVP(alpha, a**rho, T**rho, (ua,), lambda t, x: rho ** (-alpha) * t ** (1 / rho) * math.sin(x))
    return PaperExample("example4", gen, eq)


def example5(alpha: float, rho: float, T: float = 100.0) -> PaperExample:
    """Small-rho approximation of a Caputo-Hadamard problem with solution ``log t``.

    ``exact`` is the Hadamard-limit solution ``log t``, not the exact
    solution for finite ``rho``.
    """
    g = gamma(2 - alpha)
    gen = GeneralizedIVP(alpha, rho, 1.0, T, (0.0,), lambda t, u: math.log(t) ** (1 - alpha) / g,
                         u_independent=True)
    eq = CaputoIVP(alpha, 1.0, T**rho, (0.0,), lambda t, x: math.log(t) ** (1 - alpha) / (rho * g),
                   u_independent=True)
    return PaperExample("example5", gen, eq, exact=lambda t: np.log(np.asarray(t, dtype=float)))


_FACTORIES = {
    "example1": example1,
    "example2": example2,
    "example3": example3,
    "example4": example4,
    "example5": example5,
}


def get_example(name: str, alpha: float, rho: float, **kwargs) -> PaperExample:
    try:
        factory = _FACTORIES[name]
    except KeyError:
        raise KeyError(f"unknown problem {name!r}; choose from {', '.join(PROBLEM_IDS)}") from None
    return factory(alpha=alpha, rho=rho, **kwargs)
