from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest

from gencaputo.errors import ConvergenceError, DomainError, PoleError
from gencaputo.special import (
    Tolerance,
    beta,
    gamma,
    gamma_ratio,
    gamma_sign,
    log_gamma,
    mittag_leffler,
)

mpmath.mp.dps = 40


def ml_oracle(alpha, beta_, z, terms=400):
    """High-precision partial sum; plenty for |z| <= 10."""
    z = mpmath.mpf(z)
    return float(mpmath.fsum(z**k / mpmath.gamma(alpha * k + beta_) for k in range(terms)))


@pytest.mark.parametrize("x", [0.5, 0.7, 1.3, 2.5, 3.7, 10.1, 33.3, 99.9, 150.25, 171.5])
def test_gamma_matches_high_precision(x):
    ref = float(mpmath.gamma(x))
    assert gamma(x) == pytest.approx(ref, rel=2e-15)


@pytest.mark.parametrize("x", [-0.5, -1.5, -2.25, -7.9, 0.1, 0.01, 1e-8])
def test_gamma_reflection_region(x):
    assert gamma(x) == pytest.approx(float(mpmath.gamma(x)), rel=1e-13)


def test_gamma_integers_are_factorials():
    for n in range(1, 30):
        assert gamma(n) == float(math.factorial(n - 1))


def test_gamma_half():
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)


@pytest.mark.parametrize("x", [0.0, -1.0, -4.0])
def test_gamma_poles(x):
    with pytest.raises(PoleError):
        gamma(x)
    with pytest.raises(PoleError):
        log_gamma(x)


def test_gamma_overflow_and_nonfinite():
    with pytest.raises(OverflowError):
        gamma(172.0)
    with pytest.raises(DomainError):
        gamma(float("nan"))


def test_gamma_recurrence():
    rng = np.random.default_rng(7)
    for x in rng.uniform(-20, 160, 400):
        if abs(x - round(x)) < 1e-6 and x <= 0:
            continue
        assert gamma(x + 1) == pytest.approx(x * gamma(x), rel=1e-12)


@pytest.mark.parametrize("x", [0.3, 2.0, 17.5, 250.0, 1e4, -3.5])
def test_log_gamma(x):
    assert log_gamma(x) == pytest.approx(float(mpmath.log(abs(mpmath.gamma(x)))), rel=1e-13, abs=1e-14)


def test_gamma_sign_and_ratio():
    assert gamma_sign(-0.5) == -1.0
    assert gamma_sign(-1.5) == 1.0
    assert gamma_ratio(200.5, 200.0) == pytest.approx(float(mpmath.gamma(200.5) / mpmath.gamma(200)), rel=1e-12)
    assert gamma_ratio(-0.5, 0.5) == pytest.approx(-2.0, rel=1e-14)


def test_beta():
    assert beta(2.0, 3.0) == pytest.approx(1 / 12, rel=1e-15)
    assert beta(3.0, 2.0) == beta(2.0, 3.0)
    assert beta(150.0, 100.0) == pytest.approx(float(mpmath.beta(150, 100)), rel=1e-11)
    with pytest.raises(DomainError):
        beta(-1.0, 2.0)


def test_ml_elementary_cases():
    assert mittag_leffler(1, 1, 1) == pytest.approx(math.e, abs=1e-13)
    assert mittag_leffler(2, 1, 1) == pytest.approx(math.cosh(1), abs=1e-13)
    assert mittag_leffler(1, 1, -2.0) == pytest.approx(math.exp(-2.0), rel=1e-13)
    assert mittag_leffler(2, 1, -1.0) == pytest.approx(math.cos(1.0), rel=1e-13)
    # E_{1/2,1}(-z) = exp(z^2) erfc(z)
    assert mittag_leffler(0.5, 1, -0.5) == pytest.approx(math.exp(0.25) * math.erfc(0.5), rel=1e-13)


def test_ml_at_zero():
    assert mittag_leffler(0.7, 2.5, 0.0) == pytest.approx(1 / gamma(2.5), rel=1e-15)


@pytest.mark.parametrize("alpha,beta_", [(0.3, 1.0), (0.5, 2.5), (0.9, 0.9), (1.7, 1.2)])
@pytest.mark.parametrize("z", [-1.5, -0.4, 0.8, 2.5])
def test_ml_against_high_precision_series(alpha, beta_, z):
    assert mittag_leffler(alpha, beta_, z) == pytest.approx(ml_oracle(alpha, beta_, z), rel=1e-12, abs=1e-14)


def test_ml_refuses_cancelled_sums():
    # terms peak near 1e16 while the value is about -25
    with pytest.raises(ConvergenceError, match="cancels"):
        mittag_leffler(0.3, 1.0, -3.0)


def test_ml_on_large_positive_argument():
    assert mittag_leffler(0.8, 1.0, 20.0) == pytest.approx(ml_oracle(0.8, 1.0, 20.0, terms=2000), rel=1e-12)


def test_ml_argument_checks():
    with pytest.raises(DomainError):
        mittag_leffler(0.5, 1.0, 31.0)
    with pytest.raises(DomainError):
        mittag_leffler(-0.5, 1.0, 1.0)
    with pytest.raises(ConvergenceError):
        mittag_leffler(0.5, 1.0, 5.0, Tolerance(max_terms=3))


def test_tolerance_validation():
    with pytest.raises(DomainError):
        Tolerance(rel=0.0)
    with pytest.raises(DomainError):
        Tolerance(max_terms=0)


def test_ml_recurrence_randomized():
    rng = np.random.default_rng(11)
    for _ in range(300):
        a, b, z = rng.uniform(0.3, 2.0), rng.uniform(0.5, 3.0), rng.uniform(-1.0, 5.0)
        lhs = mittag_leffler(a, b, z)
        rhs = z * mittag_leffler(a, a + b, z) + 1 / gamma(b)
        assert abs(lhs - rhs) <= 10 * 1e-14 * max(abs(lhs), 1.0)


def test_beta_symmetry_is_exact():
    rng = np.random.default_rng(2)
    for x, y in rng.uniform(0.1, 120, (100, 2)):
        assert beta(x, y) == beta(y, x)
