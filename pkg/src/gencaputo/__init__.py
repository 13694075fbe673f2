"""Solvers for fractional initial-value problems with the generalized Caputo derivative."""

from __future__ import annotations

from .core import (
    CaputoIVP,
    ConvergenceReport,
    GeneralizedIVP,
    GradedMesh,
    Solution,
    build_graded_mesh,
    check_hypothesis,
    linf_error,
)
from .errors import (
    ConvergenceError,
    DomainError,
    EvaluationError,
    ExpressionError,
    HypothesisError,
    PoleError,
    SingularityError,
    TruncationError,
)
from .operators import QuadratureSpec, gen_caputo_derivative, gen_integral
from .schemes import solve_almeida, solve_euler_trap, solve_l1, solve_l2_1sigma
from .series import SeriesProblem, eval_series, series_solve
from .special import beta, gamma, log_gamma, mittag_leffler
from .transform import apply_gamma_n, lambda_table, pull_back, to_equivalent

__version__ = "0.1.0"
