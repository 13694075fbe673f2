"""Convergence studies over (alpha, rho, N) grids and their CSV/SVG reports."""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import plotting
from .core import ConvergenceReport, Solution, build_graded_mesh, linf_error
from .errors import DomainError
from .problems import example4, example5, get_example
from .reference_tables import NS, RHO_5LN2_4, RHO_PI6
from .schemes import (
    DEFAULT_NONLINEAR,
    NonlinearSolveConfig,
    solve_almeida,
    solve_euler_trap,
    solve_l1,
    solve_l2_1sigma,
)
from .transform import pull_back

logger = logging.getLogger(__name__)

SCHEMES = ("l1", "l2sigma", "euler", "almeida")
DEFAULT_N_TRUNC = 10


class MissingClosedFormError(LookupError):
    pass


@dataclass(frozen=True)
class StudySpec:
    problem: str
    alphas: tuple[float, ...]
    rhos: tuple[float, ...]
    Ns: tuple[int, ...]
    scheme: str
    out_dir: Path | None = None
    problem_kwargs: dict = field(default_factory=dict)

    def __post_init__(self):
        if any(N < 2 for N in self.Ns):
            raise DomainError("every N must be >= 2")
        if any(b <= a for a, b in zip(self.Ns, self.Ns[1:])):
            raise DomainError("N list must be strictly increasing")
        if self.scheme not in SCHEMES:
            raise DomainError(f"unknown scheme {self.scheme!r}")


TABLE_STUDIES = {
    1: StudySpec("example1", (0.9, 0.5, 0.2), (0.9, RHO_PI6, 1 / 3), NS, "l1"),
    2: StudySpec("example2", (0.9, 0.5, 0.2), (RHO_5LN2_4, 1 / 6), NS, "l2sigma"),
    3: StudySpec("example3", (0.9, 0.75, 0.5), (0.9, 0.5, 0.05), NS, "euler"),
}

# expected asymptotic order per scheme, used for the guide slopes
_THEORY = {"l1": lambda a: 2 - a, "l2sigma": lambda a: 3 - a, "euler": lambda a: a, "almeida": lambda a: a}


def solve_example(ex, N: int, scheme: str, cfg: NonlinearSolveConfig = DEFAULT_NONLINEAR,
                  n_trunc: int = DEFAULT_N_TRUNC) -> Solution:
    """Run ``scheme`` on a registered example and return values on the graded mesh."""
    gen = ex.generalized
    mesh = build_graded_mesh(gen.a, gen.T, gen.rho, N)
    if scheme == "almeida":
        return solve_almeida(gen, n_trunc, mesh, cfg)
    diag: list[int] = []
    if scheme == "l1":
        values = solve_l1(ex.equivalent, N, cfg, diag)
    elif scheme == "l2sigma":
        values = solve_l2_1sigma(ex.equivalent, N, cfg, diag)
    elif scheme == "euler":
        values = solve_euler_trap(ex.equivalent, N)
    else:
        raise DomainError(f"unknown scheme {scheme!r}")
    return pull_back(values, mesh, scheme, diag)


def cell_label(problem: str, scheme: str, alpha: float, rho: float) -> str:
    return f"{problem}_{scheme}_alpha{alpha:g}_rho{rho:.6g}"


def run_convergence_study(spec: StudySpec) -> dict[tuple[float, float], ConvergenceReport]:
    """Errors and orders for every (alpha, rho) cell, in study order."""
    out = {}
    for rho in spec.rhos:
        for alpha in spec.alphas:
            ex = get_example(spec.problem, alpha, rho, **spec.problem_kwargs)
            if ex.exact is None:
                raise MissingClosedFormError(f"{spec.problem} has no closed-form solution")
            errors = []
            for N in spec.Ns:
                sol = solve_example(ex, N, spec.scheme)
                errors.append(linf_error(sol, ex.exact))
            label = cell_label(spec.problem, spec.scheme, alpha, rho)
            out[(alpha, rho)] = ConvergenceReport.from_errors(spec.Ns, errors, label)
            logger.info("%s: %s", label, ", ".join(f"{e:.4e}" for e in errors))
    return out


def run_hadamard_limit(rhos: Sequence[float], alpha: float = 0.5, T: float = 100.0, N: int = 256):
    """Sup-node error against ``log t`` of the L1 solution for each rho."""
    if any(r <= 0 for r in rhos):
        raise DomainError("rho values must be positive")
    rows = []
    for rho in rhos:
        ex = example5(alpha, rho, T)
        sol = solve_example(ex, N, "l1")
        rows.append((float(rho), linf_error(sol, ex.exact)))
    return rows


def compare_almeida_l1(N: int = 256, n_trunc: int = DEFAULT_N_TRUNC, **kwargs):
    """Both numerical solutions of the nonlinear example on the same graded nodes."""
    ex = example4(**kwargs)
    direct = solve_example(ex, N, "almeida", n_trunc=n_trunc)
    via_l1 = solve_example(ex, N, "l1")
    distance = float(np.max(np.abs(direct.values - via_l1.values)))
    return direct, via_l1, distance


def _fmt(x: float | None) -> str:
    return "" if x is None else repr(float(x))


def report_csv(report: ConvergenceReport) -> str:
    if not report.rows:
        raise DomainError("empty report")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["N", "error", "order"])
    for r in report.rows:
        w.writerow([r.N, _fmt(r.error), _fmt(r.order)])
    return buf.getvalue()


def emit_report(report: ConvergenceReport, format: str, path, ref_slopes: Sequence[float] = ()) -> Path:
    """Write a report as CSV (``N,error,order``) or as a log-log SVG figure."""
    if not report.rows:
        raise DomainError("empty report")
    path = Path(path)
    if format == "csv":
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(report_csv(report))
        return path
    if format == "svg":
        return plotting.convergence_figure(
            [r.N for r in report.rows], report.errors, path, ref_slopes, title=report.label
        )
    raise DomainError(f"unknown report format {format!r}")


def write_rows(path, header: Sequence[str], rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([v if isinstance(v, (int, str)) else _fmt(v) for v in row])
    return path


def run_table(number: int, out_dir) -> list[Path]:
    """Reproduce one of the three published tables: per-cell CSV + SVG and a summary CSV."""
    spec = TABLE_STUDIES[number]
    out_dir = Path(out_dir)
    reports = run_convergence_study(spec)
    written = []
    summary = []
    for (alpha, rho), rep in reports.items():
        stem = f"table{number}_alpha{alpha:g}_rho{rho:.4g}".replace(".", "p")
        written.append(emit_report(rep, "csv", out_dir / f"{stem}.csv"))
        written.append(emit_report(rep, "svg", out_dir / f"{stem}.svg", [_THEORY[spec.scheme](alpha)]))
        summary += [(alpha, rho, r.N, r.error, r.order) for r in rep.rows]
    written.append(write_rows(out_dir / f"table{number}.csv", ["alpha", "rho", "N", "error", "order"], summary))
    return written


def run_figure(number: int, out_dir, N: int = 256) -> list[Path]:
    out_dir = Path(out_dir)
    if number == 2:
        direct, via_l1, dist = compare_almeida_l1(N=N)
        logger.info("almeida vs L1 sup distance %.3e", dist)
        t = direct.mesh.nodes
        csv_path = write_rows(out_dir / "figure2.csv", ["t", "almeida", "l1"], zip(t, direct.values, via_l1.values))
        svg = plotting.overlay_figure(t, {"Almeida": direct.values, "L1 (transformed)": via_l1.values},
                                      out_dir / "figure2.svg", markers=("L1 (transformed)",))
        return [csv_path, svg]
    if number == 3:
        rhos = [10.0**-i for i in range(1, 8)]
        rows = run_hadamard_limit(rhos, 0.5, 100.0, N)
        csv_path = write_rows(out_dir / "figure3.csv", ["rho", "error"], rows)
        svg = plotting.error_vs_rho_figure([r for r, _ in rows], [e for _, e in rows], out_dir / "figure3.svg")
        return [csv_path, svg]
    if number == 4:
        ex = example5(0.5, 1e-7, 100.0)
        sol = solve_example(ex, N, "l1")
        t = sol.mesh.nodes
        exact = np.log(t)
        csv_path = write_rows(out_dir / "figure4.csv", ["t", "numerical", "log_t"], zip(t, sol.values, exact))
        svg = plotting.overlay_figure(t, {"log t": exact, "numerical": sol.values}, out_dir / "figure4.svg",
                                      markers=("numerical",))
        return [csv_path, svg]
    raise DomainError(f"no figure {number}; choose 2, 3 or 4")


def orders_from_errors(Ns: Sequence[int], errors: Sequence[float]) -> list[float | None]:
    return ConvergenceReport.from_errors(Ns, errors).orders


def max_relative_deviation(ours: Sequence[float], ref: Sequence[float]) -> float:
    return max(abs(a / b - 1) for a, b in zip(ours, ref) if b != 0) if ours else math.nan
