"""Command-line entry point: ``gencaputo {solve,bench,eval-deriv,ml,series}``."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import bench
from .config import ConfigError, ProblemConfig, load
from .core import build_graded_mesh, linf_error, order_count
from .errors import ConvergenceError, DomainError, EvaluationError, ExpressionError, TruncationError
from .expr import compile_expression, differentiate, parse_expression
from .operators import gen_caputo_derivative
from .schemes import solve_almeida, solve_euler_trap, solve_l1, solve_l2_1sigma
from .series import eval_series, series_solve
from .special import mittag_leffler
from .transform import pull_back, to_equivalent

OUT_ENV = "GENCAPUTO_OUT"
logger = logging.getLogger("gencaputo")

_FAILURES = (DomainError, ExpressionError, EvaluationError, ConvergenceError, TruncationError, OSError,
             OverflowError, KeyError)


def _out_dir(flag: str | None) -> Path:
    return Path(flag or os.environ.get(OUT_ENV) or ".")


def _fmt(x: float) -> str:
    return repr(float(x))


def solve_config(cfg: ProblemConfig, scheme: str, N: int):
    p = cfg.to_ivp()
    mesh = build_graded_mesh(p.a, p.T, p.rho, N)
    if scheme == "almeida":
        return solve_almeida(p, cfg.n_trunc, mesh)
    eq = to_equivalent(p)
    diag: list[int] = []
    if scheme == "l1":
        values = solve_l1(eq, N, diagnostics=diag)
    elif scheme == "l2sigma":
        values = solve_l2_1sigma(eq, N, diagnostics=diag)
    else:
        values = solve_euler_trap(eq, N)
    return pull_back(values, mesh, scheme, diag)


def cmd_solve(args) -> int:
    cfg = load(args.config)
    scheme = args.scheme or cfg.scheme
    Ns = [args.N] if args.N else list(cfg.N)
    exact = cfg.exact_function()
    out = _out_dir(args.out)
    stem = Path(args.config).stem
    for N in Ns:
        sol = solve_config(cfg, scheme, N)
        path = out / f"{stem}_{scheme}_N{N}.csv"
        bench.write_rows(path, ["t", "u"], zip(sol.mesh.nodes, sol.values))
        line = f"{path}"
        if exact is not None:
            line += f"  linf_error={linf_error(sol, exact):.6e}"
        print(line)
    return 0


def cmd_bench(args) -> int:
    out = _out_dir(args.out)
    if args.table is not None:
        paths = bench.run_table(args.table, out)
    else:
        paths = bench.run_figure(args.figure, out, N=args.N)
    for p in paths:
        print(p)
    return 0


def cmd_eval_deriv(args) -> int:
    constants = {"alpha": args.alpha, "rho": args.rho, "a": args.a}
    u = parse_expression(args.u, constants)
    n = order_count(args.alpha)
    stack = []
    node = u
    for _ in range(n):
        node = differentiate(node, "t")
        stack.append(compile_expression(node))

    def derivs(s):
        s = np.asarray(s, dtype=float)
        return np.stack([np.broadcast_to(np.asarray(f(s, 0.0), dtype=float), s.shape) for f in stack])

    rows = [(t, gen_caputo_derivative(derivs, args.alpha, args.rho, args.a, t)) for t in args.t]
    if args.out:
        print(bench.write_rows(args.out, ["t", "derivative"], rows))
    else:
        print("t,derivative")
        for t, v in rows:
            print(f"{_fmt(t)},{_fmt(v)}")
    return 0


def cmd_ml(args) -> int:
    print(repr(mittag_leffler(args.alpha, args.beta, args.z)))
    return 0


def cmd_series(args) -> int:
    cfg = load(args.config)
    sp = cfg.series_problem()
    s = series_solve(sp)
    out = _out_dir(args.out)
    stem = Path(args.config).stem
    coeff_rows = [(i, i * s.rho / s.q, c) for i, c in enumerate(s.coeffs)]
    paths = [bench.write_rows(out / f"{stem}_series_coeffs.csv", ["i", "exponent", "coefficient"], coeff_rows)]
    if args.t:
        t = np.asarray(args.t, dtype=float)
        paths.append(bench.write_rows(out / f"{stem}_series_values.csv", ["t", "u"],
                                      zip(t, np.atleast_1d(eval_series(s, t)))))
    for p in paths:
        print(p)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gencaputo", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="solve a JSON-configured problem and write node/value CSV")
    sp.add_argument("config")
    sp.add_argument("--scheme", choices=bench.SCHEMES)
    sp.add_argument("--N", type=int)
    sp.add_argument("--out", help=f"output directory (default ${OUT_ENV} or .)")
    sp.set_defaults(func=cmd_solve)

    bp = sub.add_parser("bench", help="reproduce a convergence table or figure")
    g = bp.add_mutually_exclusive_group(required=True)
    g.add_argument("--table", type=int, choices=(1, 2, 3))
    g.add_argument("--figure", type=int, choices=(2, 3, 4))
    bp.add_argument("--N", type=int, default=256, help="mesh size for figures")
    bp.add_argument("--out", help=f"output directory (default ${OUT_ENV} or .)")
    bp.set_defaults(func=cmd_bench)

    dp = sub.add_parser("eval-deriv", help="generalized Caputo derivative of an expression u(t)")
    dp.add_argument("--u", required=True, help="expression in t")
    dp.add_argument("--alpha", type=float, required=True)
    dp.add_argument("--rho", type=float, required=True)
    dp.add_argument("--a", type=float, default=0.0)
    dp.add_argument("--t", type=float, nargs="+", required=True)
    dp.add_argument("--out", help="CSV file (default: stdout)")
    dp.set_defaults(func=cmd_eval_deriv)

    mp = sub.add_parser("ml", help="two-parameter Mittag-Leffler function")
    mp.add_argument("alpha", type=float)
    mp.add_argument("beta", type=float)
    mp.add_argument("z", type=float)
    mp.set_defaults(func=cmd_ml)

    rp = sub.add_parser("series", help="power-series solution from a config with a series table")
    rp.add_argument("config")
    rp.add_argument("--t", type=float, nargs="*", default=[])
    rp.add_argument("--out", help=f"output directory (default ${OUT_ENV} or .)")
    rp.set_defaults(func=cmd_series)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
    except _FAILURES as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
