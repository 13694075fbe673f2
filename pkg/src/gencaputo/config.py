"""JSON problem descriptions.

Schema (keys marked ? are optional)::

    {
      "alpha": 0.5, "rho": 0.9, "a": 0.0, "T": 1.0,
      "init": [0.0],
      "rhs": "t^2",                 # expression in t and u
      "exact"?: "0.8*t^1.45",       # expression in t
      "scheme"?: "l1",              # l1 | l2sigma | euler | almeida
      "N"?: 64 | [16, 32, 64],
      "n_trunc"?: 10,               # truncation order for almeida
      "series"?: {"p": 1, "q": 2, "M": 20, "f_jk": [[j, k, value], ...]}
    }

Expressions may refer to ``alpha``, ``rho``, ``a`` and ``T``; those are
substituted as literals when the config is loaded.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .core import GeneralizedIVP
from .errors import DomainError
from .expr import compile_expression, parse_expression, variables
from .series import SeriesProblem

SCHEMES = ("l1", "l2sigma", "euler", "almeida")
_REQUIRED = ("alpha", "rho", "a", "T", "init", "rhs")
_KNOWN = set(_REQUIRED) | {"exact", "scheme", "N", "n_trunc", "series"}


class ConfigError(DomainError):
    pass


@dataclass(frozen=True)
class SeriesConfig:
    p: int
    q: int
    M: int
    f_jk: tuple[tuple[int, int, float], ...]


@dataclass(frozen=True)
class ProblemConfig:
    alpha: float
    rho: float
    a: float
    T: float
    init: tuple[float, ...]
    rhs: str
    exact: str | None = None
    scheme: str = "l1"
    N: tuple[int, ...] = (64,)
    n_trunc: int = 10
    series: SeriesConfig | None = None
    _compiled: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {self.scheme!r}; choose from {', '.join(SCHEMES)}")
        if not self.N or any(n < 1 for n in self.N):
            raise ConfigError("N must be a positive integer or a nonempty list of them")
        if self.n_trunc < 0:
            raise ConfigError("n_trunc must be nonnegative")
        for name in ("alpha", "rho", "a", "T"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite")
        # parse eagerly so that syntax errors surface at load time
        self._compiled["rhs"] = parse_expression(self.rhs, self.constants)
        if self.exact is not None:
            tree = parse_expression(self.exact, self.constants)
            if "u" in variables(tree):
                raise ConfigError("the exact-solution expression may only use t")
            self._compiled["exact"] = tree
        self.to_ivp()

    @property
    def constants(self) -> dict[str, float]:
        return {"alpha": self.alpha, "rho": self.rho, "a": self.a, "T": self.T}

    def to_ivp(self) -> GeneralizedIVP:
        tree = self._compiled["rhs"]
        f = compile_expression(tree)
        return GeneralizedIVP(self.alpha, self.rho, self.a, self.T, self.init, lambda t, u: float(f(t, u)),
                              u_independent="u" not in variables(tree))

    def exact_function(self):
        if "exact" not in self._compiled:
            return None
        f = compile_expression(self._compiled["exact"])
        return lambda t: f(t, 0.0) + 0.0 * t

    def series_problem(self) -> SeriesProblem:
        if self.series is None:
            raise ConfigError("config has no series table")
        s = self.series
        table = {(j, k): v for j, k, v in s.f_jk}
        return SeriesProblem(s.p, s.q, self.rho, table, self.init, s.M)


def _number(d: dict, key: str) -> float:
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{key!r} must be a number, got {v!r}")
    return float(v)


def _int(v, key: str) -> int:
    if isinstance(v, bool) or not isinstance(v, (int, float)) or float(v) != int(v):
        raise ConfigError(f"{key!r} must be an integer, got {v!r}")
    return int(v)


def from_dict(d: dict[str, Any]) -> ProblemConfig:
    if not isinstance(d, dict):
        raise ConfigError("config must be a JSON object")
    missing = [k for k in _REQUIRED if k not in d]
    if missing:
        raise ConfigError(f"missing keys: {', '.join(missing)}")
    unknown = set(d) - _KNOWN
    if unknown:
        raise ConfigError(f"unknown keys: {', '.join(sorted(unknown))}")
    init = d["init"]
    if not isinstance(init, list):
        init = [init]
    N = d.get("N", 64)
    Ns = tuple(_int(n, "N") for n in N) if isinstance(N, list) else (_int(N, "N"),)
    series = None
    if "series" in d:
        s = d["series"]
        try:
            f_jk = tuple((_int(j, "j"), _int(k, "k"), float(v)) for j, k, v in s.get("f_jk", []))
            series = SeriesConfig(_int(s["p"], "p"), _int(s["q"], "q"), _int(s.get("M", 20), "M"), f_jk)
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed series table: {exc}") from exc
    for key in ("rhs", "exact"):
        if key in d and not isinstance(d[key], str):
            raise ConfigError(f"{key!r} must be a string")
    return ProblemConfig(
        alpha=_number(d, "alpha"), rho=_number(d, "rho"), a=_number(d, "a"), T=_number(d, "T"),
        init=tuple(_number({"init": v}, "init") for v in init),
        rhs=d["rhs"], exact=d.get("exact"), scheme=d.get("scheme", "l1"), N=Ns,
        n_trunc=_int(d.get("n_trunc", 10), "n_trunc"), series=series,
    )


def to_dict(cfg: ProblemConfig) -> dict[str, Any]:
    d: dict[str, Any] = {
        "alpha": cfg.alpha, "rho": cfg.rho, "a": cfg.a, "T": cfg.T,
        "init": list(cfg.init), "rhs": cfg.rhs,
    }
    if cfg.exact is not None:
        d["exact"] = cfg.exact
    d["scheme"] = cfg.scheme
    d["N"] = cfg.N[0] if len(cfg.N) == 1 else list(cfg.N)
    d["n_trunc"] = cfg.n_trunc
    if cfg.series is not None:
        d["series"] = {"p": cfg.series.p, "q": cfg.series.q, "M": cfg.series.M,
                       "f_jk": [list(e) for e in cfg.series.f_jk]}
    return d


def loads(text: str) -> ProblemConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from exc
    return from_dict(data)


def dumps(cfg: ProblemConfig) -> str:
    return json.dumps(to_dict(cfg), indent=2)


def load(path) -> ProblemConfig:
    return loads(Path(path).read_text())
