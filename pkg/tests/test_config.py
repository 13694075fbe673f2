from __future__ import annotations

import json
import math
from pathlib import Path

import pytest

from gencaputo.config import ConfigError, ProblemConfig, dumps, from_dict, load, loads, to_dict
from gencaputo.errors import DomainError, ExpressionError, HypothesisError

CONFIGS = Path(__file__).resolve().parents[1] / "configs"

BASE = {"alpha": 0.5, "rho": 0.9, "a": 0.0, "T": 1.0, "init": [0.0], "rhs": "t^2"}


def test_minimal_config_defaults():
    cfg = from_dict(BASE)
    assert cfg.scheme == "l1" and cfg.N == (64,) and cfg.exact is None
    ivp = cfg.to_ivp()
    assert ivp.u_independent
    assert ivp.rhs(2.0, 5.0) == 4.0


def test_expressions_see_problem_constants():
    cfg = from_dict({**BASE, "rhs": "rho*t + alpha", "exact": "T - a + t"})
    assert cfg.to_ivp().rhs(1.0, 0.0) == pytest.approx(1.4)
    assert cfg.exact_function()(2.0) == pytest.approx(3.0)


@pytest.mark.parametrize("name", sorted(p.name for p in CONFIGS.glob("*.json")))
def test_round_trip_of_shipped_configs(name):
    cfg = load(CONFIGS / name)
    again = loads(dumps(cfg))
    assert again == cfg
    assert to_dict(again) == to_dict(cfg)


def test_round_trip_keeps_lists_and_series():
    d = {**BASE, "N": [16, 32], "scheme": "almeida", "n_trunc": 7,
         "series": {"p": 1, "q": 2, "M": 12, "f_jk": [[0, 1, 2.5]]}}
    cfg = from_dict(d)
    assert cfg.N == (16, 32)
    assert from_dict(json.loads(dumps(cfg))) == cfg
    assert cfg.series_problem().f_jk == {(0, 1): 2.5}


@pytest.mark.parametrize(
    "patch,err",
    [
        ({"rho": 1.5}, HypothesisError),
        ({"alpha": 1.5, "init": [0.0, 0.0]}, HypothesisError),
        ({"init": [0.0, 1.0]}, DomainError),
        ({"rhs": "t + * u"}, ExpressionError),
        ({"rhs": "t + q"}, ExpressionError),
        ({"exact": "u"}, ConfigError),
        ({"scheme": "rk4"}, ConfigError),
        ({"N": 0}, ConfigError),
        ({"N": 2.5}, ConfigError),
        ({"alpha": "half"}, ConfigError),
        ({"extra": 1}, ConfigError),
        ({"rhs": 3}, ConfigError),
        ({"T": math.inf}, ConfigError),
    ],
)
def test_invalid_configs(patch, err):
    with pytest.raises(err):
        from_dict({**BASE, **patch})


def test_missing_keys_and_bad_json():
    with pytest.raises(ConfigError, match="missing"):
        from_dict({"alpha": 0.5})
    with pytest.raises(ConfigError):
        loads("{not json")
    with pytest.raises(ConfigError):
        loads("[1, 2]")
    with pytest.raises(ConfigError):
        from_dict({**BASE, "series": {"q": 2}})


def test_no_series_table():
    with pytest.raises(ConfigError):
        from_dict(BASE).series_problem()


def test_config_is_a_dataclass_value():
    assert isinstance(from_dict(BASE), ProblemConfig)
