from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np
import pytest

from gencaputo.cli import OUT_ENV, run
from gencaputo.special import gamma

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def read_csv(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array(rows[1:], dtype=float)


def test_ml_prints_e(capsys):
    assert run(["ml", "1", "1", "1"]) == 0
    assert capsys.readouterr().out.strip() == "2.718281828459045"


def test_solve_first_table_cell(tmp_path, capsys):
    assert run(["solve", str(CONFIGS / "example1.json"), "--scheme", "l1", "--N", "16", "--out", str(tmp_path)]) == 0
    header, data = read_csv(tmp_path / "example1_l1_N16.csv")
    assert header == ["t", "u"] and data.shape == (17, 2)
    rho, alpha = 0.9, 0.5
    c = rho**-alpha * gamma(1 + 2 / rho) / gamma(1 + 2 / rho + alpha)
    err = np.max(np.abs(data[1:, 1] - c * data[1:, 0] ** (rho * alpha + 2)))
    assert err == pytest.approx(7.6009e-3, rel=1e-4)
    assert "linf_error=7.6009" in capsys.readouterr().out


def test_solve_writes_one_file_per_N(tmp_path):
    assert run(["solve", str(CONFIGS / "example1.json"), "--out", str(tmp_path)]) == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == sorted(
        f"example1_l1_N{N}.csv" for N in (16, 32, 64, 128, 256))


def test_output_directory_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv(OUT_ENV, str(tmp_path / "env"))
    assert run(["solve", str(CONFIGS / "example4.json"), "--N", "32"]) == 0
    _, data = read_csv(tmp_path / "env" / "example4_almeida_N32.csv")
    assert data[0, 1] == 1.0 and np.all(np.isfinite(data))


def test_bench_table_two_blocks_identical(tmp_path):
    assert run(["bench", "--table", "2", "--out", str(tmp_path)]) == 0
    for alpha in ("0p9", "0p5", "0p2"):
        a = (tmp_path / f"table2_alpha{alpha}_rho0p8664.csv").read_text()
        b = (tmp_path / f"table2_alpha{alpha}_rho0p1667.csv").read_text()
        assert a == b


def test_bench_figure(tmp_path):
    assert run(["bench", "--figure", "3", "--N", "32", "--out", str(tmp_path)]) == 0
    header, data = read_csv(tmp_path / "figure3.csv")
    assert header == ["rho", "error"] and len(data) == 7


def test_eval_deriv(capsys):
    alpha, rho = 0.5, 0.9
    assert run(["eval-deriv", "--u", "(t^rho/rho)^2", "--alpha", str(alpha), "--rho", str(rho), "--t", "0.5", "1"]) == 0
    lines = capsys.readouterr().out.split()
    assert lines[0] == "t,derivative"
    for line in lines[1:]:
        t, v = map(float, line.split(","))
        ref = gamma(3) / gamma(3 - alpha) * (t**rho / rho) ** (2 - alpha)
        assert v == pytest.approx(ref, rel=1e-8)


def test_series_subcommand(tmp_path):
    assert run(["series", str(CONFIGS / "series_ml.json"), "--t", "0.25", "--out", str(tmp_path)]) == 0
    _, vals = read_csv(tmp_path / "series_ml_series_values.csv")
    assert vals[0, 1] == pytest.approx(math.exp(0.25) * math.erfc(0.5), rel=1e-10)
    header, coeffs = read_csv(tmp_path / "series_ml_series_coeffs.csv")
    assert header == ["i", "exponent", "coefficient"] and coeffs[0, 2] == 1.0


@pytest.mark.parametrize(
    "argv_tail,patch",
    [
        (["solve"], {"rhs": "t + * u"}),
        (["solve"], {"rho": 2.0}),
        (["series"], {}),
    ],
)
def test_failures_exit_nonzero(tmp_path, capsys, argv_tail, patch):
    cfg = json.loads((CONFIGS / "example1.json").read_text())
    cfg.update(patch)
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(cfg))
    assert run(argv_tail + [str(path), "--out", str(tmp_path / "o")]) == 1
    assert "error" in capsys.readouterr().err
    assert not (tmp_path / "o").exists()


def test_usage_errors():
    assert run([]) == 2
    assert run(["bench", "--table", "7"]) == 2
    assert run(["ml", "0.5", "1", "40"]) == 1
    assert run(["solve", "/nonexistent.json"]) == 1
