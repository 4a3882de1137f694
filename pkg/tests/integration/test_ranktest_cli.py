# tests/integration/test_ranktest_cli.py
from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from src.cli import ranktest_cli
from src.cli.ranktest_cli import main
from src.core.rankstats import read_null_table
from src.schemas.models import TestReport as Report

REPO_ROOT = Path(__file__).resolve().parents[2]

pytestmark = pytest.mark.integration


@pytest.fixture
def samples(tmp_path: Path) -> tuple[Path, Path]:
    out = tmp_path / "data"
    assert main(["generate", "L1minus", "--d", "4", "--epsilon", "2.0", "--n", "30", "--m", "20", "--seed", "7", "--out", str(out)]) == 0
    return out / "X.csv", out / "Y.csv"


def test_tabulate_prints_the_support(capsys) -> None:
    assert main(["tabulate", "2", "2", "mww", "exact"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert (payload["n"], payload["m"], payload["phi"], payload["method"]) == (2, 2, "mww", "exact")
    assert [s["value"] for s in payload["support"]] == pytest.approx([-0.2, -0.1, 0.0, 0.1, 0.2])
    assert [s["probability"] for s in payload["support"]] == pytest.approx([1 / 6, 1 / 6, 2 / 6, 1 / 6, 1 / 6])


def test_tabulate_writes_a_table_file(tmp_path: Path) -> None:
    path = tmp_path / "t.ntab"
    assert main(["tabulate", "4", "3", "power:2", "montecarlo", "--draws", "5000", "--seed", "3", "--out", str(path)]) == 0
    table = read_null_table(path)
    assert (table.n, table.m, table.method, table.draws, table.seed) == (4, 3, "montecarlo", 5000, 3)


def test_generate_writes_samples_and_sidecars(samples: tuple[Path, Path], capsys) -> None:
    x_csv, y_csv = samples
    assert x_csv.read_text(encoding="utf-8").splitlines()[0] == "x1,x2,x3,x4"
    assert len(y_csv.read_text(encoding="utf-8").splitlines()) == 21
    meta = json.loads((x_csv.parent / "X.csv.meta.json").read_text(encoding="utf-8"))
    assert meta["seed"] == 7 and meta["model"]["epsilon"] == 2.0


def test_generate_without_header(tmp_path: Path) -> None:
    assert main(["generate", "T1", "--n", "3", "--m", "3", "--no-header", "--out", str(tmp_path)]) == 0
    assert len((tmp_path / "X.csv").read_text(encoding="utf-8").splitlines()) == 3


def test_rank_test_on_csv_files(samples: tuple[Path, Path], tmp_path: Path) -> None:
    out = tmp_path / "report.json"
    x_csv, y_csv = samples
    assert main(["test", str(x_csv), str(y_csv), "--phi", "rtb:0.8", "--seed", "7", "--out", str(out)]) == 0
    report = Report.from_json(out.read_text(encoding="utf-8"))
    assert report.method == "rlinear"
    assert report.phi == "rtb:0.8"
    assert (report.n_train, report.m_train, report.n_test, report.m_test) == (24, 16, 6, 4)
    assert report.seed == 7


@pytest.mark.parametrize(
    ("method", "expected"),
    [("roc", "roc-sup"), ("mmd", "mmd"), ("energy", "energy"), ("fr", "fr"), ("tukey", "tukey")],
)
def test_every_method_is_reachable(samples: tuple[Path, Path], capsys, method: str, expected: str) -> None:
    x_csv, y_csv = samples
    assert main(["test", str(x_csv), str(y_csv), "--method", method, "--b-perm", "19"]) == 0
    report = Report.from_json(capsys.readouterr().out)
    assert report.method == expected
    assert 0.0 <= report.p_value <= 1.0


def test_experiment_writes_requested_formats(tmp_path: Path, capsys) -> None:
    cfg = {
        "name": "cli",
        "models": [{"variant": "L1minus", "dims": [4], "epsilons": [0.0, 1.0]}],
        "methods": ["rlinear", "energy"],
        "N": 40,
        "replications": 2,
        "alphas": [0.05, 0.5],
        "b_perm": 19,
        "train": {"epochs": 5},
    }
    path = tmp_path / "cli.json"
    path.write_text(json.dumps(cfg), encoding="utf-8")
    out = tmp_path / "out"
    assert main(["experiment", str(path), "--out", str(out), "--formats", "csv,json"]) == 0
    assert sorted(p.name for p in out.iterdir()) == ["cli.json", "cli_power.csv", "cli_pvalues.csv"]
    assert "Wrote" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["test", "missing_x.csv", "missing_y.csv"],
        ["generate", "L1minus", "--d", "5"],
        ["tabulate", "3", "3", "spline:2", "exact"],
        ["experiment", "nowhere.toml"],
    ],
)
def test_invalid_input_exits_with_two(argv: list[str], capsys, tmp_path: Path, monkeypatch) -> None:
    monkeypatch.chdir(tmp_path)
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("error: ")


def test_bad_alpha_exits_with_two(samples: tuple[Path, Path], capsys) -> None:
    x_csv, y_csv = samples
    assert main(["test", str(x_csv), str(y_csv), "--alpha", "1.5"]) == 2
    assert "alpha" in capsys.readouterr().err


def test_runtime_failure_exits_with_one(tmp_path: Path, capsys) -> None:
    assert main(["generate", "L1plus", "--d", "4", "--out", str(tmp_path)]) == 1
    assert "positive definite" in capsys.readouterr().err


def test_unknown_output_format_is_an_argument_error(tmp_path: Path) -> None:
    with pytest.raises(SystemExit) as e:
        main(["experiment", str(tmp_path / "x.toml"), "--formats", "csv,pdf"])
    assert e.value.code == 2


def test_main_module_entry_point() -> None:
    r = subprocess.run(
        [sys.executable, str(REPO_ROOT / "main.py"), "tabulate", "1", "1", "mww", "exact"],
        capture_output=True,
        text=True,
        cwd=REPO_ROOT,
    )
    assert r.returncode == 0, r.stderr
    support = json.loads(r.stdout)["support"]
    assert [s["value"] for s in support] == pytest.approx([-1 / 6, 1 / 6])
    assert [s["probability"] for s in support] == pytest.approx([0.5, 0.5])


@pytest.mark.parametrize(
    ("exc", "code", "prefix"),
    [
        (np.linalg.LinAlgError("matrix is singular"), 1, "error: LinAlgError"),
        (ValueError("bad shape"), 2, "error: ValueError"),
        (PermissionError("read-only directory"), 2, "error: PermissionError"),
    ],
)
def test_foreign_exceptions_map_to_exit_codes(monkeypatch, capsys, exc: Exception, code: int, prefix: str) -> None:
    def _boom(args):
        raise exc

    monkeypatch.setitem(ranktest_cli._COMMANDS, "tabulate", _boom)
    assert main(["tabulate", "2", "2", "mww", "exact"]) == code
    assert capsys.readouterr().err.startswith(prefix)
