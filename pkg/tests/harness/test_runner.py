# tests/harness/test_runner.py
from __future__ import annotations

import math

import numpy as np
import pytest

from src.core.rng import PRNG_NAME
from src.harness import CellOutcome, cell_keys, replication_seed, run_experiment, run_replication, summarize
from src.harness import runner
from src.harness.runner import PAIRING
from src.schemas.models import ModelGrid, ModelSpec, TrainConfig


def test_cell_order_is_model_then_method_then_phi(experiment_config) -> None:
    cfg = experiment_config(methods=["rlinear", "mmd", "tukey"], phis=["mww", "rtb:0.8"])
    assert cell_keys(cfg, 2) == [
        (0, "rlinear", "mww"),
        (0, "rlinear", "rtb:0.8"),
        (0, "mmd", None),
        (0, "tukey", "mww"),
        (0, "tukey", "rtb:0.8"),
        (1, "rlinear", "mww"),
        (1, "rlinear", "rtb:0.8"),
        (1, "mmd", None),
        (1, "tukey", "mww"),
        (1, "tukey", "rtb:0.8"),
    ]


def test_replication_seeds_are_stable_and_distinct() -> None:
    seeds = [replication_seed(11, r) for r in range(50)]
    assert len(set(seeds)) == 50
    assert seeds == [replication_seed(11, r) for r in range(50)]
    assert replication_seed(12, 0) != seeds[0]


def test_summary_frequencies_and_spreads() -> None:
    spec = ModelSpec(variant="L1minus", d=4, epsilon=0.1)
    key = (0, "rlinear", "mww")
    outcomes = [
        CellOutcome(key, 0.01, (True, False)),
        CellOutcome(key, 0.30, (False, False)),
        CellOutcome(key, 0.02, (True, True)),
        CellOutcome(key, 0.70, (False, True)),
        CellOutcome(key, error="ModelError: boom"),
    ]
    cell = summarize(key, spec, outcomes, [0.05, 0.5])
    assert cell.replications == 4
    assert cell.rejection == [0.5, 0.5]
    assert cell.half_width == pytest.approx([0.5, 0.5])
    assert cell.sd == pytest.approx([0.5, 0.5])
    assert cell.p_values == [0.01, 0.30, 0.02, 0.70]
    assert cell.errors == ["ModelError: boom"]
    assert (cell.model, cell.variant, cell.d, cell.epsilon, cell.phi) == (spec.descriptor, "L1minus", 4, 0.1, "mww")


def test_summary_of_a_fully_failed_cell_is_empty() -> None:
    key = (0, "mmd", None)
    cell = summarize(key, ModelSpec(variant="T1"), [CellOutcome(key, error="InvalidInput: x")], [0.05])
    assert cell.replications == 0
    assert cell.rejection == []


def test_tiny_experiment_end_to_end(experiment_config) -> None:
    cfg = experiment_config(methods=["rlinear", "roracle", "mmd", "energy", "fr", "tukey"])
    report = run_experiment(cfg)
    assert report.prng == PRNG_NAME
    assert report.pairing == PAIRING
    assert report.replication_seeds == [replication_seed(11, 0), replication_seed(11, 1)]
    assert [(c.method, c.phi) for c in report.cells] == [
        ("rlinear", "mww"),
        ("roracle", "mww"),
        ("mmd", None),
        ("energy", None),
        ("fr", None),
        ("tukey", "mww"),
    ]
    assert not report.partial, report.warnings
    for cell in report.cells:
        assert cell.replications == 2
        assert len(cell.rejection) == len(cell.half_width) == len(cell.sd) == 2
        assert all(0.0 <= p <= 1.0 for p in cell.p_values)
        # monotone in alpha
        assert cell.rejection[0] <= cell.rejection[1]
    assert report.config["N"] == 40


def test_runs_are_reproducible(experiment_config) -> None:
    cfg = experiment_config(methods=["rlinear", "energy"])
    assert run_experiment(cfg).cells == run_experiment(cfg).cells


def test_worker_count_does_not_change_the_report(experiment_config) -> None:
    cfg = experiment_config(methods=["rlinear", "fr"], replications=3)
    serial = run_experiment(cfg)
    parallel = run_experiment(cfg.model_copy(update={"workers": 2}))
    assert parallel.cells == serial.cells


def test_a_failing_method_is_isolated(experiment_config) -> None:
    cfg = experiment_config(models=[ModelGrid(variant="T1", epsilons=[0.5])], methods=["roracle", "energy"])
    report = run_experiment(cfg)
    oracle, energy = report.cells
    assert report.partial
    assert oracle.replications == 0
    assert len(oracle.errors) == 2
    assert all(e.startswith("NoClosedFormOracle") for e in oracle.errors)
    assert energy.replications == 2 and not energy.errors
    assert any("roracle" in w for w in report.warnings)


def test_unsupported_model_fails_every_cell_of_that_model(experiment_config) -> None:
    cfg = experiment_config(models=[ModelGrid(variant="L1plus", dims=[4])], methods=["rlinear", "mmd"])
    outcomes = run_replication(cfg, (0, 0))
    assert [o.key for o in outcomes] == [(0, "rlinear", "mww"), (0, "mmd", None)]
    assert all(o.error and o.error.startswith("ModelError") for o in outcomes)


def test_every_phi_gets_a_cell_for_the_smoothed_ranker(experiment_config) -> None:
    cfg = experiment_config(methods=["rwphi"], phis=["mww", "power:2"])
    outcomes = run_replication(cfg, (0, 1))
    assert [o.key[2] for o in outcomes] == ["mww", "power:2.0"]
    assert all(o.error is None for o in outcomes)


def test_smoothed_ranker_refuses_the_rtb_generator(experiment_config) -> None:
    cfg = experiment_config(methods=["rwphi"], phis=["mww", "rtb:0.8"])
    mww, rtb = run_replication(cfg, (0, 0))
    assert mww.error is None
    assert rtb.error is not None and rtb.error.startswith("UnsupportedGenerator")


def test_foreign_numerical_errors_are_recorded_as_typed_failures(experiment_config, monkeypatch) -> None:
    def _broken(*args, **kwargs):
        raise np.linalg.LinAlgError("singular matrix")

    monkeypatch.setattr(runner, "energy_test", _broken)
    cfg = experiment_config(methods=["rlinear", "energy"])
    linear, energy = run_replication(cfg, (0, 0))
    assert linear.error is None
    assert energy.error == "ModelError: LinAlgError: singular matrix"


@pytest.mark.slow
def test_linear_ranking_test_holds_its_level_under_the_null(experiment_config) -> None:
    reps = 400
    cfg = experiment_config(
        models=[ModelGrid(variant="L1minus", dims=[6], epsilons=[0.0])],
        methods=["rlinear"],
        N=400,
        replications=reps,
        alphas=[0.05],
        train=TrainConfig(),
        workers=4,
    )
    (cell,) = run_experiment(cfg).cells
    se = math.sqrt(0.05 * 0.95 / reps)
    assert 0.05 - 3 * se <= cell.rejection[0] <= 0.05 + 3 * se


@pytest.mark.slow
def test_linear_ranking_test_detects_a_small_location_shift(experiment_config) -> None:
    cfg = experiment_config(
        models=[ModelGrid(variant="L1minus", dims=[6], epsilons=[0.12])],
        methods=["rlinear"],
        N=800,
        replications=50,
        alphas=[0.05],
        train=TrainConfig(),
        workers=4,
    )
    (cell,) = run_experiment(cfg).cells
    assert cell.rejection[0] >= 0.70


@pytest.mark.slow
def test_linear_ranking_power_grows_with_the_shift(experiment_config) -> None:
    reps = 100
    cfg = experiment_config(
        models=[ModelGrid(variant="L1minus", dims=[6], epsilons=[0.0, 0.05, 0.1, 0.3])],
        methods=["rlinear"],
        N=400,
        replications=reps,
        alphas=[0.05],
        train=TrainConfig(),
        workers=4,
    )
    cells = sorted(run_experiment(cfg).cells, key=lambda c: c.epsilon)
    assert [c.epsilon for c in cells] == [0.0, 0.05, 0.1, 0.3]
    power = [c.rejection[0] for c in cells]
    for low, high in zip(power, power[1:]):
        se = math.sqrt((low * (1 - low) + high * (1 - high)) / reps)
        assert high >= low - 2 * se
    assert power[-1] > power[0]


@pytest.mark.slow
def test_mlp_ranking_beats_tukey_depth_on_equicorrelation(experiment_config) -> None:
    cfg = experiment_config(
        models=[ModelGrid(variant="S2", dims=[10], epsilons=[0.2])],
        methods=["rmlp", "tukey"],
        N=2000,
        replications=30,
        alphas=[0.05],
        depth_directions=200,
        train=TrainConfig(epochs=200, learning_rate=0.02, augment_quadratic=True),
        workers=4,
    )
    report = run_experiment(cfg)
    assert not report.partial, report.warnings
    mlp, tukey = report.cells
    assert (mlp.method, tukey.method) == ("rmlp", "tukey")
    assert mlp.rejection[0] >= tukey.rejection[0] + 0.3
