# src/harness/runner.py
"""
Monte-Carlo power study.

Replication r draws fresh data per model from the seed derived from (master seed, r); every
method of that replication sees the same data. Jobs (model, replication) can run in worker
processes; results are reduced in job order, so the report does not depend on the worker
count. A failing method is recorded in its own cell and never stops the run.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import repeat

import numpy as np

from src.core.baselines import energy_test, fr_test, mmd_test, tukey_depth_test
from src.core.errors import RankTestError, error_guard
from src.core.rankstats.generators import ScoreGenerator
from src.core.rankstats.null_table import null_distribution
from src.core.ranker.models import ScoringModel
from src.core.rng import PRNG_NAME, derive_seed
from src.core.twostage import SplitSamples, fit_ranker, rank_decision, rank_test_on_scores, score_holdout, split_samples
from src.schemas.models import (
    RANKING_METHODS,
    CellResult,
    DepthConfig,
    ExperimentConfig,
    ExperimentReport,
    ModelSpec,
    PermutationScheme,
    RankerSpec,
    Sidedness,
    SplitConfig,
    TestReport,
)
from src.synthdata import generate, oracle_scorer, resolve_scale_oracle_sign

logger = logging.getLogger(__name__)

PAIRING = "per-replication data shared by all methods"

CellKey = tuple[int, str, str | None]


@dataclass(frozen=True)
class CellOutcome:
    """One replication's result for one (model, method, φ) cell."""

    key: CellKey
    p_value: float | None = None
    decisions: tuple[bool, ...] = ()
    error: str | None = None


def replication_seed(master: int, r: int) -> int:
    return derive_seed(master, "replication", r)


def model_specs(cfg: ExperimentConfig) -> list[ModelSpec]:
    return [spec for grid in cfg.models for spec in grid.specs()]


def cell_keys(cfg: ExperimentConfig, n_specs: int) -> list[CellKey]:
    """Cells in report order: model, then method, then φ for rank-based methods."""
    keys: list[CellKey] = []
    for i in range(n_specs):
        for method in cfg.methods:
            if method in RANKING_METHODS or method == "tukey":
                keys.extend((i, method, phi) for phi in cfg.phis)
            else:
                keys.append((i, method, None))
    return keys


def _rank_outcome(key: CellKey, report: TestReport, phi: ScoreGenerator, cfg: ExperimentConfig, sided: Sidedness) -> CellOutcome:
    table = null_distribution(report.n_test, report.m_test, phi, cfg.null_method)
    decisions = tuple(rank_decision(table, report.statistic_centered, a, sided)[2] for a in cfg.alphas)
    return CellOutcome(key, report.p_value, decisions)


def _permutation_outcome(key: CellKey, report: TestReport, cfg: ExperimentConfig) -> CellOutcome:
    return CellOutcome(key, report.p_value, tuple(report.p_value <= a for a in cfg.alphas))


def _scorer(method: str, spec: ModelSpec, parts: SplitSamples, cfg: ExperimentConfig, phi: ScoreGenerator, seed: int) -> ScoringModel:
    if method == "roracle":
        sign = resolve_scale_oracle_sign(spec, parts.x_train, parts.y_train)
        return oracle_scorer(spec, sign)
    ranker = RankerSpec(name=method[1:], train=cfg.train.model_copy(update={"seed": derive_seed(seed, method)}))
    model, notes = fit_ranker(ranker, parts.x_train, parts.y_train, phi)
    for note in notes:
        logger.warning("%s on %s: %s", method, spec.descriptor, note)
    return model


def _ranking_cells(
    i: int, method: str, spec: ModelSpec, parts: SplitSamples, cfg: ExperimentConfig, phis: Sequence[ScoreGenerator], seed: int
) -> list[CellOutcome]:
    out: list[CellOutcome] = []
    model: ScoringModel | None = None
    for phi in phis:
        key = (i, method, phi.descriptor)
        try:
            with error_guard():
                # only the smoothed W_φ trainer depends on φ
                if model is None or method == "rwphi":
                    model = _scorer(method, spec, parts, cfg, phi, seed)
                sx, sy = score_holdout(model, parts)
                report = rank_test_on_scores(sx, sy, phi, cfg.table_alpha, method_name=method, quantile_method=cfg.null_method)
                out.append(_rank_outcome(key, report, phi, cfg, "upper"))
        except RankTestError as exc:
            out.append(_failed(key, spec, exc))
    return out


def _baseline_cells(
    i: int, method: str, spec: ModelSpec, x: np.ndarray, y: np.ndarray, cfg: ExperimentConfig, phis: Sequence[ScoreGenerator], seed: int
) -> list[CellOutcome]:
    if method == "tukey":
        out = []
        depth = DepthConfig(directions=cfg.depth_directions, seed=derive_seed(seed, "tukey"))
        for phi in phis:
            key = (i, method, phi.descriptor)
            try:
                with error_guard():
                    report = tukey_depth_test(x, y, phi, cfg.table_alpha, depth, quantile_method=cfg.null_method)
                    out.append(_rank_outcome(key, report, phi, cfg, "two-sided"))
            except RankTestError as exc:
                out.append(_failed(key, spec, exc))
        return out

    key = (i, method, None)
    scheme = PermutationScheme(b_perm=cfg.b_perm, seed=derive_seed(seed, method))
    try:
        with error_guard():
            if method == "mmd":
                report = mmd_test(x, y, cfg.table_alpha, scheme, cfg.mmd_bandwidth)
            elif method == "energy":
                report = energy_test(x, y, cfg.table_alpha, scheme)
            else:
                report = fr_test(x, y, cfg.table_alpha, scheme)
    except RankTestError as exc:
        return [_failed(key, spec, exc)]
    return [_permutation_outcome(key, report, cfg)]


def _failed(key: CellKey, spec: ModelSpec, err: RankTestError) -> CellOutcome:
    logger.warning("%s %s failed on %s: %s", key[1], key[2] or "", spec.descriptor, err)
    return CellOutcome(key, error=f"{type(err).__name__}: {err}")


def run_replication(cfg: ExperimentConfig, job: tuple[int, int]) -> list[CellOutcome]:
    """All cells of model ``job[0]`` for replication ``job[1]``."""
    i, r = job
    spec = model_specs(cfg)[i]
    phis = [ScoreGenerator.parse(s) for s in cfg.phis]
    seed = replication_seed(cfg.master_seed, r)
    methods = cfg.methods
    try:
        with error_guard():
            xs, ys = generate(spec, cfg.n, cfg.m, seed)
            x, y = xs.values, ys.values
            parts = None
            if any(m in RANKING_METHODS for m in methods):
                parts = split_samples(x, y, SplitConfig(train_fraction=cfg.split_fraction, seed=derive_seed(seed, "split")))
    except RankTestError as exc:
        return [_failed(key, spec, exc) for key in cell_keys(cfg, len(model_specs(cfg))) if key[0] == i]

    out: list[CellOutcome] = []
    for method in methods:
        if method in RANKING_METHODS:
            assert parts is not None
            out.extend(_ranking_cells(i, method, spec, parts, cfg, phis, seed))
        else:
            out.extend(_baseline_cells(i, method, spec, x, y, cfg, phis, seed))
    return out


def summarize(key: CellKey, spec: ModelSpec, outcomes: Sequence[CellOutcome], alphas: Sequence[float]) -> CellResult:
    """Rejection frequency f per α with 2·√(f(1−f)/B) and √(f(1−f)) over successful replications."""
    ok = [o for o in outcomes if o.error is None]
    cell = CellResult(
        model=spec.descriptor,
        variant=spec.variant,
        d=spec.dim,
        epsilon=spec.epsilon,
        method=key[1],
        phi=key[2],
        replications=len(ok),
        alphas=list(alphas),
        p_values=[float(o.p_value) for o in ok if o.p_value is not None],
        errors=[o.error for o in outcomes if o.error is not None],
    )
    if not ok or not alphas:
        return cell
    freq = np.mean(np.array([o.decisions for o in ok], dtype=np.float64), axis=0)
    var = freq * (1.0 - freq)
    return cell.model_copy(
        update={
            "rejection": [float(f) for f in freq],
            "half_width": [float(h) for h in 2.0 * np.sqrt(var / len(ok))],
            "sd": [float(s) for s in np.sqrt(var)],
        }
    )


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Run every (model, method, φ) cell over ``cfg.replications`` replications."""
    started = time.perf_counter()
    specs = model_specs(cfg)
    jobs = [(i, r) for r in range(cfg.replications) for i in range(len(specs))]
    logger.info("experiment %r: %d models x %d replications, %d workers", cfg.name, len(specs), cfg.replications, cfg.workers)

    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(run_replication, repeat(cfg), jobs, chunksize=max(1, len(jobs) // (4 * cfg.workers))))
    else:
        results = [run_replication(cfg, job) for job in jobs]

    by_cell: dict[CellKey, list[CellOutcome]] = {key: [] for key in cell_keys(cfg, len(specs))}
    for batch in results:
        for outcome in batch:
            by_cell[outcome.key].append(outcome)

    cells = [summarize(key, specs[key[0]], outs, cfg.alphas) for key, outs in by_cell.items()]
    failed = [c for c in cells if c.errors]
    warnings = [f"{' '.join(filter(None, (c.method, c.phi)))} on {c.model}: {len(c.errors)} failed replication(s)" for c in failed]
    report = ExperimentReport(
        name=cfg.name,
        config=cfg.model_dump(mode="json"),
        prng=PRNG_NAME,
        pairing=PAIRING,
        replication_seeds=[replication_seed(cfg.master_seed, r) for r in range(cfg.replications)],
        cells=cells,
        partial=bool(failed),
        warnings=warnings,
        wall_clock_seconds=time.perf_counter() - started,
    )
    logger.info("experiment %r finished in %.1fs (%d cells, partial=%s)", cfg.name, report.wall_clock_seconds, len(cells), report.partial)
    return report


__all__ = ["CellOutcome", "PAIRING", "replication_seed", "model_specs", "cell_keys", "run_replication", "summarize", "run_experiment"]
