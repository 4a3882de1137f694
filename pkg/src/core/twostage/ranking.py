# src/core/twostage/ranking.py
"""
The ranking-based two-sample rank test:

1. split each sample into a training part and a holdout part;
2. learn a scoring function on (X′, Y′);
3. score the holdout parts and compare the centered linear rank statistic of the scored
   X″ with the (n″, m″) null quantile, which does not depend on the scorer.
"""

from __future__ import annotations

import logging
import warnings
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt

from src.core.errors import DegenerateDataWarning, InvalidInput
from src.core.rankstats.generators import ScoreGenerator
from src.core.rankstats.null_table import (
    DEFAULT_EXACT_BUDGET,
    DEFAULT_MC_DRAWS,
    MethodRequest,
    NullTable,
    exceeds,
    lower_quantile,
    null_distribution,
    null_quantile,
)
from src.core.rankstats.statistics import linear_rank_statistic
from src.core.ranker.models import Array, ScoringModel
from src.core.ranker.registry import Trainer, get_trainer
from src.core.roc.curves import auc_pairwise
from src.core.twostage.combined import bonferroni_levels, combined_test
from src.core.twostage.split import SplitSamples, split_samples
from src.schemas.models import RankerSpec, Sidedness, SplitConfig, TestReport

logger = logging.getLogger(__name__)

RankerLike = RankerSpec | ScoringModel | Trainer


def check_alpha(alpha: float) -> None:
    if not (0.0 < alpha < 1.0):
        raise InvalidInput(f"alpha must be in (0, 1), got {alpha}")


def ranker_descriptor(ranker: RankerLike) -> str:
    if isinstance(ranker, RankerSpec):
        return ranker.descriptor
    if isinstance(ranker, ScoringModel):
        return f"r{getattr(ranker, 'label', ranker.kind)}"
    return f"r{getattr(ranker, '__name__', 'custom')}"


def fit_ranker(ranker: RankerLike, x_train: Array, y_train: Array, phi: ScoreGenerator) -> tuple[ScoringModel, list[str]]:
    """
    Step 1: a scoring model from the training halves, plus any degenerate-data messages.

    A ``ScoringModel`` passed in is used as is (fixed oracles); a ``RankerSpec`` goes through
    the trainer registry; any other callable is treated as a trainer.
    """
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DegenerateDataWarning)
        if isinstance(ranker, ScoringModel):
            model = ranker
        elif isinstance(ranker, RankerSpec):
            if ranker.name == "oracle":
                raise InvalidInput("the oracle ranker has no trainer; pass the fitted oracle model instead")
            model = get_trainer(ranker.name)(x_train, y_train, ranker.train, phi)
        else:
            model = ranker(x_train, y_train, RankerSpec().train, phi)
    notes = [str(w.message) for w in caught if issubclass(w.category, DegenerateDataWarning)]
    return model, notes


def rank_decision(table: NullTable, centered: float, alpha: float, sided: Sidedness = "upper") -> tuple[float | None, float | None, bool]:
    """
    (upper critical value, lower critical value, reject) of the rank test at level α; either
    critical value is None when the critical region has no such side.

    ``upper`` rejects iff centered > q(α); ``lower`` iff centered falls at or below the lower
    α quantile; ``two-sided`` iff centered > q(α/2) or it falls at or below the lower α/2 quantile.
    """
    if sided == "upper":
        q = null_quantile(table, alpha)
        return q, None, exceeds(centered, q)
    if sided == "two-sided":
        q = null_quantile(table, alpha / 2.0)
        lq = lower_quantile(table, alpha / 2.0)
        low = lq if np.isfinite(lq) else None
        return q, low, exceeds(centered, q) or (low is not None and not exceeds(centered, low))
    if sided == "lower":
        lq = lower_quantile(table, alpha)
        low = lq if np.isfinite(lq) else None
        return None, low, low is not None and not exceeds(centered, low)
    raise InvalidInput(f"unsupported sidedness {sided!r}")


def rank_test_on_scores(
    x_scores: npt.ArrayLike,
    y_scores: npt.ArrayLike,
    phi: ScoreGenerator,
    alpha: float,
    *,
    method_name: str = "rank",
    sided: Sidedness = "upper",
    quantile_method: MethodRequest = "auto",
    budget: int = DEFAULT_EXACT_BUDGET,
    draws: int = DEFAULT_MC_DRAWS,
    null_seed: int = 0,
) -> TestReport:
    """
    Step 2 on already-scored samples: the centered statistic against the null table of
    (len(x_scores), len(y_scores), φ).

    Critical region as in ``rank_decision``; the two-sided p-value is
    min(1, 2·min(upper tail, lower tail)).
    """
    check_alpha(alpha)
    sx = np.asarray(x_scores, dtype=np.float64).reshape(-1)
    sy = np.asarray(y_scores, dtype=np.float64).reshape(-1)
    stat = linear_rank_statistic(sx, sy, phi)
    table = null_distribution(stat.n, stat.m, phi, quantile_method, budget, null_seed, draws=draws)
    notes: list[str] = []
    if sx.size and np.all(np.concatenate([sx, sy]) == sx[0]):
        notes.append("all holdout scores are tied; the test has no power")

    q, low, reject = rank_decision(table, stat.centered, alpha, sided)
    if sided == "upper":
        p = table.sf(stat.centered)
    elif sided == "lower":
        p = table.cdf(stat.centered)
    else:
        p = min(1.0, 2.0 * min(table.sf(stat.centered), table.cdf(stat.centered)))

    return TestReport(
        method=method_name,
        statistic=stat.raw,
        statistic_centered=stat.centered,
        quantile=q,
        lower_quantile=low,
        p_value=p,
        reject=reject,
        alpha=alpha,
        sided=sided,
        n_test=stat.n,
        m_test=stat.m,
        phi=phi.descriptor,
        null_method=table.method,
        diagnostics={"holdout_auc": auc_pairwise(sy, sx)},
        warnings=notes,
    )


def score_holdout(model: ScoringModel, parts: SplitSamples) -> tuple[Array, Array]:
    return model.scores(parts.x_test), model.scores(parts.y_test)


def ranking_test(
    x: npt.ArrayLike,
    y: npt.ArrayLike,
    ranker: RankerLike,
    phi: ScoreGenerator,
    alpha: float,
    split: SplitConfig | None = None,
    quantile_method: MethodRequest = "auto",
    *,
    budget: int = DEFAULT_EXACT_BUDGET,
    draws: int = DEFAULT_MC_DRAWS,
    null_seed: int = 0,
) -> TestReport:
    """Split, train on (X′, Y′), score (X″, Y″) and run the one-sided rank test at level α."""
    check_alpha(alpha)
    split = split or SplitConfig()
    parts = split_samples(x, y, split)
    model, notes = fit_ranker(ranker, parts.x_train, parts.y_train, phi)
    sx, sy = score_holdout(model, parts)
    name = ranker_descriptor(ranker)
    report = rank_test_on_scores(
        sx, sy, phi, alpha, method_name=name, quantile_method=quantile_method, budget=budget, draws=draws, null_seed=null_seed
    )
    logger.debug("%s %s: centered=%.6g q=%.6g p=%.4g", name, phi.descriptor, report.statistic_centered, report.quantile, report.p_value)
    return report.model_copy(
        update={
            "n_train": parts.x_train.shape[0],
            "m_train": parts.y_train.shape[0],
            "ranker": name,
            "seed": split.seed,
            "warnings": notes + report.warnings,
        }
    )


def multi_phi_test(
    x: npt.ArrayLike,
    y: npt.ArrayLike,
    ranker: RankerLike,
    phis: Sequence[ScoreGenerator],
    alpha: float,
    split: SplitConfig | None = None,
    quantile_method: MethodRequest = "auto",
    *,
    budget: int = DEFAULT_EXACT_BUDGET,
    draws: int = DEFAULT_MC_DRAWS,
) -> tuple[bool, list[TestReport]]:
    """
    One trained scorer, several generators on the same holdout scores, each at level α/K;
    rejects iff any of them does.
    """
    if not phis:
        raise InvalidInput("multi_phi_test needs at least one score generator")
    split = split or SplitConfig()
    parts = split_samples(x, y, split)
    model, notes = fit_ranker(ranker, parts.x_train, parts.y_train, phis[0])
    sx, sy = score_holdout(model, parts)
    levels = bonferroni_levels(alpha, len(phis))
    reports = [
        rank_test_on_scores(
            sx, sy, phi, a, method_name=ranker_descriptor(ranker), quantile_method=quantile_method, budget=budget, draws=draws
        ).model_copy(
            update={
                "n_train": parts.x_train.shape[0],
                "m_train": parts.y_train.shape[0],
                "ranker": ranker_descriptor(ranker),
                "seed": split.seed,
                "warnings": list(notes),
            }
        )
        for phi, a in zip(phis, levels, strict=True)
    ]
    return combined_test(reports, alpha), reports


__all__ = [
    "RankerLike",
    "check_alpha",
    "ranker_descriptor",
    "fit_ranker",
    "rank_decision",
    "rank_test_on_scores",
    "score_holdout",
    "ranking_test",
    "multi_phi_test",
]
