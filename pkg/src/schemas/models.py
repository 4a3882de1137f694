# src/schemas/models.py

from __future__ import annotations

import json
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.core.errors import InvalidInput
from src.core.rankstats.generators import ScoreGenerator

# =========================
# Training / splitting / calibration configs
# =========================


class TrainConfig(BaseModel):
    """
    Hyperparameters shared by the pairwise ranking trainers.

    For boosted stumps ``epochs`` is the number of boosting stages; for the smoothed
    W_φ trainer it is the number of ascent iterations.
    """

    model_config = ConfigDict(frozen=True, extra="ignore")

    epochs: int = Field(200, ge=0, description="Full-gradient epochs (or boosting stages). 0 returns the initial model.")
    learning_rate: float = Field(0.05, gt=0, description="Step size of gradient descent/ascent, or boosting shrinkage.")
    l2_penalty: float = Field(1e-3, ge=0, description="λ of the ‖w‖² penalty.")
    pair_budget: int = Field(20_000, ge=1, description="Maximum (positive, negative) pairs sampled per epoch.")
    bandwidth: float = Field(0.1, gt=0, description="Sigmoid bandwidth h of the smoothed rank surrogate.")
    seed: int = Field(0, ge=0, description="Seed for initialization and pair sampling.")
    standardize: bool = Field(True, description="Standardize features with pooled training mean/std stored in the model.")
    augment_quadratic: bool = Field(False, description="Append all products x_i·x_j (i ≤ j) before standardizing.")
    hidden_width: int = Field(16, ge=1, description="Hidden-layer width of the MLP ranker.")


class SplitConfig(BaseModel):
    """Per-sample stratified split into a training part and a holdout part."""

    model_config = ConfigDict(frozen=True, extra="ignore")

    train_fraction: float = Field(0.8, gt=0, lt=1, description="Fraction of each sample used to train the ranker (floor).")
    seed: int = Field(0, ge=0, description="Seed of the per-sample shuffles.")


class PermutationScheme(BaseModel):
    """Label-permutation calibration of a two-sample statistic."""

    model_config = ConfigDict(frozen=True, extra="ignore")

    b_perm: int = Field(1000, ge=1, description="Number of label permutations.")
    seed: int = Field(0, ge=0, description="Seed of the permutation stream.")


class DepthConfig(BaseModel):
    """Random-direction approximation of the halfspace (Tukey) depth."""

    model_config = ConfigDict(frozen=True, extra="ignore")

    directions: int = Field(1000, ge=1, description="Number K of random unit directions (d ≥ 2).")
    seed: int = Field(0, ge=0, description="Seed of the direction draws and of the reference split.")
    reference_fraction: float = Field(0.5, gt=0, lt=1, description="Share of the larger sample used as depth reference.")


RankerName = Literal["linear", "mlp", "boosted", "wphi", "oracle"]


class RankerSpec(BaseModel):
    """Which trainer produces the Step-1 scoring function, with its hyperparameters."""

    model_config = ConfigDict(frozen=True, extra="ignore")

    name: RankerName = Field("linear", description="Trainer registry name.")
    train: TrainConfig = Field(default_factory=TrainConfig, description="Trainer hyperparameters.")
    oracle_sign: Literal["likelihood", "reported", "auto"] = Field(
        "auto", description="Sign convention of the quadratic scale-model oracle (only for name='oracle')."
    )

    @property
    def descriptor(self) -> str:
        return f"r{self.name}"


# =========================
# Synthetic models
# =========================

ModelVariant = Literal["L1minus", "L1plus", "S1", "S2", "T1", "T2", "T3"]

_DEFAULT_DIM: dict[str, int] = {"L1minus": 6, "L1plus": 6, "S1": 20, "S2": 20, "T1": 3, "T2": 4, "T3": 20}
_DEFAULT_BETA: dict[str, float] = {"S1": 0.2, "S2": 0.3, "T3": 0.2}


class ModelSpec(BaseModel):
    """
    One synthetic two-sample problem.

    - L1minus / L1plus: Gaussian location shift (ε/√d)·1_d with banded covariance, d ∈ {4, 6}
    - S1: Σ_X = (β+ε)^|i−j| vs Σ_Y = β^|i−j| (β = 0.2)
    - S2: equicorrelation β+ε vs β (β = 0.3)
    - T1: d = 3 Cauchy, ε shifts the first two coordinates of X
    - T2: exp of L1minus with d = 4
    - T3: exp of S1 (default d = 20)
    """

    model_config = ConfigDict(frozen=True, extra="ignore")

    variant: ModelVariant = Field(..., description="Model family.")
    d: int | None = Field(None, ge=1, description="Dimension; defaults per variant.")
    epsilon: float = Field(0.0, ge=0, description="Discrepancy parameter; 0 gives H₀.")
    beta: float | None = Field(None, description="Baseline correlation of the scale models; defaults per variant.")

    @model_validator(mode="before")
    @classmethod
    def _fill_defaults(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("variant") in _DEFAULT_DIM:
            data = dict(data)
            if data.get("d") is None:
                data["d"] = _DEFAULT_DIM[data["variant"]]
            if data.get("beta") is None and data["variant"] in _DEFAULT_BETA:
                data["beta"] = _DEFAULT_BETA[data["variant"]]
        return data

    @model_validator(mode="after")
    def _check_dimension(self) -> ModelSpec:
        if self.variant in ("L1minus", "L1plus") and self.d not in (4, 6):
            raise ValueError(f"{self.variant} is defined for d in {{4, 6}}, got d={self.d}")
        if self.variant == "T1" and self.d != 3:
            raise ValueError(f"T1 is defined for d=3, got d={self.d}")
        if self.variant == "T2" and self.d not in (4, 6):
            raise ValueError(f"T2 is defined for d in {{4, 6}}, got d={self.d}")
        return self

    @property
    def dim(self) -> int:
        assert self.d is not None
        return self.d

    @property
    def descriptor(self) -> str:
        return f"{self.variant}(d={self.dim},eps={self.epsilon!r})"

    def null(self) -> ModelSpec:
        """The same model at ε = 0."""
        return self.model_copy(update={"epsilon": 0.0})


# =========================
# Test outcomes
# =========================

Sidedness = Literal["upper", "two-sided", "lower"]


class TestReport(BaseModel):
    """
    Outcome of one two-sample test run.

    Rank-based tests reject iff ``statistic_centered > quantile`` (and, for two-sided
    tests, also iff it falls at or below ``lower_quantile``). Permutation-calibrated
    baselines carry no quantile and reject iff ``p_value ≤ alpha``.
    """

    __test__ = False  # not a pytest class

    model_config = ConfigDict(frozen=True, extra="ignore")

    method: str = Field(..., description="Method name, e.g. 'rlinear', 'mmd', 'tukey', 'roc-sup'.")
    statistic: float = Field(..., description="Observed statistic in its natural scale.")
    statistic_centered: float = Field(..., description="Centered statistic Ŵ/n − ∫φ (rank tests) or the raw statistic (others).")
    quantile: float | None = Field(None, description="Upper critical value; None for permutation-calibrated tests.")
    lower_quantile: float | None = Field(None, description="Lower critical value for two-sided and lower-tail rank tests.")
    p_value: float = Field(..., ge=0, le=1, description="p-value of the observed statistic.")
    reject: bool = Field(..., description="Whether H₀ is rejected at level alpha.")
    alpha: float = Field(..., gt=0, lt=1, description="Test level.")
    sided: Sidedness = Field("upper", description="Critical region shape.")
    n_train: int = Field(0, ge=0, description="n′: positive observations used for training/reference.")
    m_train: int = Field(0, ge=0, description="m′: negative observations used for training/reference.")
    n_test: int = Field(..., ge=1, description="n″: positive observations entering the statistic.")
    m_test: int = Field(..., ge=1, description="m″: negative observations entering the statistic.")
    phi: str | None = Field(None, description="Score-generator descriptor, for rank tests.")
    ranker: str | None = Field(None, description="Ranker descriptor, for ranking-based tests.")
    null_method: str | None = Field(None, description="'exact', 'montecarlo' or 'permutation'.")
    seed: int = Field(0, ge=0, description="Seed the run was derived from.")
    diagnostics: dict[str, float] = Field(default_factory=dict, description="Extra numbers (holdout AUC, bandwidth, ...).")
    warnings: list[str] = Field(default_factory=list, description="Non-fatal issues met during the run.")

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> TestReport:
        return cls.model_validate(json.loads(text))


class RocRegionTable(BaseModel):
    """
    Null distribution of the distance of the holdout empirical ROC to the diagonal, for
    sizes (n″, m″), with thresholds t_α = (1 − α)-quantiles on an α grid.
    """

    model_config = ConfigDict(frozen=True, extra="ignore")

    n_test: int = Field(..., ge=1)
    m_test: int = Field(..., ge=1)
    metric: Literal["sup", "l1"] = Field("sup")
    method: Literal["exact", "montecarlo"] = Field(...)
    draws: int = Field(0, ge=0, description="Monte-Carlo draws (0 for exact enumeration).")
    seed: int = Field(0, ge=0)
    values: list[float] = Field(..., description="Sorted distinct distances.")
    probabilities: list[float] = Field(..., description="Null probability of each distance.")
    alphas: list[float] = Field(default_factory=list, description="α grid.")
    thresholds: list[float] = Field(default_factory=list, description="t_α per α of the grid.")

    @field_validator("probabilities")
    @classmethod
    def _sums_to_one(cls, v: list[float]) -> list[float]:
        if v and abs(sum(v) - 1.0) > 1e-9:
            raise ValueError(f"probabilities must sum to 1, got {sum(v)}")
        return v

    def threshold_at(self, alpha: float) -> float:
        """Smallest support value t with P{distance ≤ t} ≥ 1 − α."""
        if not (0.0 < alpha < 1.0):
            raise InvalidInput(f"alpha must be in (0, 1), got {alpha}")
        cum = np.cumsum(self.probabilities)
        idx = int(np.searchsorted(cum, 1.0 - alpha - 1e-12, side="left"))
        return float(self.values[min(idx, len(self.values) - 1)])

    def p_value(self, distance: float) -> float:
        """P{distance ≥ observed} under the null."""
        vals = np.asarray(self.values)
        probs = np.asarray(self.probabilities)
        tol = 1e-12 * max(1.0, abs(distance))
        return float(min(1.0, probs[vals >= distance - tol].sum()))


# =========================
# Experiments
# =========================


class ModelGrid(BaseModel):
    """One model family swept over ε (and optionally over several dimensions)."""

    model_config = ConfigDict(frozen=True, extra="ignore")

    variant: ModelVariant
    dims: list[int] = Field(default_factory=list, description="Dimensions; empty uses the variant default.")
    epsilons: list[float] = Field(default_factory=lambda: [0.0], description="ε grid.")
    beta: float | None = None

    @field_validator("epsilons")
    @classmethod
    def _non_negative(cls, v: list[float]) -> list[float]:
        if not v:
            raise ValueError("epsilons must not be empty")
        if any(e < 0 for e in v):
            raise ValueError("epsilons must be >= 0")
        return v

    def specs(self) -> list[ModelSpec]:
        dims: list[int | None] = list(self.dims) or [None]
        return [ModelSpec(variant=self.variant, d=d, epsilon=e, beta=self.beta) for d in dims for e in self.epsilons]


BASELINE_METHODS = ("mmd", "energy", "fr", "tukey")
RANKING_METHODS = ("rlinear", "rmlp", "rboosted", "rwphi", "roracle")


def _default_alphas() -> list[float]:
    return [round(0.01 * k, 2) for k in range(1, 100)]


class ExperimentConfig(BaseModel):
    """Declarative Monte-Carlo power study."""

    model_config = ConfigDict(frozen=True, extra="ignore")

    name: str = Field("experiment", description="Label used in output file names.")
    models: list[ModelGrid] = Field(..., min_length=1, description="Model families and ε grids.")
    methods: list[str] = Field(default_factory=lambda: ["rlinear"], min_length=1, description="Ranking methods and baselines.")
    phis: list[str] = Field(default_factory=lambda: ["mww"], min_length=1, description="Score generators for rank tests.")
    N: int = Field(400, ge=4, description="Pooled sample size.")
    p: float = Field(0.5, gt=0, lt=1, description="Share of the pooled sample in X (n = round(p·N)).")
    split_fraction: float = Field(0.8, gt=0, lt=1, description="Training share of each sample.")
    replications: int = Field(100, ge=1, description="Monte-Carlo replications B.")
    alphas: list[float] = Field(default_factory=_default_alphas, description="Levels for the rejection curves.")
    table_alpha: float = Field(0.05, gt=0, lt=1, description="Level reported in the CSV power tables.")
    b_perm: int = Field(1000, ge=1, description="Permutations for MMD/Energy/FR.")
    depth_directions: int = Field(1000, ge=1, description="Directions for the Tukey depth.")
    mmd_bandwidth: Literal["median", "grid"] | float = Field("median", description="Kernel bandwidth rule or fixed value.")
    null_method: Literal["auto", "exact", "montecarlo"] = Field("auto", description="Null-table tabulation method.")
    train: TrainConfig = Field(default_factory=TrainConfig, description="Ranker hyperparameters.")
    master_seed: int = Field(0, ge=0, description="Root of every derived seed.")
    workers: int = Field(1, ge=1, description="Processes used for replications.")
    out_dir: str = Field("out", description="Directory receiving reports and plots.")

    @field_validator("alphas")
    @classmethod
    def _alphas_in_unit_interval(cls, v: list[float]) -> list[float]:
        if any(not (0.0 < a < 1.0) for a in v):
            raise ValueError("every alpha must lie in (0, 1)")
        return sorted(set(v))

    @field_validator("methods")
    @classmethod
    def _methods_known(cls, v: list[str]) -> list[str]:
        unknown = [m for m in v if m not in BASELINE_METHODS + RANKING_METHODS]
        if unknown:
            raise ValueError(f"unknown methods {unknown}; expected any of {BASELINE_METHODS + RANKING_METHODS}")
        return v

    @field_validator("phis")
    @classmethod
    def _phis_parse(cls, v: list[str]) -> list[str]:
        return [ScoreGenerator.parse(s).descriptor for s in v]

    @property
    def n(self) -> int:
        return int(round(self.p * self.N))

    @property
    def m(self) -> int:
        return self.N - self.n

    @model_validator(mode="after")
    def _sizes_split(self) -> ExperimentConfig:
        if self.n < 2 or self.m < 2:
            raise ValueError(f"N={self.N}, p={self.p} leaves fewer than 2 observations in a sample")
        return self


class CellResult(BaseModel):
    """Rejection frequencies and p-values of one (model, ε, method, φ) cell."""

    model_config = ConfigDict(extra="ignore")

    model: str
    variant: str
    d: int
    epsilon: float
    method: str
    phi: str | None = None
    replications: int = 0
    alphas: list[float] = Field(default_factory=list)
    rejection: list[float] = Field(default_factory=list, description="Rejection frequency per alpha.")
    half_width: list[float] = Field(default_factory=list, description="2·√(f(1−f)/B) per alpha.")
    sd: list[float] = Field(default_factory=list, description="√(f(1−f)) per alpha.")
    p_values: list[float] = Field(default_factory=list, description="p-value per successful replication, in replication order.")
    errors: list[str] = Field(default_factory=list, description="Failure messages, one per failed replication.")

    @property
    def key(self) -> tuple[str, str, str | None]:
        return (self.model, self.method, self.phi)


class ExperimentReport(BaseModel):
    """Aggregated Monte-Carlo study; JSON content excludes wall-clock time."""

    model_config = ConfigDict(extra="ignore")

    name: str
    config: dict[str, Any] = Field(default_factory=dict, description="Echo of the validated config.")
    prng: str = Field(..., description="PRNG used for every draw.")
    pairing: str = Field("per-replication data shared by all methods")
    replication_seeds: list[int] = Field(default_factory=list)
    cells: list[CellResult] = Field(default_factory=list)
    partial: bool = Field(False, description="Some cell had at least one failed replication.")
    warnings: list[str] = Field(default_factory=list)
    wall_clock_seconds: float = Field(0.0, exclude=True)

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), indent=2, sort_keys=True)


__all__ = [
    "TrainConfig",
    "SplitConfig",
    "PermutationScheme",
    "DepthConfig",
    "RankerName",
    "RankerSpec",
    "ModelVariant",
    "ModelSpec",
    "Sidedness",
    "TestReport",
    "RocRegionTable",
    "ModelGrid",
    "BASELINE_METHODS",
    "RANKING_METHODS",
    "ExperimentConfig",
    "CellResult",
    "ExperimentReport",
]
