# src/core/rankstats/generators.py
"""
Score-generating functions φ: [0, 1] → ℝ weighting normalized ranks.

Three families are supported:

- ``mww``      φ(u) = u                  (rank-sum / Mann-Whitney-Wilcoxon)
- ``rtb:u0``   φ(u) = u · 1{u ≥ u0}      (ranks at the top; not differentiable at u0)
- ``power:q``  φ(u) = u^q, q > 1

Each generator carries its sup norms and its integral over [0, 1] in closed form.
"""

from __future__ import annotations

from typing import Literal

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.core.errors import InvalidInput

GeneratorKind = Literal["mww", "rtb", "power"]


class ScoreGenerator(BaseModel):
    """A nondecreasing score-generating function with closed-form metadata."""

    model_config = ConfigDict(frozen=True, extra="ignore")

    kind: GeneratorKind = Field("mww", description="Family: 'mww', 'rtb' or 'power'.")
    u0: float | None = Field(None, gt=0, lt=1, description="Threshold of the RTB family, in (0, 1).")
    q: float | None = Field(None, gt=1, description="Exponent of the power family, > 1.")

    @model_validator(mode="after")
    def _check_parameters(self) -> ScoreGenerator:
        if self.kind == "rtb" and self.u0 is None:
            raise ValueError("rtb generator requires u0 in (0, 1)")
        if self.kind == "power" and self.q is None:
            raise ValueError("power generator requires q > 1")
        return self

    # -------- constructors --------

    @classmethod
    def mww(cls) -> ScoreGenerator:
        return cls(kind="mww")

    @classmethod
    def rtb(cls, u0: float) -> ScoreGenerator:
        return cls(kind="rtb", u0=u0)

    @classmethod
    def power(cls, q: float) -> ScoreGenerator:
        return cls(kind="power", q=q)

    @classmethod
    def parse(cls, text: str) -> ScoreGenerator:
        """Parse a descriptor such as ``mww``, ``rtb:0.8``, ``rtb0.8`` or ``power:2``."""
        raw = text.strip().lower()
        try:
            if raw == "mww":
                return cls.mww()
            if raw.startswith("rtb"):
                return cls.rtb(float(raw[3:].lstrip(":=")))
            if raw.startswith("power"):
                return cls.power(float(raw[5:].lstrip(":=")))
        except ValueError as e:
            raise InvalidInput(f"invalid score generator descriptor {text!r}: {e}") from e
        raise InvalidInput(f"unknown score generator {text!r}; expected mww, rtb:<u0> or power:<q>")

    # -------- metadata --------

    @property
    def descriptor(self) -> str:
        if self.kind == "rtb":
            return f"rtb:{self.u0!r}"
        if self.kind == "power":
            return f"power:{self.q!r}"
        return "mww"

    @property
    def is_smooth(self) -> bool:
        """Whether φ is continuously differentiable on [0, 1]."""
        return self.kind != "rtb"

    @property
    def sup_norm(self) -> float:
        """‖φ‖∞ on [0, 1]; every family attains 1 at u = 1."""
        return 1.0

    @property
    def deriv_sup_norm(self) -> float:
        """‖φ′‖∞ on [0, 1]; infinite for the discontinuous RTB family."""
        if self.kind == "mww":
            return 1.0
        if self.kind == "power":
            assert self.q is not None
            return float(self.q)
        return float("inf")

    @property
    def integral(self) -> float:
        """∫₀¹ φ(u) du."""
        if self.kind == "mww":
            return 0.5
        if self.kind == "rtb":
            assert self.u0 is not None
            return (1.0 - self.u0**2) / 2.0
        assert self.q is not None
        return 1.0 / (self.q + 1.0)

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Points of [0, 1] where φ is not smooth."""
        if self.kind == "rtb":
            assert self.u0 is not None
            return (self.u0,)
        return ()

    # -------- evaluation --------

    def __call__(self, u: npt.ArrayLike) -> npt.NDArray[np.float64]:
        arr = np.asarray(u, dtype=np.float64)
        if self.kind == "mww":
            return arr.copy()
        if self.kind == "rtb":
            return np.where(arr >= self.u0, arr, 0.0)
        return np.power(arr, self.q)

    def eval(self, u: float) -> float:
        return float(self(u))

    def derivative(self, u: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """φ′(u) for the smooth families."""
        arr = np.asarray(u, dtype=np.float64)
        if self.kind == "mww":
            return np.ones_like(arr)
        if self.kind == "power":
            assert self.q is not None
            return self.q * np.power(arr, self.q - 1.0)
        raise InvalidInput("the RTB generator has no derivative at its threshold")


MWW = ScoreGenerator.mww()

__all__ = ["GeneratorKind", "ScoreGenerator", "MWW"]
