# src/core/rankstats/asymptotics.py
"""Asymptotic mean of the centered-by-n statistic and the finite-sample quantile bound."""

from __future__ import annotations

import math
from collections.abc import Callable

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from src.core.errors import InvalidInput, UnsupportedGenerator
from src.core.rankstats.generators import ScoreGenerator
from src.core.roc.curves import RocCurve

QUAD_ABS_TOL = 1e-8
_QUAD_LIMIT = 400

RocLike = RocCurve | Callable[[float], float]


def _check_fraction(p: float) -> None:
    if not (0.0 < p < 1.0):
        raise InvalidInput(f"positive fraction p must be in (0, 1), got {p}")


def _kink_points(roc: RocLike, p: float, phi: ScoreGenerator, argument: Callable[[float], float]) -> list[float]:
    points: set[float] = set()
    if isinstance(roc, RocCurve):
        points.update(float(a) for a in roc.fpr if 0.0 < a < 1.0)
    # the argument is strictly decreasing in α, so each φ breakpoint is crossed at most once
    for u0 in phi.breakpoints:
        lo, hi = argument(0.0) - u0, argument(1.0) - u0
        if lo > 0.0 > hi:
            points.add(float(brentq(lambda a, u=u0: argument(a) - u, 0.0, 1.0, xtol=1e-14)))
    return sorted(points)


def asymptotic_mean(roc: RocLike, p: float, phi: ScoreGenerator) -> float:
    """
    Limit of Ŵ^φ_{n,m}/n when n/N → p and the scored samples have the given ROC:

        W_φ = (1/p)∫φ − ((1−p)/p) ∫₀¹ φ(p(1 − ROC(α)) + (1−p)(1 − α)) dα

    ``roc`` is a ``RocCurve`` or any nondecreasing callable on [0, 1] with ROC(0)=0, ROC(1)=1.
    The quadrature domain is split at the curve's breakpoints and at the α where the
    argument crosses a kink of φ.
    """
    _check_fraction(p)

    def roc_at(a: float) -> float:
        return float(np.clip(roc(a), 0.0, 1.0))

    def argument(a: float) -> float:
        return p * (1.0 - roc_at(a)) + (1.0 - p) * (1.0 - a)

    def integrand(a: float) -> float:
        return float(phi(argument(a)))

    points = _kink_points(roc, p, phi, argument)
    value, _ = quad(integrand, 0.0, 1.0, epsabs=QUAD_ABS_TOL, limit=_QUAD_LIMIT, points=points or None)
    return float(phi.integral / p - (1.0 - p) / p * value)


def bound_constant(p: float, phi: ScoreGenerator) -> float:
    """C = ⅛·min(p/‖φ‖∞², 1/(p‖φ′‖∞²), 1/((1−p)‖φ′‖∞²))."""
    d2 = phi.deriv_sup_norm**2
    return 0.125 * min(p / phi.sup_norm**2, 1.0 / (p * d2), 1.0 / ((1.0 - p) * d2))


def quantile_upper_bound(N: int, p: float, phi: ScoreGenerator, alpha: float) -> float:
    """
    Distribution-free upper bound √(log(18/α)/(C·N)) on the null quantile q^φ_{n,m}(α).

    Raises:
      UnsupportedGenerator: φ is not smooth (RTB).
      InvalidInput: α or p outside (0, 1), or N < 1/p.
    """
    if not phi.is_smooth:
        raise UnsupportedGenerator(f"the quantile bound needs a differentiable generator, got {phi.descriptor}")
    _check_fraction(p)
    if not (0.0 < alpha < 1.0):
        raise InvalidInput(f"alpha must be in (0, 1), got {alpha}")
    if N * p < 1.0:
        raise InvalidInput(f"N must be at least 1/p = {1.0 / p:g}, got {N}")
    return math.sqrt(math.log(18.0 / alpha) / (bound_constant(p, phi) * N))


__all__ = ["QUAD_ABS_TOL", "RocLike", "asymptotic_mean", "bound_constant", "quantile_upper_bound"]
