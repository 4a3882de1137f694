# src/core/errors.py
"""
Typed errors for the rank-test toolkit.

Exports
-------
- RankTestError, InvalidInput, BudgetExceeded, UnsupportedGenerator,
  ModelError, NoClosedFormOracle, ConfigError
- DegenerateDataWarning
- RANKTEST_ERRORS
- classify_error(exc)
- error_guard()
"""

from __future__ import annotations

from collections.abc import Iterator
from contextlib import contextmanager

# =========================
# Exception types
# =========================


class RankTestError(RuntimeError):
    """Base class for every failure raised by this package."""


class InvalidInput(RankTestError, ValueError):
    """Arguments violate an operation's preconditions (empty sample, non-finite value, bad level)."""


class BudgetExceeded(RankTestError):
    """Exact enumeration was requested for more rank subsets than the budget allows."""


class UnsupportedGenerator(RankTestError):
    """The score-generating function lacks a property the operation needs (smoothness)."""


class ModelError(RankTestError):
    """A generative model could not be built, e.g. a covariance matrix is not positive-definite."""


class NoClosedFormOracle(RankTestError):
    """The synthetic model has no closed-form optimal scoring function."""


class ConfigError(RankTestError):
    """An experiment or CLI configuration is missing, unreadable or invalid."""


class DegenerateDataWarning(RuntimeWarning):
    """Training data carry no ranking signal (all points identical); a zero model was returned."""


RANKTEST_ERRORS = (
    InvalidInput,
    BudgetExceeded,
    UnsupportedGenerator,
    ModelError,
    NoClosedFormOracle,
    ConfigError,
)

# =========================
# Classification helpers
# =========================


def classify_error(exc: Exception) -> RankTestError:
    """
    Map an arbitrary exception to a typed RankTestError.

    Heuristics:
      - Any RankTestError subclass → passed through
      - numpy.linalg.LinAlgError → ModelError
      - pydantic.ValidationError → ConfigError
      - OSError → ConfigError (unreadable/missing files)
      - ValueError / ArithmeticError → InvalidInput
      - Fallback → RankTestError
    """
    if isinstance(exc, RankTestError):
        return exc

    msg = f"{type(exc).__name__}: {exc}"

    try:
        import numpy as np

        if isinstance(exc, np.linalg.LinAlgError):
            return ModelError(msg)
    except Exception:  # pragma: no cover
        pass

    try:
        from pydantic import ValidationError

        if isinstance(exc, ValidationError):
            return ConfigError(msg)
    except Exception:  # pragma: no cover
        pass

    if isinstance(exc, OSError):
        return ConfigError(msg)
    if isinstance(exc, ValueError | ArithmeticError):
        return InvalidInput(msg)
    return RankTestError(msg)


@contextmanager
def error_guard() -> Iterator[None]:
    """Re-raise foreign exceptions from numerical internals as typed RankTestErrors."""
    try:
        yield
    except RANKTEST_ERRORS:
        raise
    except Exception as exc:  # noqa: BLE001
        typed = classify_error(exc)
        if typed is exc:
            raise
        raise typed from exc


__all__ = [
    "RankTestError",
    "InvalidInput",
    "BudgetExceeded",
    "UnsupportedGenerator",
    "ModelError",
    "NoClosedFormOracle",
    "ConfigError",
    "DegenerateDataWarning",
    "RANKTEST_ERRORS",
    "classify_error",
    "error_guard",
]
