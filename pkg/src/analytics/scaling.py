"""
Quadratic scaling law and closed-form expectations under rows-first generation.

The expectations are derived for uniform random rounds:

- maxStreak(k): each team's venues are fair independent coin flips, so each of
  the ``2(n-1) - k`` positions past the threshold violates with probability
  ``2^-k``: ``n (2(n-1) - k) / 2^k``.
- noRepeat: each of the ``n/2`` pairs of a round meets again next round with
  probability ``1/(n-1)``, over ``2n - 3`` adjacencies.
- doubleRoundRobin: an ordered game occurs in a round with probability
  ``p = 1/(2(n-1))``; the expected violations of one ordered pair are
  ``2 (1 - p)^(2(n-1))``, over ``n(n-1)`` ordered pairs.
"""

from collections.abc import Sequence
from enum import StrEnum
from typing import NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.core import DegenerateFitError, DomainError, check_team_count, season_length


class Constraint(StrEnum):
    DRR = "drr"
    MAXSTREAK = "maxstreak"
    NOREPEAT = "norepeat"


class FitCoefficients(BaseModel):
    model_config = ConfigDict(frozen=True)

    A: float
    B: float
    C: float
    r_squared: float


class CurveFit(BaseModel):
    """One fitted curve, serialised as the fit JSON object."""

    model_config = ConfigDict(frozen=True)

    constraint: Constraint
    k: int | None
    A: float
    B: float
    C: float
    r_squared: float

    @property
    def label(self) -> str:
        return self.constraint if self.k is None else f"{self.constraint}(k={self.k})"


class CurvePoint(NamedTuple):
    n: int
    y: float


def fit_quadratic(points: Sequence[tuple[int, float]]) -> FitCoefficients:
    """Unweighted least-squares fit of ``y = A n^2 + B n + C``.

    Raises:
        DegenerateFitError: With fewer than three distinct values of n.
    """
    ns = np.array([p[0] for p in points], dtype=np.float64)
    ys = np.array([p[1] for p in points], dtype=np.float64)
    if np.unique(ns).size < 3:
        raise DegenerateFitError(
            f"need at least 3 distinct n_teams to fit a quadratic, got {np.unique(ns).size}"
        )

    c, b, a = np.polynomial.polynomial.polyfit(ns, ys, deg=2)
    predicted = a * ns**2 + b * ns + c
    ss_res = float(np.sum((ys - predicted) ** 2))
    ss_tot = float(np.sum((ys - ys.mean()) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else float(np.clip(1.0 - ss_res / ss_tot, 0.0, 1.0))
    return FitCoefficients(A=float(a), B=float(b), C=float(c), r_squared=r_squared)


def expected_violations(
    n_teams: int, constraint: Constraint | str, k: int | None = None
) -> float:
    check_team_count(n_teams)
    try:
        constraint = Constraint(constraint)
    except ValueError as token_err:
        raise DomainError(f"unsupported constraint {constraint!r}") from token_err

    n = n_teams
    rounds = season_length(n)
    match constraint:
        case Constraint.MAXSTREAK:
            if k is None or k < 1:
                raise DomainError(f"maxstreak needs k >= 1, got {k}")
            if k >= rounds:
                return 0.0
            return n * (rounds - k) / 2**k
        case Constraint.NOREPEAT:
            return (2 * n - 3) * n / (2 * (n - 1))
        case Constraint.DRR:
            return 2 * n * (n - 1) * (1 - 1 / rounds) ** rounds


def expected_coefficients(k: int) -> FitCoefficients:
    """Exact (A, B, C) of the expanded maxStreak expectation for threshold k."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    return FitCoefficients(A=2.0 ** (1 - k), B=-(2 + k) * 2.0**-k, C=0.0, r_squared=1.0)
